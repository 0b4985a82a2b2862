#pragma once

// Command implementations behind the holder_cli executable. Each returns the
// text to print on standard output; failures surface as exceptions, which
// run_command turns into an error JSON object and a nonzero exit code.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace holder {

struct CommandResult {
  std::string output;
  int exit_code = 0;
};

/// Runs `body` and maps any exception to {"error": kind, "message": what}.
CommandResult run_command(const std::function<std::string()>& body);

struct DivOptions {
  std::string input;  // JSON file {"p": distribution, "q": distribution}
  std::string variant = "hpd";  // hpd, hd, sym-hpd, sym-hd, cs, escort, bhat
  std::optional<double> alpha;
  std::optional<double> gamma;
  bool oracle = false;
};
std::string cmd_div(const DivOptions& options);

struct GridOptions {
  std::string figure = "simplex";  // simplex or gaussian
  /// simplex: three probabilities; gaussian: mean and standard deviation.
  std::vector<double> reference;
  std::vector<double> alphas{4.0, 2.0, 4.0 / 3.0};
  std::vector<double> gammas;  // proper divergence columns at alpha = 2
  int resolution = 60;
};
std::string cmd_grid(const GridOptions& options);

struct CentroidOptions {
  std::string input;  // JSON distribution set
  std::string variant = "hd";  // hpd, hd, sym-hpd, sym-hd, left-hpd, left-hd
  double alpha = 2.0;
  std::optional<double> gamma;
};
std::string cmd_centroid(const CentroidOptions& options);

struct ClusterOptions {
  std::string input;  // JSON distribution set; empty with toy_n set
  std::optional<int> toy_n;
  int clusters = 2;
  double alpha = 1.1;
  std::optional<double> gamma;  // defaults to alpha
  std::optional<std::uint64_t> seed;
  bool full_centroids = false;
};
std::string cmd_cluster(const ClusterOptions& options);

struct Table1Options {
  int runs = 500;
  std::optional<std::uint64_t> seed;
  std::vector<int> sizes{50, 100};
  std::vector<double> alphas{1.1, 1.5, 2.0, 10.0};
};
std::string cmd_table1(const Table1Options& options);

struct BoundsOptions {
  std::string first;   // mixture JSON
  std::string second;  // mixture JSON
  double alpha = 2.0;
  int resolution = 16;
};
std::string cmd_bounds(const BoundsOptions& options);

}  // namespace holder
