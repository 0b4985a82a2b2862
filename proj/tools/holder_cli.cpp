#include "holder/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Hoelder divergences, centroids, clustering and mixture bounds"};
  app.require_subcommand(1);

  holder::DivOptions div;
  auto* div_cmd = app.add_subcommand("div", "Divergence between two distributions");
  div_cmd->add_option("input", div.input, "JSON file {\"p\": ..., \"q\": ...}")->required()->check(CLI::ExistingFile);
  div_cmd->add_option("--variant", div.variant)
      ->check(CLI::IsMember({"hpd", "hd", "sym-hpd", "sym-hd", "cs", "escort", "bhat"}));
  div_cmd->add_option("--alpha", div.alpha);
  div_cmd->add_option("--gamma", div.gamma);
  div_cmd->add_flag("--oracle", div.oracle, "Also evaluate by direct summation or quadrature");

  holder::GridOptions grid;
  auto* grid_cmd = app.add_subcommand("grid", "Divergence grid around a reference distribution (CSV)");
  grid_cmd->add_option("--figure", grid.figure)->check(CLI::IsMember({"simplex", "gaussian"}));
  grid_cmd->add_option("--reference", grid.reference, "simplex: p0 p1 p2; gaussian: mean sd");
  grid_cmd->add_option("--alpha-list", grid.alphas);
  grid_cmd->add_option("--gamma-list", grid.gammas);
  grid_cmd->add_option("--resolution", grid.resolution);

  holder::CentroidOptions centroid;
  auto* centroid_cmd = app.add_subcommand("centroid", "Centroid of a weighted distribution set");
  centroid_cmd->add_option("input", centroid.input)->required()->check(CLI::ExistingFile);
  centroid_cmd->add_option("--variant", centroid.variant)
      ->check(CLI::IsMember({"hpd", "hd", "sym-hpd", "sym-hd", "left-hpd", "left-hd"}));
  centroid_cmd->add_option("--alpha", centroid.alpha);
  centroid_cmd->add_option("--gamma", centroid.gamma);

  holder::ClusterOptions cluster;
  auto* cluster_cmd = app.add_subcommand("cluster", "k-means over Gaussians");
  auto* cluster_input = cluster_cmd->add_option("--input", cluster.input)->check(CLI::ExistingFile);
  auto* cluster_toy = cluster_cmd->add_option("--toy-n", cluster.toy_n, "Generate the two-cluster toy set");
  cluster_input->excludes(cluster_toy);
  cluster_cmd->add_option("--clusters", cluster.clusters);
  cluster_cmd->add_option("--alpha", cluster.alpha);
  cluster_cmd->add_option("--gamma", cluster.gamma);
  cluster_cmd->add_option("--seed", cluster.seed)->required();
  cluster_cmd->add_flag("--full-centroids", cluster.full_centroids, "Solve centroids to convergence every round");

  holder::Table1Options table1;
  auto* table1_cmd = app.add_subcommand("table1", "Clustering accuracy table (CSV)");
  table1_cmd->add_option("--runs", table1.runs);
  table1_cmd->add_option("--seed", table1.seed)->required();
  table1_cmd->add_option("--sizes", table1.sizes);
  table1_cmd->add_option("--alpha-list", table1.alphas);

  holder::BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Bounds on the pseudo-divergence between two mixtures");
  bounds_cmd->add_option("first", bounds.first)->required()->check(CLI::ExistingFile);
  bounds_cmd->add_option("second", bounds.second)->required()->check(CLI::ExistingFile);
  bounds_cmd->add_option("--alpha", bounds.alpha);
  bounds_cmd->add_option("--resolution", bounds.resolution);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    nlohmann::json err{{"error", "usage"}, {"message", e.what()}};
    std::cout << err.dump(2) << '\n';
    return 2;
  }

  holder::CommandResult result;
  if (*div_cmd) result = holder::run_command([&] { return holder::cmd_div(div); });
  if (*grid_cmd) result = holder::run_command([&] { return holder::cmd_grid(grid); });
  if (*centroid_cmd) result = holder::run_command([&] { return holder::cmd_centroid(centroid); });
  if (*cluster_cmd) result = holder::run_command([&] { return holder::cmd_cluster(cluster); });
  if (*table1_cmd) result = holder::run_command([&] { return holder::cmd_table1(table1); });
  if (*bounds_cmd) result = holder::run_command([&] { return holder::cmd_bounds(bounds); });
  std::cout << result.output;
  return result.exit_code;
}
