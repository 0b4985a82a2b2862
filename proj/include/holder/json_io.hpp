#pragma once

// JSON encoding of distributions, distribution sets and mixtures.
//
// A distribution is {"family": name, "params": {...}} with
//   bernoulli    {"p": p1}
//   categorical  {"probs": [p0, ..., pm]}
//   gaussian     {"mean": [..], "cov": [[..], ..]}   (scalars accepted for d = 1)
//   laplace      {"sigma": s}
//   wishart      {"n": dof, "scale": [[..], ..]}     (scalar accepted for d = 1)
// or {"family": name, "natural": [..]} with raw natural coordinates (the
// dimension follows from their count).
// Infinite values are written as the string "inf".

#include "holder/centroids.hpp"
#include "holder/exp_family.hpp"
#include "holder/mixture_bounds.hpp"

#include <json.hpp>

#include <string>

namespace holder {

using Json = nlohmann::json;

struct Distribution {
  FamilyPtr family;
  NaturalParameter theta;
};

Distribution parse_distribution(const Json& j);
/// {"family", "params"} with the source parameters of theta.
Json distribution_to_json(const ExponentialFamily& family, const NaturalParameter& theta);
Json source_to_json(const SourceParameter& source);

/// {"distributions": [...], "weights": [...]?}; all members share one family.
WeightedSet parse_weighted_set(const Json& j);

/// {"family": "gaussian" | "laplace", "weights": [...], "components": [params, ...]}.
Mixture parse_mixture(const Json& j);

/// A number, or "inf" / "-inf" / "nan" for non-finite values.
Json number_to_json(double x);

/// 17 significant digits, "inf" for infinities.
std::string format_number(double x);

Json read_json_file(const std::string& path);

}  // namespace holder
