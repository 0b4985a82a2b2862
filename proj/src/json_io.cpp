#include "holder/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace holder {

namespace {

double as_number(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw std::invalid_argument(std::string(what) + ": expected a number");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Eigen::VectorXd as_vector(const Json& j, const char* what) {
  if (j.is_number()) return Eigen::VectorXd::Constant(1, j.get<double>());
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + ": expected a non-empty array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = as_number(j[i], what);
  return v;
}

Eigen::MatrixXd as_matrix(const Json& j, const char* what) {
  if (j.is_number()) return Eigen::MatrixXd::Constant(1, 1, j.get<double>());
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + ": expected a square matrix");
  const auto d = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
      throw std::invalid_argument(std::string(what) + ": expected a square matrix");
    }
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = as_number(row[static_cast<std::size_t>(c)], what);
  }
  return m;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number_to_json(x));
  return out;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

SourceParameter parse_source(FamilyId id, const Json& params) {
  switch (id) {
    case FamilyId::bernoulli:
      return BernoulliSource{as_number(field(params, "p"), "p")};
    case FamilyId::categorical:
      return CategoricalSource{as_vector(field(params, "probs"), "probs")};
    case FamilyId::gaussian:
      return GaussianSource{as_vector(field(params, "mean"), "mean"), as_matrix(field(params, "cov"), "cov")};
    case FamilyId::laplace:
      return LaplaceSource{as_number(field(params, "sigma"), "sigma")};
    case FamilyId::wishart:
      return WishartSource{as_number(field(params, "n"), "n"), as_matrix(field(params, "scale"), "scale")};
  }
  throw std::invalid_argument("unknown family");
}

// Family of the given kind whose coordinate vector has `length` entries.
FamilyPtr family_for_length(FamilyId id, Eigen::Index length) {
  switch (id) {
    case FamilyId::bernoulli:
      return make_bernoulli();
    case FamilyId::categorical:
      return make_categorical(static_cast<int>(length));
    case FamilyId::laplace:
      return make_laplace();
    case FamilyId::gaussian:
      for (int d = 1; d * (d + 3) / 2 <= length; ++d) {
        if (d * (d + 3) / 2 == length) return make_gaussian(d);
      }
      break;
    case FamilyId::wishart:
      for (int d = 1; d * (d + 1) / 2 + 1 <= length; ++d) {
        if (d * (d + 1) / 2 + 1 == length) return make_wishart(d);
      }
      break;
  }
  throw std::invalid_argument("natural coordinate count " + std::to_string(length) + " does not match any " +
                              std::string(to_string(id)) + " dimension");
}

}  // namespace

Distribution parse_distribution(const Json& j) {
  const FamilyId id = family_from_string(field(j, "family").get<std::string>());
  if (j.contains("natural")) {
    Eigen::VectorXd coords = as_vector(j.at("natural"), "natural");
    FamilyPtr family = family_for_length(id, coords.size());
    NaturalParameter theta = family->make(std::move(coords));
    return {std::move(family), std::move(theta)};
  }
  const SourceParameter source = parse_source(id, field(j, "params"));
  FamilyPtr family = family_for(source);
  NaturalParameter theta = family->to_natural(source);
  return {std::move(family), std::move(theta)};
}

Json source_to_json(const SourceParameter& source) {
  struct Visitor {
    Json operator()(const CategoricalSource& s) const { return {{"probs", vector_to_json(s.probs)}}; }
    Json operator()(const BernoulliSource& s) const { return {{"p", number_to_json(s.p1)}}; }
    Json operator()(const GaussianSource& s) const {
      return {{"mean", vector_to_json(s.mean)}, {"cov", matrix_to_json(s.cov)}};
    }
    Json operator()(const LaplaceSource& s) const { return {{"sigma", number_to_json(s.sigma)}}; }
    Json operator()(const WishartSource& s) const {
      return {{"n", number_to_json(s.dof)}, {"scale", matrix_to_json(s.scale)}};
    }
  };
  return std::visit(Visitor{}, source);
}

Json distribution_to_json(const ExponentialFamily& family, const NaturalParameter& theta) {
  return {{"family", std::string(to_string(family.id()))},
          {"params", source_to_json(family.from_natural(theta))},
          {"natural", vector_to_json(theta.coords)}};
}

WeightedSet parse_weighted_set(const Json& j) {
  const Json& list = field(j, "distributions");
  if (!list.is_array() || list.empty()) throw std::invalid_argument("\"distributions\" must be a non-empty array");
  FamilyPtr family;
  std::vector<NaturalParameter> thetas;
  for (const auto& item : list) {
    Distribution d = parse_distribution(item);
    if (!family) {
      family = d.family;
    } else if (family->name() != d.family->name()) {
      throw std::invalid_argument("distribution set mixes " + family->name() + " and " + d.family->name());
    }
    thetas.push_back(std::move(d.theta));
  }
  std::vector<double> weights;
  if (j.contains("weights")) {
    const Eigen::VectorXd w = as_vector(j.at("weights"), "weights");
    weights.assign(w.data(), w.data() + w.size());
  }
  return WeightedSet(std::move(family), std::move(thetas), std::move(weights));
}

Mixture parse_mixture(const Json& j) {
  const FamilyId id = family_from_string(field(j, "family").get<std::string>());
  if (id != FamilyId::gaussian && id != FamilyId::laplace) {
    throw std::invalid_argument("mixtures support the gaussian and laplace families only");
  }
  const Json& comps = field(j, "components");
  if (!comps.is_array() || comps.empty()) throw std::invalid_argument("\"components\" must be a non-empty array");
  FamilyPtr family = id == FamilyId::laplace ? make_laplace() : make_gaussian(1);
  std::vector<NaturalParameter> thetas;
  for (const auto& c : comps) {
    const SourceParameter source = parse_source(id, c);
    if (const auto* g = std::get_if<GaussianSource>(&source); g && g->mean.size() != 1) {
      throw std::invalid_argument("mixture components must be univariate");
    }
    thetas.push_back(family->to_natural(source));
  }
  std::vector<double> weights;
  if (j.contains("weights")) {
    const Eigen::VectorXd w = as_vector(j.at("weights"), "weights");
    weights.assign(w.data(), w.data() + w.size());
  } else {
    weights.assign(thetas.size(), 1.0 / static_cast<double>(thetas.size()));
  }
  return make_mixture(std::move(family), std::move(weights), std::move(thetas));
}

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x == 0.0 ? 0.0 : x;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

}  // namespace holder
