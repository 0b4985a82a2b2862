#include "holder/conjugate_pair.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace holder {

ConjugatePair::ConjugatePair(double alpha) : alpha_(alpha), beta_(alpha / (alpha - 1.0)) {
  if (!std::isfinite(alpha) || alpha == 0.0 || alpha == 1.0) {
    throw std::invalid_argument("conjugate exponent alpha must be finite and differ from 0 and 1");
  }
}

ConjugatePair::ConjugatePair(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha == 0.0 || beta == 0.0 ||
      std::abs(1.0 / alpha + 1.0 / beta - 1.0) > 1e-12) {
    throw std::invalid_argument("exponents are not conjugate: 1/alpha + 1/beta must equal 1");
  }
}

void require_forward(const ConjugatePair& pair, const char* op) {
  if (!pair.forward()) {
    throw std::invalid_argument(std::string(op) + ": alpha > 1 required (got " + std::to_string(pair.alpha()) + ")");
  }
}

}  // namespace holder
