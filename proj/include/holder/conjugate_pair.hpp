#pragma once

namespace holder {

/// Hoelder conjugate exponents, 1/alpha + 1/beta = 1.
class ConjugatePair {
 public:
  /// beta = alpha / (alpha - 1); alpha must not be 0 or 1.
  explicit ConjugatePair(double alpha);
  /// Validates 1/alpha + 1/beta = 1 to 1e-12.
  ConjugatePair(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// alpha > 1 (hence beta > 1): the ordinary Hoelder inequality.
  bool forward() const noexcept { return alpha_ > 1.0; }
  /// alpha * beta < 0: the reverse Hoelder inequality.
  bool reverse() const noexcept { return alpha_ * beta_ < 0.0; }
  /// The pair with alpha and beta swapped.
  ConjugatePair dual() const { return ConjugatePair(beta_, alpha_); }

 private:
  double alpha_;
  double beta_;
};

/// Throws std::invalid_argument unless the pair is in the forward regime.
void require_forward(const ConjugatePair& pair, const char* op);

}  // namespace holder
