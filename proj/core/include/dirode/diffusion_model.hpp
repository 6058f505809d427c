#pragma once

namespace dirode {

// Constant D or the rational law D(u) = D0 / (1 + beta u).
struct DiffusionModel {
  double d0 = 0.0;
  double beta = 0.0;

  static DiffusionModel constant(double d) { return {d, 0.0}; }
  static DiffusionModel rational(double d0, double beta) { return {d0, beta}; }

  bool is_constant() const { return beta == 0.0; }
  double operator()(double u) const;
  double derivative(double u) const;
};

}  // namespace dirode
