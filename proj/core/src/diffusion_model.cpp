#include "dirode/diffusion_model.hpp"

namespace dirode {

double DiffusionModel::operator()(double u) const {
  if (beta == 0.0) return d0;
  return d0 / (1.0 + beta * u);
}

double DiffusionModel::derivative(double u) const {
  if (beta == 0.0) return 0.0;
  const double w = 1.0 + beta * u;
  return -d0 * beta / (w * w);
}

}  // namespace dirode
