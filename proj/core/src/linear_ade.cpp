#include <cmath>
#include <limits>

#include "dirode/errors.hpp"
#include "dirode/problems.hpp"
#include "dirode/splitting.hpp"
#include "dirode/temporal_ode.hpp"

namespace dirode {

double linear_ade_split_error(const LinearAdeSetup& setup, bool strang, double dt) {
  if (!(dt > 0.0) || !(setup.horizon > 0.0)) throw ValidationError("time step and horizon must be positive");
  const double steps_real = setup.horizon / dt;
  const auto steps = static_cast<std::size_t>(std::llround(steps_real));
  if (steps == 0 || std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * steps_real)
    throw ValidationError("horizon must be a whole number of steps");

  const double c = setup.c, d = setup.d;
  const int m = setup.mode;
  auto exact = [&](double x, double t) { return linear_ade_exact(c, d, m, x, t); };
  auto with_bc = [&](Field1D f, double t_end) {
    f.bc = {exact(f.grid.x(0), t_end), exact(f.grid.x(f.grid.nx - 1), t_end)};
    return f;
  };

  const VelocityField1D vel{[c](double, double, double) { return c; }};
  const StepOperator<Field1D> adv{"characteristics", OperatorKind::advection,
                                  [&](const Field1D& f, double t, double h) {
                                    return advect_step(with_bc(f, t + h), vel, t, h, setup.interpolation);
                                  }};
  const SchemeConfig cfg{setup.diffusion_order, Sampling::uniform, setup.corrector_cap, 1e-13};
  const StepOperator<Field1D> diff{"temporal-ode", OperatorKind::diffusion,
                                   [&](const Field1D& f, double t, double h) {
                                     return predictor_corrector_step(with_bc(f, t + h),
                                                                     DiffusionModel::constant(d), {}, cfg, t, h);
                                   }};

  Field1D u = sample_function(build_grid_1d(1.0, setup.nx), [&](double x) { return exact(x, 0.0); });
  u = with_bc(u, 0.0);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    u = strang ? strang_step(adv, diff, u, t, dt) : lie_step(adv, diff, u, t, dt);
  }
  const double t_end = static_cast<double>(steps) * dt;
  double err = 0.0;
  for (std::size_t i = 0; i < u.grid.nx; ++i) err = std::max(err, std::abs(u.u[i] - exact(u.grid.x(i), t_end)));
  return err;
}

LadderResult convergence_orders(const std::vector<double>& steps, const std::vector<double>& errors) {
  if (steps.size() != errors.size()) throw ValidationError("ladder: steps and errors differ in length");
  if (steps.size() < 3) throw ValidationError("ladder needs at least 3 rungs");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  LadderResult r{steps, errors, {}, nan, true};
  for (std::size_t k = 1; k < steps.size(); ++k) {
    const double ratio = steps[k - 1] / steps[k];
    if (ratio == 1.0 || errors[k] <= 0.0 || errors[k - 1] <= 0.0) {
      r.orders.push_back(nan);
    } else {
      r.orders.push_back(std::log(errors[k - 1] / errors[k]) / std::log(ratio));
    }
    if (errors[k] >= errors[k - 1]) r.monotone = false;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (!(steps[k] > 0.0) || !(errors[k] > 0.0)) return r;
    const double x = std::log(steps[k]), y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(steps.size());
  const double den = n * sxx - sx * sx;
  if (std::abs(den) > 1e-12 * std::max(1.0, n * sxx)) r.fitted_order = (n * sxy - sx * sy) / den;
  return r;
}

}  // namespace dirode
