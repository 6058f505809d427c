#include "dirode/spatial_ode.hpp"

#include <cmath>
#include <sstream>

#include "dirode/errors.hpp"

namespace dirode {

std::vector<double> tdma_solve(const TridiagonalSystem& sys) {
  const std::size_t n = sys.size();
  if (n == 0) return {};
  if (sys.rhs.size() != n || sys.sub.size() != n - 1 || sys.super.size() != n - 1)
    throw ValidationError("tdma_solve: inconsistent system sizes");
  std::vector<double> cp(n, 0.0), dp(n, 0.0);
  auto pivot_check = [](double m, std::size_t row) {
    if (m == 0.0 || !std::isfinite(m)) {
      std::ostringstream msg;
      msg << "tdma_solve: zero pivot at row " << row;
      throw NumericalError(msg.str());
    }
  };
  pivot_check(sys.diag[0], 0);
  if (n > 1) cp[0] = sys.super[0] / sys.diag[0];
  dp[0] = sys.rhs[0] / sys.diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = sys.diag[i] - sys.sub[i - 1] * cp[i - 1];
    pivot_check(m, i);
    if (i + 1 < n) cp[i] = sys.super[i] / m;
    dp[i] = (sys.rhs[i] - sys.sub[i - 1] * dp[i - 1]) / m;
  }
  std::vector<double> x(n);
  x[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
  return x;
}

SpatialRow spatial_diffusion_stencil(double d, double dt, double dx, double u_n, double s) {
  if (!(d > 0.0) || !(dt > 0.0) || !(dx > 0.0))
    throw ValidationError("spatial_diffusion_stencil requires D, dt, dx > 0");
  const double theta = dx / std::sqrt(d * dt);
  const double e = std::exp(-theta);
  const double w = e / (1.0 + e * e);  // 1 / (e^theta + e^-theta)
  const double steady = u_n + s * dt;  // -B/A
  return {w, w, steady * (1.0 - 2.0 * w)};
}

SpatialStencil spatial_advection_diffusion_stencil(double c, double d, double dt, double dx,
                                                   double u_n, double s) {
  if (!(d > 0.0) || !(dt > 0.0) || !(dx > 0.0))
    throw ValidationError("spatial_advection_diffusion_stencil requires D, dt, dx > 0");
  const double a = 1.0 / (d * dt);
  const double cc = c / d;
  const double root = std::sqrt(cc * cc + 4.0 * a);
  SpatialStencil st;
  st.lambda1 = 0.5 * (cc + root);
  // Cancellation-free form of (C - root)/2 = -2A/(C + root) when C > 0.
  st.lambda2 = cc > 0.0 ? -2.0 * a / (cc + root) : 0.5 * (cc - root);
  if (cc < 0.0) st.lambda1 = -2.0 * a / (cc - root);
  const double spread = std::exp(-(st.lambda1 - st.lambda2) * dx);
  st.k1 = std::exp(st.lambda2 * dx) / (1.0 + spread);
  st.k2 = std::exp(-st.lambda1 * dx) / (1.0 + spread);
  const double steady = u_n + s * dt;  // -B/A
  st.k3 = steady * (1.0 - st.k1 - st.k2);
  return st;
}

Field1D spatial_step_1d(const Field1D& field, double d, double c, const Source1D& f, double t,
                        double dt) {
  const Grid1D& g = field.grid;
  const std::size_t n = g.nx - 2;
  TridiagonalSystem sys(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = r + 1;
    const double s = f ? f(g.x(i), t, field.u[i]) : 0.0;
    const SpatialRow row = c == 0.0
                               ? spatial_diffusion_stencil(d, dt, g.dx, field.u[i], s)
                               : spatial_advection_diffusion_stencil(c, d, dt, g.dx, field.u[i], s)
                                     .row();
    sys.diag[r] = 1.0;
    sys.rhs[r] = row.rhs;
    if (r > 0)
      sys.sub[r - 1] = -row.lower;
    else
      sys.rhs[r] += row.lower * field.bc.left;
    if (r + 1 < n)
      sys.super[r] = -row.upper;
    else
      sys.rhs[r] += row.upper * field.bc.right;
  }
  const auto x = tdma_solve(sys);
  Field1D out = field;
  for (std::size_t r = 0; r < n; ++r) out.u[r + 1] = x[r];
  apply_dirichlet(out);
  return out;
}

}  // namespace dirode
