#include <algorithm>
#include <cmath>

#include "dirode/baselines.hpp"
#include "dirode/errors.hpp"
#include "dirode/problems.hpp"
#include "dirode/spatial_ode.hpp"

namespace dirode {

namespace {

// Linearized full implicit step, rows a u_{i-1} + b u_i + c u_{i+1} = d with
// (u_x)^2 ~ 2 u_x^n u_x^{n+1} - (u_x^n)^2.
Field1D full_implicit_step(const Field1D& in, const NonlinearLaw& law, double dt) {
  const Grid1D& g = in.grid;
  const std::size_t n = g.nx - 2;
  TridiagonalSystem sys(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = r + 1;
    const double lam = dt * law.d(in.u[i]) / (g.dx * g.dx);
    const double ux = (in.u[i + 1] - in.u[i - 1]) / (2.0 * g.dx);
    const double dd = law.dd(in.u[i]);
    const double a = -dt / g.dx * ux * dd + lam;
    const double b = -1.0 - 2.0 * lam;
    const double c = dt / g.dx * ux * dd + lam;
    double d = -in.u[i] + ux * ux * dd * dt;
    sys.diag[r] = b;
    if (r > 0)
      sys.sub[r - 1] = a;
    else
      d -= a * in.bc.left;
    if (r + 1 < n)
      sys.super[r] = c;
    else
      d -= c * in.bc.right;
    sys.rhs[r] = d;
  }
  const auto x = tdma_solve(sys);
  Field1D out = in;
  for (std::size_t r = 0; r < n; ++r) out.u[r + 1] = x[r];
  return out;
}

// Lie split: characteristics with the induced velocity -D'(u) u_x, then
// implicit diffusion with D evaluated on the advected state.
Field1D split_implicit_step(const Field1D& in, const NonlinearLaw& law, double dt) {
  const Grid1D& g = in.grid;
  FootMap1D feet;
  feet.x.resize(g.nx);
  for (std::size_t i = 0; i < g.nx; ++i) {
    double vx = 0.0;
    if (i > 0 && i + 1 < g.nx)
      vx = -law.dd(in.u[i]) * (in.u[i + 1] - in.u[i - 1]) / (2.0 * g.dx);
    feet.x[i] = g.x(i) - vx * dt;
  }
  Field1D star = remap(in, feet, Interpolation::linear);
  apply_dirichlet(star);

  const std::size_t n = g.nx - 2;
  TridiagonalSystem sys(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = r + 1;
    const double lam = law.d(star.u[i]) * dt / (g.dx * g.dx);
    sys.diag[r] = 1.0 + 2.0 * lam;
    sys.rhs[r] = star.u[i];
    if (r > 0)
      sys.sub[r - 1] = -lam;
    else
      sys.rhs[r] += lam * star.bc.left;
    if (r + 1 < n)
      sys.super[r] = -lam;
    else
      sys.rhs[r] += lam * star.bc.right;
  }
  const auto x = tdma_solve(sys);
  Field1D out = star;
  for (std::size_t r = 0; r < n; ++r) out.u[r + 1] = x[r];
  return out;
}

bool finite_and_bounded(const std::vector<double>& u, double bound) {
  return std::all_of(u.begin(), u.end(), [bound](double v) { return std::isfinite(v) && std::abs(v) <= bound; });
}

double max_abs(const std::vector<double>& u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

NonlinearComparison compare_nonlinear_implicit(const NonlinearLaw& law, const Field1D& initial,
                                               double dt, std::size_t steps) {
  if (!law.d || !law.dd) throw ValidationError("nonlinear law needs D and dD/du");
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  NonlinearComparison out;
  Field1D full = initial, split = initial;
  apply_dirichlet(full);
  apply_dirichlet(split);
  // Bounded means finite and within ten times the initial range.
  const double bound = 10.0 * std::max(1e-300, max_abs(initial.u));
  out.full.push_back(full.u);
  out.split.push_back(split.u);
  for (std::size_t n = 0; n < steps; ++n) {
    if (out.full_bounded) {
      try {
        full = full_implicit_step(full, law, dt);
        if (!finite_and_bounded(full.u, bound)) out.full_bounded = false;
      } catch (const NumericalError&) {
        out.full_bounded = false;
      }
    }
    if (out.split_bounded) {
      try {
        split = split_implicit_step(split, law, dt);
        if (!finite_and_bounded(split.u, bound)) out.split_bounded = false;
      } catch (const NumericalError&) {
        out.split_bounded = false;
      }
    }
    out.full.push_back(full.u);
    out.split.push_back(split.u);
    out.full_max = std::max(out.full_max, max_abs(full.u));
    out.split_max = std::max(out.split_max, max_abs(split.u));
    double div = 0.0;
    for (std::size_t i = 0; i < full.u.size(); ++i) div = std::max(div, std::abs(full.u[i] - split.u[i]));
    out.divergence.push_back(div);
  }
  return out;
}

}  // namespace dirode
