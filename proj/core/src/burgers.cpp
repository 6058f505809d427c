#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dirode/baselines.hpp"
#include "dirode/errors.hpp"
#include "dirode/problems.hpp"
#include "dirode/spatial_ode.hpp"
#include "dirode/temporal_ode.hpp"

namespace dirode {

namespace {

using GaussRule = boost::math::quadrature::gauss<double, 20>;

struct Rule {
  std::vector<double> node, weight;  // on [-1, 1]
};

const Rule& rule20() {
  static const Rule r = [] {
    Rule out;
    const auto& x = GaussRule::abscissa();
    const auto& w = GaussRule::weights();
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0.0) {
        out.node.push_back(0.0);
        out.weight.push_back(w[k]);
        continue;
      }
      out.node.push_back(x[k]);
      out.weight.push_back(w[k]);
      out.node.push_back(-x[k]);
      out.weight.push_back(w[k]);
    }
    return out;
  }();
  return r;
}

}  // namespace

double burgers_analytic(double x, double t, double nu, const BurgersQuadrature& q) {
  if (!(t > 0.0)) throw ValidationError("burgers_analytic needs t > 0");
  if (!(nu > 0.0)) throw ValidationError("burgers_analytic needs nu > 0");
  if (q.panels == 0) throw ValidationError("burgers_analytic needs at least one panel");
  const double pi = std::numbers::pi;
  // Beyond |eta| = window the Gaussian factor is below e^-40 times the largest
  // possible value of the cosine factor.
  const double window =
      std::min(q.window_cap, std::sqrt(4.0 * nu * t * (1.0 / (pi * nu) + 40.0)));
  const Rule& r = rule20();
  const std::size_t m = q.panels * r.node.size();
  std::vector<double> phi(m), sn(m), wt(m);
  const double h = 2.0 * window / static_cast<double>(q.panels);
  double peak = -std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  for (std::size_t p = 0; p < q.panels; ++p) {
    const double mid = -window + (static_cast<double>(p) + 0.5) * h;
    for (std::size_t g = 0; g < r.node.size(); ++g, ++k) {
      const double eta = mid + 0.5 * h * r.node[g];
      const double y = x - eta;
      phi[k] = -std::cos(pi * y) / (2.0 * pi * nu) - eta * eta / (4.0 * nu * t);
      sn[k] = std::sin(pi * y);
      wt[k] = 0.5 * h * r.weight[g];
      peak = std::max(peak, phi[k]);
    }
  }
  double num = 0.0, den = 0.0;
  for (k = 0; k < m; ++k) {
    const double e = std::exp(phi[k] - peak) * wt[k];
    num += sn[k] * e;
    den += e;
  }
  if (!(den > 0.0) || !std::isfinite(num)) throw NumericalError("burgers_analytic: quadrature underflow");
  return -num / den;
}

std::vector<std::vector<double>> burgers_analytic_table(const Grid1D& grid, double dt,
                                                        std::size_t steps, double nu,
                                                        const BurgersQuadrature& q) {
  std::vector<std::vector<double>> rows(steps, std::vector<double>(grid.nx));
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n + 1) * dt;
    for (std::size_t i = 0; i < grid.nx; ++i) {
      // Endpoints are zero by the boundary data.
      rows[n][i] = (i == 0 || i + 1 == grid.nx) ? 0.0 : burgers_analytic(grid.x(i), t, nu, q);
    }
  }
  return rows;
}

std::string to_string(BurgersScheme s) {
  switch (s) {
    case BurgersScheme::classic_implicit: return "classic-implicit";
    case BurgersScheme::spatial_ode: return "spatial-ode";
    case BurgersScheme::temporal_p0: return "temporal-p0";
    case BurgersScheme::temporal_p1: return "temporal-p1";
    case BurgersScheme::temporal_p1_loop: return "temporal-p1-loop";
  }
  return "?";
}

BurgersScheme parse_burgers_scheme(const std::string& name) {
  for (auto s : all_burgers_schemes())
    if (to_string(s) == name) return s;
  throw ValidationError("unknown burgers scheme '" + name + "'");
}

std::vector<BurgersScheme> all_burgers_schemes() {
  return {BurgersScheme::classic_implicit, BurgersScheme::spatial_ode, BurgersScheme::temporal_p0,
          BurgersScheme::temporal_p1, BurgersScheme::temporal_p1_loop};
}

double burgers_averaged_error(const std::vector<std::vector<double>>& numeric,
                              const std::vector<std::vector<double>>& analytic) {
  if (numeric.size() != analytic.size() || numeric.empty())
    throw ValidationError("burgers_averaged_error: step count mismatch");
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t n = 0; n < numeric.size(); ++n) {
    if (numeric[n].size() != analytic[n].size())
      throw ValidationError("burgers_averaged_error: grid mismatch");
    for (std::size_t i = 0; i < numeric[n].size(); ++i) {
      const double d = analytic[n][i] - numeric[n][i];
      acc += d * d;
    }
    count += numeric[n].size();
  }
  return acc / static_cast<double>(count);
}

BurgersRun run_burgers(BurgersScheme scheme, std::size_t nx, double dt, double nu,
                       std::size_t steps, const BurgersOptions& opt,
                       const std::vector<std::vector<double>>* analytic) {
  if (!(nu > 0.0)) throw ValidationError("viscosity must be positive");
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  BurgersRun run;
  run.grid = build_grid_1d(2.0, nx, -1.0);
  Field1D u = sample_function(run.grid, [](double x) { return -std::sin(std::numbers::pi * x); });
  u.bc = {0.0, 0.0};
  apply_dirichlet(u);
  run.fields.push_back(u.u);

  const VelocityField1D vel{[](double, double, double value) { return value; }};
  const DiffusionModel model = DiffusionModel::constant(nu);
  SchemeConfig cfg;
  cfg.tolerance = opt.tolerance;
  switch (scheme) {
    case BurgersScheme::temporal_p0: cfg.order = 0; cfg.corrector_cap = 0; break;
    case BurgersScheme::temporal_p1: cfg.order = 1; cfg.corrector_cap = 0; break;
    case BurgersScheme::temporal_p1_loop: cfg.order = 1; cfg.corrector_cap = opt.corrector_cap; break;
    default: break;
  }

  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    Field1D star = advect_step(u, vel, t, dt, opt.interpolation);
    switch (scheme) {
      case BurgersScheme::classic_implicit: u = classic_implicit_step_1d(star, model, dt); break;
      case BurgersScheme::spatial_ode: u = spatial_step_1d(star, nu, 0.0, {}, t, dt); break;
      default: u = predictor_corrector_step(star, model, {}, cfg, t, dt); break;
    }
    run.fields.push_back(u.u);
  }

  std::vector<std::vector<double>> own;
  if (!analytic) {
    own = burgers_analytic_table(run.grid, dt, steps, nu);
    analytic = &own;
  }
  run.error = burgers_averaged_error({run.fields.begin() + 1, run.fields.end()}, *analytic);
  return run;
}

}  // namespace dirode
