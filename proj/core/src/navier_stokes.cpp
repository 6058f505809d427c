#include "dirode/navier_stokes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dirode/characteristics.hpp"
#include "dirode/errors.hpp"
#include "dirode/spatial_ode.hpp"
#include "dirode/temporal_ode.hpp"

namespace dirode {

void validate(const BackStepConfig& cfg) {
  if (cfg.h1 < 0.0 || cfg.h2 < 0.0 || !(cfg.h1 + cfg.h2 < 1.0))
    throw ValidationError("step heights must satisfy 0 <= h1 + h2 < 1");
  if (!(cfg.re > 0.0)) throw ValidationError("Reynolds number must be positive");
  if (!(cfg.aspect > 0.0)) throw ValidationError("channel aspect must be positive");
  if (cfg.step_length < 0.0 || cfg.step_length > cfg.aspect)
    throw ValidationError("step length must lie within the channel");
}

namespace {

double flow_rate(const BackStepConfig& c) { return c.u_inlet * (1.0 - c.h1 - c.h2); }

bool in_block(const BackStepConfig& c, double x, double y) {
  if (x > c.step_length + 1e-12) return false;
  return (c.h1 > 0.0 && y <= c.h1 + 1e-12) || (c.h2 > 0.0 && y >= 1.0 - c.h2 - 1e-12);
}

bool is_fluid(NodeKind k) { return k == NodeKind::fluid; }

bool open_node(NodeKind k) { return k != NodeKind::solid; }

}  // namespace

FlowState make_flow_state(const BackStepConfig& cfg, std::size_t nx, std::size_t ny) {
  validate(cfg);
  FlowState s;
  s.config = cfg;
  s.grid = build_grid_2d(cfg.aspect, 1.0, nx, ny);
  const Grid2D& g = s.grid;
  s.kind.assign(g.size(), NodeKind::fluid);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      NodeKind& k = s.kind[g.index(i, j)];
      if (in_block(cfg, g.x(i), g.y(j)))
        k = NodeKind::solid;
      else if (j == 0 || j + 1 == ny)
        k = NodeKind::wall;
      else if (i == 0)
        k = NodeKind::inlet;
      else if (i + 1 == nx)
        k = NodeKind::outlet;
    }
  }
  const double q = flow_rate(cfg);
  s.psi.assign(g.size(), 0.0);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      s.psi[g.index(i, j)] = std::clamp(cfg.u_inlet * (g.y(j) - cfg.h1), std::min(0.0, q),
                                        std::max(0.0, q));
  s.omega.assign(g.size(), 0.0);
  s.u.assign(g.size(), 0.0);
  s.v.assign(g.size(), 0.0);
  apply_psi_boundaries(s);
  apply_wall_vorticity(s);
  update_velocities(s);
  return s;
}

void apply_psi_boundaries(FlowState& s) {
  const Grid2D& g = s.grid;
  const BackStepConfig& c = s.config;
  const double q = flow_rate(c);
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      switch (s.kind[k]) {
        case NodeKind::solid:
          s.psi[k] = g.y(j) <= c.h1 + 1e-12 ? 0.0 : q;
          break;
        case NodeKind::wall:
          s.psi[k] = j == 0 ? 0.0 : q;
          break;
        case NodeKind::inlet:
          s.psi[k] = c.u_inlet * (g.y(j) - c.h1);
          break;
        case NodeKind::outlet:
          s.psi[k] = s.psi[k - 1];
          break;
        case NodeKind::fluid:
          break;
      }
    }
  }
}

void apply_wall_vorticity(FlowState& s) {
  const Grid2D& g = s.grid;
  const BackStepConfig& c = s.config;
  const double dx2 = g.dx * g.dx, dy2 = g.dy * g.dy;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      switch (s.kind[k]) {
        case NodeKind::wall:
          if (j == 0)
            s.omega[k] = -2.0 * (s.psi[k + g.nx] - s.psi[k]) / dy2 + 2.0 * c.u1 / g.dy;
          else
            s.omega[k] = -2.0 * (s.psi[k - g.nx] - s.psi[k]) / dy2 - 2.0 * c.u2 / g.dy;
          break;
        case NodeKind::solid: {
          double acc = 0.0;
          int faces = 0;
          if (j + 1 < g.ny && open_node(s.kind[k + g.nx])) {
            acc += -2.0 * (s.psi[k + g.nx] - s.psi[k]) / dy2;
            ++faces;
          }
          if (j > 0 && open_node(s.kind[k - g.nx])) {
            acc += -2.0 * (s.psi[k - g.nx] - s.psi[k]) / dy2;
            ++faces;
          }
          if (i + 1 < g.nx && open_node(s.kind[k + 1])) {
            acc += -2.0 * (s.psi[k + 1] - s.psi[k]) / dx2;
            ++faces;
          }
          s.omega[k] = faces ? acc / faces : 0.0;
          break;
        }
        case NodeKind::inlet:
          s.omega[k] = 0.0;
          break;
        case NodeKind::outlet:
          s.omega[k] = s.omega[k - 1];
          break;
        case NodeKind::fluid:
          break;
      }
    }
  }
}

void update_velocities(FlowState& s) {
  const Grid2D& g = s.grid;
  const BackStepConfig& c = s.config;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      switch (s.kind[k]) {
        case NodeKind::fluid:
          s.u[k] = (s.psi[k + g.nx] - s.psi[k - g.nx]) / (2.0 * g.dy);
          s.v[k] = -(s.psi[k + 1] - s.psi[k - 1]) / (2.0 * g.dx);
          break;
        case NodeKind::wall:
          s.u[k] = j == 0 ? c.u1 : c.u2;
          s.v[k] = 0.0;
          break;
        case NodeKind::inlet:
          s.u[k] = c.u_inlet;
          s.v[k] = 0.0;
          break;
        case NodeKind::solid:
          s.u[k] = 0.0;
          s.v[k] = 0.0;
          break;
        case NodeKind::outlet:
          break;
      }
    }
  }
  for (std::size_t j = 0; j < g.ny; ++j) {
    const std::size_t k = g.index(g.nx - 1, j);
    if (s.kind[k] == NodeKind::outlet) {
      s.u[k] = s.u[k - 1];
      s.v[k] = s.v[k - 1];
    }
  }
}

void psi_gauss_seidel_update(FlowState& s, int iterations) {
  if (iterations < 1) throw ValidationError("psi update needs at least one iteration");
  const Grid2D& g = s.grid;
  const double wx = 1.0 / (g.dx * g.dx), wy = 1.0 / (g.dy * g.dy);
  const double diag = 2.0 * wx + 2.0 * wy;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t j = 1; j + 1 < g.ny; ++j) {
      for (std::size_t i = 1; i + 1 < g.nx; ++i) {
        const std::size_t k = g.index(i, j);
        if (!is_fluid(s.kind[k])) continue;
        s.psi[k] = (wx * (s.psi[k + 1] + s.psi[k - 1]) + wy * (s.psi[k + g.nx] + s.psi[k - g.nx]) +
                    s.omega[k]) /
                   diag;
      }
    }
    apply_psi_boundaries(s);
  }
}

double poisson_residual(const FlowState& s) {
  const Grid2D& g = s.grid;
  const double wx = 1.0 / (g.dx * g.dx), wy = 1.0 / (g.dy * g.dy);
  double r = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!is_fluid(s.kind[k])) continue;
    const double lap = wx * (s.psi[k + 1] - 2.0 * s.psi[k] + s.psi[k - 1]) +
                       wy * (s.psi[k + g.nx] - 2.0 * s.psi[k] + s.psi[k - g.nx]);
    r = std::max(r, std::abs(lap + s.omega[k]));
  }
  return r;
}

namespace {

Field2D omega_field(const FlowState& s) {
  Field2D f(s.grid);
  f.u = s.omega;
  capture_boundary(f);
  return f;
}

}  // namespace

void vorticity_step_directional(FlowState& s, double dt) {
  const Grid2D& g = s.grid;
  const double half = 0.5 * dt;

  FootMap2D feet;
  feet.x.resize(g.size());
  feet.y.resize(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.x(g.col(k)), y = g.y(g.row(k));
    const bool move = is_fluid(s.kind[k]);
    feet.x[k] = move ? x - s.u[k] * half : x;
    feet.y[k] = move ? y - s.v[k] * half : y;
  }

  Field2D w = remap(omega_field(s), feet, Interpolation::linear);

  const double d = 1.0 / s.config.re;
  const double wx = 1.0 / (g.dx * g.dx), wy = 1.0 / (g.dy * g.dy);
  const double abar = d * (wx + wy);
  std::vector<double> next = w.u;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!is_fluid(s.kind[k])) continue;
    const double sum = wx * (w.u[k - 1] + w.u[k + 1]) + wy * (w.u[k - g.nx] + w.u[k + g.nx]);
    next[k] = closed_form_update({abar, 0.0, w.u[k]}, NeighborPolynomial::constant(sum, dt), d, dt);
  }
  w.u = std::move(next);

  w = remap(w, feet, Interpolation::linear);
  s.omega = std::move(w.u);
}

void vorticity_step_adi(FlowState& s, double dt, AdiForm form) {
  const Grid2D& g = s.grid;
  const double re = s.config.re;
  const double l1 = dt / (2.0 * re * g.dx * g.dx);
  const double l2 = dt / (2.0 * re * g.dy * g.dy);
  const std::vector<double>& w = s.omega;
  std::vector<double> star = w;

  // x-sweep: implicit in x, explicit in y.
  for (std::size_t j = 1; j + 1 < g.ny; ++j) {
    std::size_t i = 1;
    while (i + 1 < g.nx) {
      if (!is_fluid(s.kind[g.index(i, j)])) {
        ++i;
        continue;
      }
      const std::size_t i0 = i;
      while (i + 1 < g.nx && is_fluid(s.kind[g.index(i, j)])) ++i;
      const std::size_t n = i - i0;
      TridiagonalSystem sys(n);
      for (std::size_t r = 0; r < n; ++r) {
        const std::size_t k = g.index(i0 + r, j);
        const double adv = s.u[k] * dt / (4.0 * g.dx);
        double a, b, c;
        if (form == AdiForm::central) {
          a = l1 + adv;
          b = -1.0 - 2.0 * l1;
          c = l1 - adv;
        } else {
          a = l1;
          b = -1.0 - 2.0 * l1 + adv;
          c = l1 - adv;
        }
        double rhs = -w[k] + s.v[k] * dt / 2.0 * (w[k + g.nx] - w[k - g.nx]) / (2.0 * g.dy) -
                     dt / (2.0 * re) * (w[k + g.nx] - 2.0 * w[k] + w[k - g.nx]) / (g.dy * g.dy);
        sys.diag[r] = b;
        if (r > 0)
          sys.sub[r - 1] = a;
        else
          rhs -= a * w[k - 1];
        if (r + 1 < n)
          sys.super[r] = c;
        else
          rhs -= c * w[k + 1];
        sys.rhs[r] = rhs;
      }
      const auto x = tdma_solve(sys);
      for (std::size_t r = 0; r < n; ++r) star[g.index(i0 + r, j)] = x[r];
    }
  }

  // y-sweep: implicit in y, explicit in x on the starred field.
  std::vector<double> next = star;
  for (std::size_t i = 1; i + 1 < g.nx; ++i) {
    std::size_t j = 1;
    while (j + 1 < g.ny) {
      if (!is_fluid(s.kind[g.index(i, j)])) {
        ++j;
        continue;
      }
      const std::size_t j0 = j;
      while (j + 1 < g.ny && is_fluid(s.kind[g.index(i, j)])) ++j;
      const std::size_t n = j - j0;
      TridiagonalSystem sys(n);
      for (std::size_t r = 0; r < n; ++r) {
        const std::size_t k = g.index(i, j0 + r);
        const double adv = s.v[k] * dt / (4.0 * g.dy);
        const double a = l2 + adv, b = -1.0 - 2.0 * l2, c = l2 - adv;
        double rhs = -star[k] + s.u[k] * dt / 2.0 * (star[k + 1] - star[k - 1]) / (2.0 * g.dx) -
                     dt / (2.0 * re) * (star[k + 1] - 2.0 * star[k] + star[k - 1]) / (g.dx * g.dx);
        sys.diag[r] = b;
        if (r > 0)
          sys.sub[r - 1] = a;
        else
          rhs -= a * star[k - g.nx];
        if (r + 1 < n)
          sys.super[r] = c;
        else
          rhs -= c * star[k + g.nx];
        sys.rhs[r] = rhs;
      }
      const auto x = tdma_solve(sys);
      for (std::size_t r = 0; r < n; ++r) next[g.index(i, j0 + r)] = x[r];
    }
  }
  s.omega = std::move(next);
}

BackstepRun run_backstep(const BackStepConfig& cfg, std::size_t nx, std::size_t ny,
                         const BackstepOptions& opt) {
  if (!(opt.dt > 0.0)) throw ValidationError("time step must be positive");
  BackstepRun run;
  run.state = make_flow_state(cfg, nx, ny);
  FlowState& s = run.state;
  std::vector<double> u_prev = s.u;
  for (std::size_t n = 1; n <= opt.max_steps; ++n) {
    if (opt.scheme == NsScheme::directional)
      vorticity_step_directional(s, opt.dt);
    else
      vorticity_step_adi(s, opt.dt, opt.adi_form);
    psi_gauss_seidel_update(s, opt.psi_iterations);
    apply_wall_vorticity(s);
    update_velocities(s);
    double m = 0.0;
    for (std::size_t k = 0; k < s.u.size(); ++k) m += (s.u[k] - u_prev[k]) * (s.u[k] - u_prev[k]);
    u_prev = s.u;
    run.metric.push_back(m);
    run.steps = n;
    if (!std::isfinite(m) || m > 1e6) {
      run.diverged = true;
      break;
    }
    if (m < opt.tolerance) {
      run.reached_tolerance = true;
      break;
    }
  }
  return run;
}

std::vector<ProfileRow> cross_section_profiles(const FlowState& s,
                                               const std::vector<double>& sections) {
  const Grid2D& g = s.grid;
  const double x_end = g.x(g.nx - 1);
  std::vector<ProfileRow> rows;
  for (double xc : sections) {
    if (xc < g.x0 || xc > x_end) {
      std::ostringstream msg;
      msg << "profile section x = " << xc << " outside the channel";
      throw ValidationError(msg.str());
    }
    const double r = (xc - g.x0) / g.dx;
    std::size_t i = std::min(static_cast<std::size_t>(std::floor(r)), g.nx - 2);
    const double t = r - static_cast<double>(i);
    for (std::size_t j = 0; j < g.ny; ++j) {
      const double u = t == 0.0 ? s.u[g.index(i, j)]
                                : (1.0 - t) * s.u[g.index(i, j)] + t * s.u[g.index(i + 1, j)];
      rows.push_back({xc, g.y(j), u});
    }
  }
  return rows;
}

double max_discrete_divergence(const FlowState& s) {
  const Grid2D& g = s.grid;
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < g.ny; ++j) {
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (!is_fluid(s.kind[k]) || !is_fluid(s.kind[k - 1]) || !is_fluid(s.kind[k + 1]) ||
          !is_fluid(s.kind[k - g.nx]) || !is_fluid(s.kind[k + g.nx]))
        continue;
      const double div = (s.u[k + 1] - s.u[k - 1]) / (2.0 * g.dx) +
                         (s.v[k + g.nx] - s.v[k - g.nx]) / (2.0 * g.dy);
      worst = std::max(worst, std::abs(div));
    }
  }
  return worst;
}

std::string to_string(NsScheme s) { return s == NsScheme::directional ? "directional" : "adi"; }
std::string to_string(AdiForm f) { return f == AdiForm::literal ? "literal" : "central"; }

}  // namespace dirode
