#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dirode/errors.hpp"
#include "dirode/problems.hpp"
#include "dirode/sadm.hpp"
#include "dirode/splitting.hpp"
#include "dirode/stochastic.hpp"
#include "dirode/temporal_ode.hpp"

namespace dirode {

namespace {

double standard_normal(std::mt19937_64& rng) {
  // Box-Muller on 53-bit uniforms; avoids library-specific distributions.
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double vx = bx - ax, vy = by - ay;
  const double t = std::clamp(((px - ax) * vx + (py - ay) * vy) / (vx * vx + vy * vy), 0.0, 1.0);
  return std::hypot(px - ax - t * vx, py - ay - t * vy);
}

}  // namespace

WindDraw WindField2D::draw(std::size_t step) const {
  if (k == 0.0) return {};
  const std::uint64_t label = mode == WindMode::fixed ? 0 : step;
  std::mt19937_64 rng(derive_seed(seed, 0x77696e64ULL + label));
  WindDraw d;
  d.ry1 = standard_normal(rng);
  d.ry2 = standard_normal(rng);
  d.rx1 = standard_normal(rng);
  d.rx2 = standard_normal(rng);
  return d;
}

VelocityField2D WindField2D::velocity(double k, const WindDraw& d) {
  VelocityField2D v;
  v.vx = [k, d](double, double y, double, double) {
    return 1.5 * (1.0 + k * d.ry1) * std::sin(y) + (1.0 + k * d.ry2) * std::cos(y);
  };
  v.vy = [k, d](double x, double, double, double) {
    return 1.5 * (1.0 + k * d.rx1) * std::sin(x) + (1.0 + k * d.rx2) * std::cos(x);
  };
  return v;
}

std::string to_string(ParticleScheme s) {
  switch (s) {
    case ParticleScheme::sadm_k3: return "sadm-K3";
    case ParticleScheme::temporal_p0: return "temporal-p0";
    case ParticleScheme::temporal_p1_loop: return "temporal-p1-loop";
    case ParticleScheme::temporal_p2_loop_ref: return "temporal-p2-loop-ref";
  }
  return "?";
}

ParticleScheme parse_particle_scheme(const std::string& name) {
  for (auto s : {ParticleScheme::sadm_k3, ParticleScheme::temporal_p0,
                 ParticleScheme::temporal_p1_loop, ParticleScheme::temporal_p2_loop_ref})
    if (to_string(s) == name) return s;
  throw ValidationError("unknown particle scheme '" + name + "'");
}

Field2D particle_initial_field(const ParticleConfig& cfg) {
  if (cfg.beta < 0.0) throw ValidationError("beta must be non-negative");
  const Grid2D g = build_grid_2d(cfg.length, cfg.length, cfg.nx, cfg.nx);
  const double l = cfg.length;
  const double half = 0.5 * std::max(cfg.thickness, g.dx);
  // Two perpendicular lines and one diagonal, in unit-square coordinates.
  const double seg[3][4] = {{0.25, 0.5, 0.75, 0.5}, {0.5, 0.25, 0.5, 0.75}, {0.3, 0.3, 0.7, 0.7}};
  Field2D f(g, 0.0);
  for (std::size_t j = 1; j + 1 < g.ny; ++j) {
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
      for (const auto& s : seg) {
        if (segment_distance(g.x(i), g.y(j), s[0] * l, s[1] * l, s[2] * l, s[3] * l) <= half) {
          f.at(i, j) = cfg.value;
          break;
        }
      }
    }
  }
  return f;
}

Field2D particle_diffusion_step(const Field2D& field, const ParticleConfig& cfg,
                                ParticleScheme scheme, double t, double dt) {
  const double s = cfg.s;
  const Source2D growth = [s](double, double, double, double u) { return s * u; };
  const DiffusionModel model = DiffusionModel::rational(cfg.d0, cfg.beta);
  switch (scheme) {
    case ParticleScheme::sadm_k3:
      return sadm_field_step(field, cfg.d0, cfg.beta, growth, t, dt, 3);
    case ParticleScheme::temporal_p0:
      return predictor_corrector_step(field, model, growth, {0, Sampling::uniform, 0, 1e-10}, t, dt);
    case ParticleScheme::temporal_p1_loop:
      return predictor_corrector_step(field, model, growth,
                                      {1, Sampling::uniform, cfg.corrector_cap, 1e-10}, t, dt);
    case ParticleScheme::temporal_p2_loop_ref: {
      const std::size_t m = std::max<std::size_t>(1, cfg.ref_substeps);
      const double h = dt / static_cast<double>(m);
      Field2D out = field;
      for (std::size_t k = 0; k < m; ++k)
        out = predictor_corrector_step(out, model, growth,
                                       {2, Sampling::uniform, cfg.corrector_cap, 1e-14},
                                       t + static_cast<double>(k) * h, h);
      return out;
    }
  }
  return field;
}

ParticleRun run_particles_2d(const ParticleConfig& cfg, ParticleScheme scheme, std::size_t steps,
                             std::uint64_t seed, std::size_t keep_every) {
  if (!(cfg.dt > 0.0)) throw ValidationError("time step must be positive");
  const WindField2D wind{cfg.k, cfg.wind_mode, seed};
  const DiffusionModel model = DiffusionModel::rational(cfg.d0, cfg.beta);
  ParticleRun run;
  Field2D u = particle_initial_field(cfg);
  run.history.push_back(u);

  VelocityField2D vel;
  StepOperator<Field2D> adv{"characteristics", OperatorKind::advection,
                            [&](const Field2D& f, double t, double h) {
                              const auto induced = induced_advection(f, model);
                              return advect_step(f, vel, t, h, Interpolation::linear, 1, &induced);
                            }};
  StepOperator<Field2D> diff{to_string(scheme), OperatorKind::diffusion,
                             [&](const Field2D& f, double t, double h) {
                               return particle_diffusion_step(f, cfg, scheme, t, h);
                             }};
  for (std::size_t n = 0; n < steps; ++n) {
    vel = WindField2D::velocity(cfg.k, wind.draw(n));
    const double t = static_cast<double>(n) * cfg.dt;
    u = strang_step(adv, diff, u, t, cfg.dt);
    for (double v : u.u)
      if (!std::isfinite(v)) throw NumericalError("particle run produced a non-finite value");
    if (keep_every && (n + 1) % keep_every == 0) run.history.push_back(u);
  }
  run.final = u;
  run.steps = steps;
  return run;
}

double linear_ade_exact(double c, double d, int m, double x, double t) {
  const double k = static_cast<double>(m) * std::numbers::pi;
  return std::exp(-d * k * k * t) * std::sin(k * (x - c * t));
}

}  // namespace dirode
