#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dirode/characteristics.hpp"
#include "dirode/grid.hpp"

namespace dirode {

// ---- Burgers, u0 = -sin(pi x) on [-1, 1], zero Dirichlet data.

struct BurgersQuadrature {
  std::size_t panels = 400;  // composite 20-point Gauss-Legendre panels
  double window_cap = 1000.0;
};

double burgers_analytic(double x, double t, double nu, const BurgersQuadrature& q = {});

// rows[n][i] = analytic value at t = (n + 1) dt on grid nodes.
std::vector<std::vector<double>> burgers_analytic_table(const Grid1D& grid, double dt,
                                                        std::size_t steps, double nu,
                                                        const BurgersQuadrature& q = {});

enum class BurgersScheme { classic_implicit, spatial_ode, temporal_p0, temporal_p1, temporal_p1_loop };

std::string to_string(BurgersScheme s);
BurgersScheme parse_burgers_scheme(const std::string& name);
std::vector<BurgersScheme> all_burgers_schemes();

struct BurgersOptions {
  Interpolation interpolation = Interpolation::linear;
  int corrector_cap = 20;
  double tolerance = 1e-10;
};

struct BurgersRun {
  Grid1D grid;
  std::vector<std::vector<double>> fields;  // fields[0] is the initial state
  double error = 0.0;                       // averaged error over the stored steps
};

// Lie splitting: Euler-foot characteristics with V = u, then the chosen diffusion scheme.
BurgersRun run_burgers(BurgersScheme scheme, std::size_t nx, double dt, double nu,
                       std::size_t steps = 10, const BurgersOptions& opt = {},
                       const std::vector<std::vector<double>>* analytic = nullptr);

// Mean squared deviation over all stored steps and nodes.
double burgers_averaged_error(const std::vector<std::vector<double>>& numeric,
                              const std::vector<std::vector<double>>& analytic);

// ---- Particle propagation in a divergence-free wind.

enum class WindMode { per_step, fixed };

struct WindDraw {
  double ry1 = 0.0, ry2 = 0.0, rx1 = 0.0, rx2 = 0.0;
};

struct WindField2D {
  double k = 0.0;
  WindMode mode = WindMode::per_step;
  std::uint64_t seed = 0;

  WindDraw draw(std::size_t step) const;
  static VelocityField2D velocity(double k, const WindDraw& d);
};

struct ParticleConfig {
  double beta = 10.0;
  double k = 0.0;
  double d0 = 1e-3;
  double s = 0.01;
  double length = 6.283185307179586;
  std::size_t nx = 200;
  double dt = 0.01;
  double thickness = 0.02;
  double value = 0.01;
  WindMode wind_mode = WindMode::per_step;
  std::size_t ref_substeps = 100;
  int corrector_cap = 20;
};

enum class ParticleScheme { sadm_k3, temporal_p0, temporal_p1_loop, temporal_p2_loop_ref };

std::string to_string(ParticleScheme s);
ParticleScheme parse_particle_scheme(const std::string& name);

Field2D particle_initial_field(const ParticleConfig& cfg);

// Diffusion operator of the particle problem, D(u) = D0/(1 + beta u), source s u.
Field2D particle_diffusion_step(const Field2D& field, const ParticleConfig& cfg,
                                ParticleScheme scheme, double t, double dt);

struct ParticleRun {
  std::vector<Field2D> history;  // initial field then every keep_every-th step
  Field2D final;
  std::size_t steps = 0;
};

ParticleRun run_particles_2d(const ParticleConfig& cfg, ParticleScheme scheme, std::size_t steps,
                             std::uint64_t seed, std::size_t keep_every = 0);

// ---- Constant-coefficient advection-diffusion mode.

double linear_ade_exact(double c, double d, int m, double x, double t);

struct LinearAdeSetup {
  double c = 1.0;
  double d = 0.1;
  int mode = 1;
  std::size_t nx = 201;
  double horizon = 0.4;
  Interpolation interpolation = Interpolation::cubic;
  int diffusion_order = 2;
  int corrector_cap = 2000;
};

// Lie or Strang run on [0, 1] with Dirichlet data from the exact mode at the end
// of every sub-step. Returns the max-norm error at the horizon.
double linear_ade_split_error(const LinearAdeSetup& setup, bool strang, double dt);

struct LadderResult {
  std::vector<double> steps, errors;
  std::vector<double> orders;  // successive log2 ratios; NaN when undefined
  double fitted_order = 0.0;   // least-squares slope of log error vs log step
  bool monotone = true;
};

// Observed orders for an error ladder; identical rungs give NaN orders.
LadderResult convergence_orders(const std::vector<double>& steps, const std::vector<double>& errors);

// ---- Nonlinear heat equation u_t = (D(u) u_x)_x: full implicit vs split implicit.

struct NonlinearLaw {
  std::function<double(double)> d;
  std::function<double(double)> dd;  // dD/du
};

struct NonlinearComparison {
  std::vector<std::vector<double>> full, split;
  std::vector<double> divergence;  // max |full - split| per step
  bool full_bounded = true;
  bool split_bounded = true;
  double full_max = 0.0, split_max = 0.0;
};

NonlinearComparison compare_nonlinear_implicit(const NonlinearLaw& law, const Field1D& initial,
                                               double dt, std::size_t steps);

}  // namespace dirode
