#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dirode/grid.hpp"

namespace dirode {

// Channel of width W = 1 and length aspect * W. Optional blocks of height
// h1 (bottom) and h2 (top), both of length step_length, sit at the inlet.
struct BackStepConfig {
  double u_inlet = 1.0;
  double u1 = 0.0;  // bottom wall speed
  double u2 = 0.0;  // top wall speed
  double h1 = 0.0;
  double h2 = 0.0;
  double re = 100.0;
  double aspect = 10.0;
  double step_length = 1.0;
};

void validate(const BackStepConfig& cfg);

enum class NodeKind : std::uint8_t { fluid, wall, inlet, outlet, solid };

struct FlowState {
  Grid2D grid;
  BackStepConfig config;
  std::vector<NodeKind> kind;
  std::vector<double> omega, psi, u, v;
};

FlowState make_flow_state(const BackStepConfig& cfg, std::size_t nx, std::size_t ny);

void apply_psi_boundaries(FlowState& s);
void apply_wall_vorticity(FlowState& s);
void update_velocities(FlowState& s);

// Lexicographic in-place Gauss-Seidel sweeps on the Poisson equation lap psi = -omega.
void psi_gauss_seidel_update(FlowState& s, int iterations);

// Max-norm of lap psi + omega over fluid nodes.
double poisson_residual(const FlowState& s);

enum class AdiForm { literal, central };

// Half-step characteristics, P = 0 diffusion with D = 1/Re, half-step characteristics.
void vorticity_step_directional(FlowState& s, double dt);
void vorticity_step_adi(FlowState& s, double dt, AdiForm form = AdiForm::literal);

enum class NsScheme { directional, adi };

struct BackstepRun {
  FlowState state;
  std::vector<double> metric;
  std::size_t steps = 0;
  bool reached_tolerance = false;
  bool diverged = false;
};

struct BackstepOptions {
  double dt = 0.01;
  NsScheme scheme = NsScheme::directional;
  AdiForm adi_form = AdiForm::literal;
  double tolerance = 1e-8;
  std::size_t max_steps = 20000;
  int psi_iterations = 1;
};

BackstepRun run_backstep(const BackStepConfig& cfg, std::size_t nx, std::size_t ny,
                         const BackstepOptions& opt);

struct ProfileRow {
  double x_c, y, u;
};

std::vector<ProfileRow> cross_section_profiles(const FlowState& s,
                                               const std::vector<double>& sections);

// Central-difference divergence of the derived velocities at fluid nodes.
double max_discrete_divergence(const FlowState& s);

std::string to_string(NsScheme s);
std::string to_string(AdiForm f);

}  // namespace dirode
