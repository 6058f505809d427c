#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "dirode/diffusion_model.hpp"
#include "dirode/grid.hpp"
#include "dirode/linalg.hpp"
#include "dirode/source.hpp"

namespace dirode {

inline constexpr int kMaxOrder = 8;

enum class Sampling { uniform, chebyshev };

struct SchemeConfig {
  int order = 0;
  Sampling sampling = Sampling::uniform;
  int corrector_cap = 20;
  double tolerance = 1e-10;
};

void validate(const SchemeConfig& cfg);

// U(tau) = sum a_p tau^p over one segment of length dt.
struct NeighborPolynomial {
  std::array<double, kMaxOrder + 1> a{};
  int order = 0;
  double dt = 0.0;

  static NeighborPolynomial constant(double a0, double dt = 0.0);
  double operator()(double tau) const;
  // q-th derivative at tau.
  double derivative(int q, double tau) const;
};

struct DiffusionUpdateParams {
  double abar = 0.0;    // D (1/dx^2 [+ 1/dy^2])
  double source = 0.0;  // f(x_i, t_n, u_i^n), frozen
  double center = 0.0;  // u_i^n
};

std::vector<double> sampling_nodes(int order, double dt, Sampling family);

NeighborPolynomial solve_polynomial_coeffs(std::span<const double> times,
                                           std::span<const double> values);

// Inverse Vandermonde for unit segment length; M^-1(dt) = diag(dt^-p) * Mbar.
DenseMatrix normalized_vandermonde_inverse(int order, Sampling family);

// Solution of du/dtau = D U(tau) - 2 abar u + s at tau.
double closed_form_update(const DiffusionUpdateParams& params, const NeighborPolynomial& poly,
                          double d, double tau);

// Limit of the update as dt -> infinity (s = 0): Gauss-Seidel for P = 0,
// fully implicit for P >= 1.
double asymptotic_limit(const DiffusionUpdateParams& params, const NeighborPolynomial& poly,
                        double d, int order);

struct CorrectorStats {
  int iterations = 0;
  double last_change = 0.0;
  std::vector<double> changes;
};

// Algorithm: P = 0 predictor at every sample time, polynomial fit, then corrector
// sweeps until the max-norm change of u(dt) drops below tolerance or the cap is hit.
// Boundary values come from field.bc and are imposed before the first sample.
Field1D predictor_corrector_step(const Field1D& field, const DiffusionModel& model,
                                 const Source1D& f, const SchemeConfig& cfg, double t, double dt,
                                 CorrectorStats* stats = nullptr);
Field2D predictor_corrector_step(const Field2D& field, const DiffusionModel& model,
                                 const Source2D& f, const SchemeConfig& cfg, double t, double dt,
                                 CorrectorStats* stats = nullptr);

double wave_advection_update(double u, double u_left, double u_right, double c, double dx,
                             double dt, bool literal_b = false);

double nonsplit_switching_update(double u, double u_left, double u_right, double c, double d,
                                 double dx, double dt);

struct StabilityVerdict {
  double u_star = 0.0;
  bool stable = false;
};

template <class Law>
StabilityVerdict zeroth_order_stability_check(const Law& d_of_u, double u_left, double u_right,
                                              double dx) {
  const double a = -2.0 / (dx * dx);
  const double u_star = 0.5 * (u_left + u_right);
  const double slope = a * d_of_u(u_star);
  return {u_star, slope < 0.0};
}

}  // namespace dirode
