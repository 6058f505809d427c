#pragma once

#include <cstddef>
#include <vector>

#include "dirode/grid.hpp"
#include "dirode/source.hpp"

namespace dirode {

// Row r: sub[r-1] x[r-1] + diag[r] x[r] + super[r] x[r+1] = rhs[r].
struct TridiagonalSystem {
  std::vector<double> sub, diag, super, rhs;

  TridiagonalSystem() = default;
  explicit TridiagonalSystem(std::size_t n)
      : sub(n ? n - 1 : 0), diag(n), super(n ? n - 1 : 0), rhs(n) {}
  std::size_t size() const { return diag.size(); }
};

std::vector<double> tdma_solve(const TridiagonalSystem& sys);

// Implicit relation -lower u_{i-1} + u_i - upper u_{i+1} = rhs at t_{n+1}.
struct SpatialRow {
  double lower = 0.0;
  double upper = 0.0;
  double rhs = 0.0;
};

struct SpatialStencil {
  double k1 = 0.0, k2 = 0.0, k3 = 0.0;
  double lambda1 = 0.0, lambda2 = 0.0;

  SpatialRow row() const { return {k1, k2, k3}; }
};

SpatialRow spatial_diffusion_stencil(double d, double dt, double dx, double u_n, double s = 0.0);

SpatialStencil spatial_advection_diffusion_stencil(double c, double d, double dt, double dx,
                                                   double u_n, double s = 0.0);

// One implicit step; field.bc holds the t_{n+1} boundary values.
Field1D spatial_step_1d(const Field1D& field, double d, double c, const Source1D& f, double t,
                        double dt);

}  // namespace dirode
