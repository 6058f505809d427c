#include "dirode/baselines.hpp"

#include "dirode/spatial_ode.hpp"

namespace dirode {

Field1D classic_implicit_step_1d(const Field1D& field, const DiffusionModel& model, double dt) {
  Field1D in = field;
  apply_dirichlet(in);
  const Grid1D& g = in.grid;
  const std::size_t n = g.nx - 2;
  TridiagonalSystem sys(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = r + 1;
    const double lam = model(field.u[i]) * dt / (g.dx * g.dx);
    sys.diag[r] = 1.0 + 2.0 * lam;
    sys.rhs[r] = field.u[i];
    if (r > 0)
      sys.sub[r - 1] = -lam;
    else
      sys.rhs[r] += lam * in.bc.left;
    if (r + 1 < n)
      sys.super[r] = -lam;
    else
      sys.rhs[r] += lam * in.bc.right;
  }
  const auto x = tdma_solve(sys);
  Field1D out = in;
  for (std::size_t r = 0; r < n; ++r) out.u[r + 1] = x[r];
  return out;
}

Field1D ftcs_step_1d(const Field1D& field, double d, double dt) {
  Field1D in = field;
  apply_dirichlet(in);
  const double lam = d * dt / (in.grid.dx * in.grid.dx);
  Field1D out = in;
  for (std::size_t i = 1; i + 1 < in.grid.nx; ++i)
    out.u[i] = in.u[i] + lam * (in.u[i - 1] - 2.0 * in.u[i] + in.u[i + 1]);
  return out;
}

}  // namespace dirode
