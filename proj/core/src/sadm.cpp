#include "dirode/sadm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dirode/errors.hpp"
#include "dirode/parallel.hpp"

namespace dirode {

double TauPolynomial::operator()(double tau) const {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * tau + *it;
  return acc;
}

TauPolynomial TauPolynomial::integral() const {
  TauPolynomial out;
  out.c.assign(c.size() + 1, 0.0);
  for (std::size_t p = 0; p < c.size(); ++p) out.c[p + 1] = c[p] / static_cast<double>(p + 1);
  return out;
}

TauPolynomial operator+(const TauPolynomial& a, const TauPolynomial& b) {
  TauPolynomial out;
  out.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
  for (std::size_t p = 0; p < a.c.size(); ++p) out.c[p] += a.c[p];
  for (std::size_t p = 0; p < b.c.size(); ++p) out.c[p] += b.c[p];
  return out;
}

TauPolynomial operator*(const TauPolynomial& a, const TauPolynomial& b) {
  TauPolynomial out;
  if (a.c.empty() || b.c.empty()) return out;
  out.c.assign(a.c.size() + b.c.size() - 1, 0.0);
  for (std::size_t p = 0; p < a.c.size(); ++p)
    for (std::size_t q = 0; q < b.c.size(); ++q) out.c[p + q] += a.c[p] * b.c[q];
  return out;
}

TauPolynomial operator*(double s, const TauPolynomial& a) {
  TauPolynomial out = a;
  for (double& v : out.c) v *= s;
  return out;
}

double TauSeries::operator()(double tau) const {
  double acc = 0.0;
  for (const auto& t : terms) acc += t(tau);
  return acc;
}

TauPolynomial TauSeries::sum() const {
  TauPolynomial out{{0.0}};
  for (const auto& t : terms) out = out + t;
  return out;
}

TauSeries adomian_expand(const NonlinearODESpec& spec, double u0, int order, double dt) {
  if (order < 0 || order > kMaxAdomianOrder)
    throw ValidationError("Adomian order must be in [0, 3]");
  const double n0 = spec.n(u0);
  const double n1 = order >= 2 ? spec.dn(u0) : 0.0;
  const double n2 = order >= 3 ? spec.d2n(u0) : 0.0;

  TauSeries s;
  s.dt = dt;
  s.terms.push_back(TauPolynomial{{u0}});
  if (order == 0) return s;

  // A_0 = N(u0), A_1 = u1 N', A_2 = u2 N' + u1^2 N''/2; u_{k+1} = int A_k.
  const TauPolynomial a0{{n0}};
  s.terms.push_back(a0.integral());
  if (order == 1) return s;
  const TauPolynomial& u1 = s.terms[1];
  s.terms.push_back((n1 * u1).integral());
  if (order == 2) return s;
  const TauPolynomial& u2 = s.terms[2];
  s.terms.push_back((n1 * u2 + (0.5 * n2) * (u1 * u1)).integral());
  return s;
}

NonlinearODESpec rational_diffusion_spec(double d0, double beta, double a, double b, double c) {
  const double g = d0 * (a - beta * b);
  NonlinearODESpec s;
  s.n = [=](double u) { return d0 * (a * u + b) / (1.0 + beta * u) + c; };
  s.dn = [=](double u) {
    const double w = 1.0 + beta * u;
    return g / (w * w);
  };
  s.d2n = [=](double u) {
    const double w = 1.0 + beta * u;
    return -2.0 * beta * g / (w * w * w);
  };
  s.d3n = [=](double u) {
    const double w = 1.0 + beta * u;
    return 6.0 * beta * beta * g / (w * w * w * w);
  };
  return s;
}

namespace {

struct KernelTerms {
  double value;
  double last;  // u_K(tau)
};

KernelTerms rational_terms(double u0, double a, double b, double c, double d0, double beta,
                           double tau, int order) {
  if (order < 0 || order > kMaxAdomianOrder)
    throw ValidationError("Adomian order must be in [0, 3]");
  const double w = 1.0 + beta * u0;
  if (w == 0.0) throw NumericalError("singular diffusion: 1 + beta u = 0");
  const double g = d0 * (a - beta * b);
  const double n0 = d0 * (a * u0 + b) / w + c;
  const double n1 = g / (w * w);
  const double n2 = -2.0 * beta * g / (w * w * w);
  double value = u0, last = u0;
  if (order >= 1) value += last = n0 * tau;
  if (order >= 2) value += last = n0 * n1 * tau * tau / 2.0;
  if (order >= 3) value += last = (n0 * n1 * n1 + n0 * n0 * n2) * tau * tau * tau / 6.0;
  return {value, last};
}

}  // namespace

double sadm_rational_kernel(double u0, double a, double b, double c, double d0, double beta,
                            double tau, int order) {
  return rational_terms(u0, a, b, c, d0, beta, tau, order).value;
}

double sadm_nonlinear_diffusion_step(double u, double u_left, double u_right, double d0,
                                     double beta, double s, double dx, double dt, int order) {
  const double inv = 1.0 / (dx * dx);
  return sadm_rational_kernel(u, -2.0 * inv, (u_left + u_right) * inv, s, d0, beta, dt, order);
}

namespace {

[[noreturn]] void node_error(std::size_t node, const std::exception& e) {
  std::ostringstream msg;
  msg << "SADM step failed at node " << node << ": " << e.what();
  throw NumericalError(msg.str());
}

}  // namespace

Field1D sadm_field_step(const Field1D& field, double d0, double beta, const Source1D& f,
                        double t, double dt, int order, SadmDiagnostics* diag) {
  Field1D in = field;
  apply_dirichlet(in);
  const Grid1D& g = in.grid;
  const double inv = 1.0 / (g.dx * g.dx);
  Field1D out = in;
  SadmDiagnostics d;
  for (std::size_t i = 1; i + 1 < g.nx; ++i) {
    const double c = f ? f(g.x(i), t, in.u[i]) : 0.0;
    try {
      const auto r = rational_terms(in.u[i], -2.0 * inv, (in.u[i - 1] + in.u[i + 1]) * inv, c, d0,
                                    beta, dt, order);
      out.u[i] = r.value;
      ++d.nodes;
      if (order >= 1 && std::abs(r.last) >= std::abs(in.u[i]) && r.last != 0.0)
        ++d.ratio_warnings;
    } catch (const std::exception& e) {
      node_error(i, e);
    }
  }
  apply_dirichlet(out);
  if (diag) *diag = d;
  return out;
}

Field2D sadm_field_step(const Field2D& field, double d0, double beta, const Source2D& f,
                        double t, double dt, int order, SadmDiagnostics* diag) {
  Field2D in = field;
  apply_dirichlet(in);
  const Grid2D& g = in.grid;
  const double wx = 1.0 / (g.dx * g.dx), wy = 1.0 / (g.dy * g.dy);
  const double a = -2.0 * (wx + wy);
  Field2D out = in;
  std::vector<unsigned char> warn(g.size(), 0);
  parallel_for(g.ny - 2, [&](std::size_t jb, std::size_t je) {
    for (std::size_t j = jb + 1; j < je + 1; ++j) {
      for (std::size_t i = 1; i + 1 < g.nx; ++i) {
        const std::size_t k = g.index(i, j);
        const double b = wx * (in.u[k - 1] + in.u[k + 1]) + wy * (in.u[k - g.nx] + in.u[k + g.nx]);
        const double c = f ? f(g.x(i), g.y(j), t, in.u[k]) : 0.0;
        try {
          const auto r = rational_terms(in.u[k], a, b, c, d0, beta, dt, order);
          out.u[k] = r.value;
          if (order >= 1 && r.last != 0.0 && std::abs(r.last) >= std::abs(in.u[k])) warn[k] = 1;
        } catch (const std::exception& e) {
          node_error(k, e);
        }
      }
    }
  });
  apply_dirichlet(out);
  if (diag) {
    diag->nodes = (g.nx - 2) * (g.ny - 2);
    diag->ratio_warnings = static_cast<std::size_t>(std::count(warn.begin(), warn.end(), 1));
  }
  return out;
}

}  // namespace dirode
