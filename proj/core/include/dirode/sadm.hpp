#pragma once

#include <functional>
#include <vector>

#include "dirode/grid.hpp"
#include "dirode/source.hpp"

namespace dirode {

// Polynomial in segment-local time; c[p] multiplies tau^p.
struct TauPolynomial {
  std::vector<double> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  double operator()(double tau) const;
  TauPolynomial integral() const;  // antiderivative vanishing at 0

  friend TauPolynomial operator+(const TauPolynomial& a, const TauPolynomial& b);
  friend TauPolynomial operator*(const TauPolynomial& a, const TauPolynomial& b);
  friend TauPolynomial operator*(double s, const TauPolynomial& a);
};

struct TauSeries {
  std::vector<TauPolynomial> terms;  // u_0, u_1, ..., u_K
  double dt = 0.0;

  double operator()(double tau) const;
  TauPolynomial sum() const;
};

// N and its first three derivatives at a point.
struct NonlinearODESpec {
  std::function<double(double)> n, dn, d2n, d3n;
};

inline constexpr int kMaxAdomianOrder = 3;

TauSeries adomian_expand(const NonlinearODESpec& spec, double u0, int order, double dt);

// N(u) = D0 (A u + B) / (1 + beta u) + C with neighbours frozen at t_n.
NonlinearODESpec rational_diffusion_spec(double d0, double beta, double a, double b, double c);

// Sum of the first K+1 Adomian terms at tau, closed form for this N.
double sadm_rational_kernel(double u0, double a, double b, double c, double d0, double beta,
                            double tau, int order);

double sadm_nonlinear_diffusion_step(double u, double u_left, double u_right, double d0,
                                     double beta, double s, double dx, double dt, int order);

struct SadmDiagnostics {
  std::size_t nodes = 0;
  std::size_t ratio_warnings = 0;  // |u_K| / |u_0| >= 1
};

Field1D sadm_field_step(const Field1D& field, double d0, double beta, const Source1D& f,
                        double t, double dt, int order, SadmDiagnostics* diag = nullptr);
Field2D sadm_field_step(const Field2D& field, double d0, double beta, const Source2D& f,
                        double t, double dt, int order, SadmDiagnostics* diag = nullptr);

}  // namespace dirode
