#include "dirode/temporal_ode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dirode/errors.hpp"
#include "dirode/parallel.hpp"

namespace dirode {

void validate(const SchemeConfig& cfg) {
  if (cfg.order < 0 || cfg.order > kMaxOrder) {
    std::ostringstream msg;
    msg << "scheme order must be in [0, " << kMaxOrder << "], got " << cfg.order;
    throw ValidationError(msg.str());
  }
  if (cfg.corrector_cap < 0) throw ValidationError("corrector cap must be non-negative");
  if (!(cfg.tolerance >= 0.0)) throw ValidationError("corrector tolerance must be non-negative");
}

NeighborPolynomial NeighborPolynomial::constant(double a0, double dt) {
  NeighborPolynomial p;
  p.a[0] = a0;
  p.dt = dt;
  return p;
}

double NeighborPolynomial::operator()(double tau) const { return derivative(0, tau); }

double NeighborPolynomial::derivative(int q, double tau) const {
  if (q > order) return 0.0;
  // Horner on sum_{p>=q} a_p p!/(p-q)! tau^(p-q)
  double acc = 0.0;
  for (int p = order; p >= q; --p) {
    double falling = 1.0;
    for (int k = 0; k < q; ++k) falling *= static_cast<double>(p - k);
    acc = acc * tau + a[p] * falling;
  }
  return acc;
}

std::vector<double> sampling_nodes(int order, double dt, Sampling family) {
  if (order < 0 || order > kMaxOrder) throw ValidationError("sampling order out of range");
  if (!(dt > 0.0)) throw ValidationError("sampling duration must be positive");
  std::vector<double> t(order + 1, 0.0);
  if (order == 0) return t;
  const double n = static_cast<double>(order);
  for (int k = 1; k <= order; ++k) {
    if (family == Sampling::uniform)
      t[k] = dt * static_cast<double>(k) / n;
    else
      t[k] = 0.5 * dt * (1.0 - std::cos(static_cast<double>(k) * std::numbers::pi / n));
  }
  t[order] = dt;
  return t;
}

namespace {

DenseMatrix unit_vandermonde(std::span<const double> s) {
  const std::size_t n = s.size();
  DenseMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    double v = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
      m(r, c) = v;
      v *= s[r];
    }
  }
  return m;
}

}  // namespace

NeighborPolynomial solve_polynomial_coeffs(std::span<const double> times,
                                           std::span<const double> values) {
  if (times.size() != values.size() || times.empty())
    throw ValidationError("solve_polynomial_coeffs: need matching, non-empty samples");
  if (times.size() > static_cast<std::size_t>(kMaxOrder) + 1)
    throw ValidationError("solve_polynomial_coeffs: order exceeds cap");
  if (times[0] != 0.0) throw ValidationError("solve_polynomial_coeffs: first time must be 0");
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t j = i + 1; j < times.size(); ++j)
      if (times[i] == times[j]) {
        std::ostringstream msg;
        msg << "solve_polynomial_coeffs: duplicate sample time " << times[i] << " (singular system)";
        throw NumericalError(msg.str());
      }

  NeighborPolynomial poly;
  poly.order = static_cast<int>(times.size()) - 1;
  const double span = *std::max_element(times.begin(), times.end());
  poly.dt = span;
  if (poly.order == 0) {
    poly.a[0] = values[0];
    return poly;
  }
  // Solve on [0, 1] and rescale: a_p = abar_p / span^p.
  std::vector<double> s(times.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = times[k] / span;
  const auto abar = dense_solve(unit_vandermonde(s), {values.begin(), values.end()});
  double scale = 1.0;
  for (int p = 0; p <= poly.order; ++p) {
    poly.a[p] = abar[p] * scale;
    scale /= span;
  }
  return poly;
}

DenseMatrix normalized_vandermonde_inverse(int order, Sampling family) {
  const auto s = sampling_nodes(order, 1.0, family);
  return dense_inverse(unit_vandermonde(s));
}

namespace {

// G(tau) = (D / 2abar) sum_q (-1/2abar)^q U^(q)(tau)
double particular(const NeighborPolynomial& poly, double d, double abar, double tau) {
  const double r = 0.5 / abar;
  double acc = 0.0;
  for (int q = poly.order; q >= 0; --q) acc = acc * (-r) + poly.derivative(q, tau);
  return d * r * acc;
}

}  // namespace

double closed_form_update(const DiffusionUpdateParams& params, const NeighborPolynomial& poly,
                          double d, double tau) {
  const double abar = params.abar;
  if (!(abar > 0.0)) throw ValidationError("closed_form_update requires abar > 0");
  if (tau < 0.0) throw ValidationError("closed_form_update requires tau >= 0");
  const double decay = std::exp(-2.0 * abar * tau);
  const double grow = -std::expm1(-2.0 * abar * tau);
  const double g0 = particular(poly, d, abar, 0.0);
  const double gt = particular(poly, d, abar, tau);
  return decay * params.center + grow * params.source * (0.5 / abar) + (gt - decay * g0);
}

double asymptotic_limit(const DiffusionUpdateParams& params, const NeighborPolynomial& poly,
                        double d, int order) {
  const double u_end = order == 0 ? poly.a[0] : poly(poly.dt);
  return (d / params.abar) * u_end * 0.5;
}

namespace {

// Index layout shared by the 1D and 2D field steps.
struct Lattice {
  std::size_t nx = 0, ny = 1;
  double wx = 0.0, wy = 0.0;  // 1/dx^2, 1/dy^2
  std::vector<std::size_t> interior;

  double neighbor_sum(const std::vector<double>& v, std::size_t k) const {
    double s = wx * (v[k - 1] + v[k + 1]);
    if (ny > 1) s += wy * (v[k - nx] + v[k + nx]);
    return s;
  }
};

struct NodeData {
  std::vector<double> d, abar, source;
};

[[noreturn]] void non_finite(std::size_t node, int iteration) {
  std::ostringstream msg;
  msg << "non-finite value at node " << node << " in corrector iteration " << iteration;
  throw NumericalError(msg.str());
}

double node_update(const NodeData& nd, std::size_t m, double center, const NeighborPolynomial& p,
                   double tau) {
  if (nd.abar[m] > 0.0)
    return closed_form_update({nd.abar[m], nd.source[m], center}, p, nd.d[m], tau);
  return center + nd.source[m] * tau;
}

std::vector<double> march(const Lattice& lat, const std::vector<double>& u, const NodeData& nd,
                          const SchemeConfig& cfg, double dt, CorrectorStats* stats) {
  const std::size_t m_count = lat.interior.size();
  const int order = cfg.order;
  std::vector<double> u0(m_count);
  for (std::size_t m = 0; m < m_count; ++m) u0[m] = lat.neighbor_sum(u, lat.interior[m]);

  std::vector<double> out = u;
  if (stats) *stats = {};
  if (order == 0) {
    parallel_for(m_count, [&](std::size_t b, std::size_t e) {
      for (std::size_t m = b; m < e; ++m) {
        const std::size_t k = lat.interior[m];
        const double v = node_update(nd, m, u[k], NeighborPolynomial::constant(u0[m], dt), dt);
        if (!std::isfinite(v)) non_finite(k, 0);
        out[k] = v;
      }
    });
    return out;
  }

  const auto times = sampling_nodes(order, dt, cfg.sampling);
  const DenseMatrix mbar = normalized_vandermonde_inverse(order, cfg.sampling);
  const std::size_t ns = times.size();

  // Neighbor sums of each sampled field, [sample][interior node].
  std::vector<std::vector<double>> usamp(ns, std::vector<double>(m_count));
  usamp[0] = u0;
  std::vector<NeighborPolynomial> poly(m_count);
  std::vector<double> work = u;

  auto sample = [&](int iteration, bool predictor) {
    for (std::size_t k = 1; k < ns; ++k) {
      parallel_for(m_count, [&](std::size_t b, std::size_t e) {
        for (std::size_t m = b; m < e; ++m) {
          const std::size_t node = lat.interior[m];
          const NeighborPolynomial p =
              predictor ? NeighborPolynomial::constant(u0[m], dt) : poly[m];
          const double v = node_update(nd, m, u[node], p, times[k]);
          if (!std::isfinite(v)) non_finite(node, iteration);
          work[node] = v;
        }
      });
      parallel_for(m_count, [&](std::size_t b, std::size_t e) {
        for (std::size_t m = b; m < e; ++m) usamp[k][m] = lat.neighbor_sum(work, lat.interior[m]);
      });
    }
  };

  auto fit = [&] {
    parallel_for(m_count, [&](std::size_t b, std::size_t e) {
      for (std::size_t m = b; m < e; ++m) {
        NeighborPolynomial& p = poly[m];
        p.order = order;
        p.dt = dt;
        double scale = 1.0;
        for (int r = 0; r <= order; ++r) {
          double acc = 0.0;
          for (std::size_t c = 0; c < ns; ++c) acc += mbar(r, c) * usamp[c][m];
          p.a[r] = acc * scale;
          scale /= dt;
        }
      }
    });
  };

  auto final_values = [&](std::vector<double>& dst, int iteration) {
    parallel_for(m_count, [&](std::size_t b, std::size_t e) {
      for (std::size_t m = b; m < e; ++m) {
        const double v = node_update(nd, m, u[lat.interior[m]], poly[m], dt);
        if (!std::isfinite(v)) non_finite(lat.interior[m], iteration);
        dst[m] = v;
      }
    });
  };

  sample(0, true);
  fit();
  std::vector<double> prev(m_count), next(m_count);
  final_values(prev, 0);

  for (int it = 1; it <= cfg.corrector_cap; ++it) {
    sample(it, false);
    fit();
    final_values(next, it);
    double change = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) change = std::max(change, std::abs(next[m] - prev[m]));
    prev.swap(next);
    if (stats) {
      stats->iterations = it;
      stats->last_change = change;
      stats->changes.push_back(change);
    }
    if (change < cfg.tolerance) break;
  }

  for (std::size_t m = 0; m < m_count; ++m) out[lat.interior[m]] = prev[m];
  return out;
}

}  // namespace

Field1D predictor_corrector_step(const Field1D& field, const DiffusionModel& model,
                                 const Source1D& f, const SchemeConfig& cfg, double t, double dt,
                                 CorrectorStats* stats) {
  validate(cfg);
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  Field1D in = field;
  apply_dirichlet(in);
  const Grid1D& g = in.grid;

  Lattice lat;
  lat.nx = g.nx;
  lat.wx = 1.0 / (g.dx * g.dx);
  for (std::size_t i = 1; i + 1 < g.nx; ++i) lat.interior.push_back(i);

  NodeData nd;
  nd.d.resize(lat.interior.size());
  nd.abar.resize(lat.interior.size());
  nd.source.resize(lat.interior.size());
  for (std::size_t m = 0; m < lat.interior.size(); ++m) {
    const std::size_t i = lat.interior[m];
    nd.d[m] = model(in.u[i]);
    nd.abar[m] = nd.d[m] * lat.wx;
    nd.source[m] = f ? f(g.x(i), t, in.u[i]) : 0.0;
  }

  Field1D out = in;
  out.u = march(lat, in.u, nd, cfg, dt, stats);
  apply_dirichlet(out);
  return out;
}

Field2D predictor_corrector_step(const Field2D& field, const DiffusionModel& model,
                                 const Source2D& f, const SchemeConfig& cfg, double t, double dt,
                                 CorrectorStats* stats) {
  validate(cfg);
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  Field2D in = field;
  apply_dirichlet(in);
  const Grid2D& g = in.grid;

  Lattice lat;
  lat.nx = g.nx;
  lat.ny = g.ny;
  lat.wx = 1.0 / (g.dx * g.dx);
  lat.wy = 1.0 / (g.dy * g.dy);
  for (std::size_t j = 1; j + 1 < g.ny; ++j)
    for (std::size_t i = 1; i + 1 < g.nx; ++i) lat.interior.push_back(g.index(i, j));

  NodeData nd;
  const std::size_t n = lat.interior.size();
  nd.d.resize(n);
  nd.abar.resize(n);
  nd.source.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t k = lat.interior[m];
    nd.d[m] = model(in.u[k]);
    nd.abar[m] = nd.d[m] * (lat.wx + lat.wy);
    nd.source[m] = f ? f(g.x(g.col(k)), g.y(g.row(k)), t, in.u[k]) : 0.0;
  }

  Field2D out = in;
  out.u = march(lat, in.u, nd, cfg, dt, stats);
  apply_dirichlet(out);
  return out;
}

double wave_advection_update(double u, double u_left, double u_right, double c, double dx,
                             double dt, bool literal_b) {
  if (c == 0.0) return u;
  const double a = 2.0 * c * c / (dx * dx);
  const double b = (literal_b ? 1.0 : c * c) * (u_left + u_right) / (dx * dx);
  const double sqrt_a = std::sqrt(a);
  const double theta = dt * sqrt_a;
  const double du0 = -c * (u_right - u_left) / (2.0 * dx);
  const double ba = b / a;
  return (u - ba) * std::cos(theta) + du0 / sqrt_a * std::sin(theta) + ba;
}

double nonsplit_switching_update(double u, double u_left, double u_right, double c, double d,
                                 double dx, double dt) {
  if (!(d > 0.0)) throw ValidationError("nonsplit_switching_update requires D > 0");
  const double diff = d / (dx * dx);
  double a, b;
  if (c > 0.0) {
    a = -2.0 * diff - c / dx;
    b = diff * (u_left + u_right) + c * u_left / dx;
  } else {
    a = -2.0 * diff + c / dx;
    b = diff * (u_left + u_right) - c * u_right / dx;
  }
  const double ba = b / a;
  return -ba + (ba + u) * std::exp(a * dt);
}

}  // namespace dirode
