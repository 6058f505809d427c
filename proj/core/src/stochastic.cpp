#include "dirode/stochastic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dirode/errors.hpp"
#include "dirode/parallel.hpp"

namespace dirode {

namespace {

void check_dist(const UniformDiffusion& dist) {
  if (!(dist.lower > 0.0)) throw ValidationError("uniform diffusion needs a positive lower bound");
  if (!(dist.upper > dist.lower))
    throw ValidationError("uniform diffusion needs upper bound > lower bound");
}

bool degenerate(const UniformDiffusion& dist) {
  return dist.width() <= 1e-12 * dist.upper;
}

// <d^-q>
double mean_inverse_power(int q, const UniformDiffusion& dist) {
  const double w = dist.width();
  if (q == 0) return 1.0;
  if (q == 1) return std::log1p(w / dist.lower) / w;
  const double e = 1.0 - q;
  return (std::pow(dist.upper, e) - std::pow(dist.lower, e)) / (e * w);
}

// <exp(-c d) d^-q>
double mean_decay_inverse_power(int q, double c, const UniformDiffusion& dist) {
  if (q == 0) return mean_decay(c, dist);
  const double w = dist.width();
  if (q == 1)
    return (boost::math::expint(-c * dist.upper) - boost::math::expint(-c * dist.lower)) / w;
  // Normalized so the integrand is O(1) at the lower bound.
  const double lo = dist.lower;
  auto integrand = [c, q, lo](double d) { return std::exp(-c * (d - lo)) * std::pow(d / lo, -q); };
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, lo, dist.upper, 15, 1e-13, &err);
  if (!(err <= 1e-10 * std::max(1.0, std::abs(value))) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "quadrature did not converge: achieved error estimate " << err;
    throw NumericalError(msg.str());
  }
  return std::exp(-c * lo) * std::pow(lo, -q) * value / w;
}

}  // namespace

double mean_decay(double c, const UniformDiffusion& dist) {
  const double cw = c * dist.width();
  if (cw == 0.0) return std::exp(-c * dist.lower);
  return std::exp(-c * dist.lower) * (-std::expm1(-cw)) / cw;
}

double expected_update_p0(double u, double neighbors, double unit_abar,
                          const UniformDiffusion& dist, double dt) {
  check_dist(dist);
  if (!(unit_abar > 0.0) || !(dt > 0.0))
    throw ValidationError("expected_update_p0 needs positive abar and dt");
  const double steady = neighbors / (2.0 * unit_abar);
  return (u - steady) * mean_decay(2.0 * unit_abar * dt, dist) + steady;
}

double deterministic_update(double u, const NeighborPolynomial& poly, double s, double unit_abar,
                            double d, double dt) {
  if (d == 0.0) return u + s * dt;
  return closed_form_update({d * unit_abar, s, u}, poly, d, dt);
}

double expected_update_pk(double u, const NeighborPolynomial& poly, double s, double unit_abar,
                          const UniformDiffusion& dist, double dt) {
  if (poly.order > 4) throw ValidationError("expected_update_pk supports P <= 4");
  if (!(unit_abar > 0.0) || !(dt > 0.0))
    throw ValidationError("expected_update_pk needs positive abar and dt");
  if (!(dist.lower > 0.0) || dist.upper < dist.lower)
    throw ValidationError("uniform diffusion needs 0 < lower <= upper");
  if (degenerate(dist)) return deterministic_update(u, poly, s, unit_abar, dist.lower, dt);
  if (poly.order == 0 && s == 0.0) return expected_update_p0(u, poly.a[0], unit_abar, dist, dt);

  // u(dt; d) = E (u - s/k - G_d(0)) + G_d(dt) + s/k, k = 2 d abar,
  // G_d(tau) = (1/2abar) sum_q (-1/2abar)^q d^-q U^(q)(tau).
  const double c = 2.0 * unit_abar * dt;
  const double r = 0.5 / unit_abar;
  double result = u * mean_decay(c, dist);
  result += s * r * (mean_inverse_power(1, dist) - mean_decay_inverse_power(1, c, dist));
  double coef = r;
  for (int q = 0; q <= poly.order; ++q) {
    result += coef * (poly.derivative(q, dt) * mean_inverse_power(q, dist) -
                      poly.derivative(q, 0.0) * mean_decay_inverse_power(q, c, dist));
    coef *= -r;
  }
  return result;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t label) {
  return splitmix64(master ^ splitmix64(label));
}

MonteCarloResult monte_carlo_expectation(const std::function<double(double)>& update,
                                         const UniformDiffusion& dist, std::size_t samples,
                                         std::uint64_t seed) {
  if (samples < 2) throw ValidationError("Monte Carlo needs at least 2 samples");
  if (dist.upper < dist.lower) throw ValidationError("uniform diffusion bounds reversed");
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  struct Partial {
    double n = 0.0, mean = 0.0, m2 = 0.0;
  };
  std::vector<Partial> parts(chunks);
  auto run_chunk = [&](std::size_t c) {
    std::mt19937_64 rng(derive_seed(seed, c));
    const std::size_t count = std::min(kChunk, samples - c * kChunk);
    Partial p;
    for (std::size_t k = 0; k < count; ++k) {
      const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double d = dist.lower + dist.width() * unit;
      const double v = update(d);
      p.n += 1.0;
      const double delta = v - p.mean;
      p.mean += delta / p.n;
      p.m2 += delta * (v - p.mean);
    }
    parts[c] = p;
  };
  parallel_for(
      chunks,
      [&](std::size_t b, std::size_t e) {
        for (std::size_t c = b; c < e; ++c) run_chunk(c);
      },
      kChunk);
  Partial total;
  for (const auto& p : parts) {
    if (p.n == 0.0) continue;
    const double n = total.n + p.n;
    const double delta = p.mean - total.mean;
    total.mean += delta * p.n / n;
    total.m2 += p.m2 + delta * delta * total.n * p.n / n;
    total.n = n;
  }
  const double var = total.m2 / (total.n - 1.0);
  return {total.mean, std::sqrt(var / total.n), samples};
}

double average_error_metric(const std::vector<double>& expected, const std::vector<double>& exact,
                            double length) {
  if (expected.size() != exact.size() || expected.size() < 2)
    throw ValidationError("average_error_metric: grid mismatch");
  if (!(length > 0.0)) throw ValidationError("average_error_metric: length must be positive");
  const double h = length / static_cast<double>(expected.size() - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double w = (i == 0 || i + 1 == expected.size()) ? 0.5 : 1.0;
    acc += w * std::abs(expected[i] - exact[i]);
  }
  return acc * h / length;
}

}  // namespace dirode
