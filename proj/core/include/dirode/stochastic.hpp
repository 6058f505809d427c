#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dirode/temporal_ode.hpp"

namespace dirode {

struct UniformDiffusion {
  double lower = 0.0;
  double upper = 0.0;

  double width() const { return upper - lower; }
  double mid() const { return 0.5 * (lower + upper); }
};

// Mean of exp(-c d) over d ~ U[lower, upper].
double mean_decay(double c, const UniformDiffusion& dist);

// Expected P = 0 update with no source. unit_abar = 1/dx^2 [+ 1/dy^2] and
// neighbors is the weighted sum U, so the steady value is U / (2 unit_abar).
double expected_update_p0(double u, double neighbors, double unit_abar,
                          const UniformDiffusion& dist, double dt);

// Expected P-th order update with frozen source s.
double expected_update_pk(double u, const NeighborPolynomial& poly, double s, double unit_abar,
                          const UniformDiffusion& dist, double dt);

// Deterministic update for one diffusivity draw, same conventions as above.
double deterministic_update(double u, const NeighborPolynomial& poly, double s, double unit_abar,
                            double d, double dt);

struct MonteCarloResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

// Draws are made in fixed chunks, each with its own generator seeded from
// (seed, chunk index), so the result does not depend on the worker count.
MonteCarloResult monte_carlo_expectation(const std::function<double(double)>& update,
                                         const UniformDiffusion& dist, std::size_t samples,
                                         std::uint64_t seed);

double average_error_metric(const std::vector<double>& expected, const std::vector<double>& exact,
                            double length);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t label);

}  // namespace dirode
