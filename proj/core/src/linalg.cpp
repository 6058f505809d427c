#include "dirode/linalg.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "dirode/errors.hpp"

namespace dirode {

std::vector<double> dense_solve(DenseMatrix m, std::vector<double> b) {
  const std::size_t n = m.n;
  if (b.size() != n) throw ValidationError("dense_solve: rhs size mismatch");
  double scale = 0.0;
  for (double v : m.a) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(m(r, k)) > std::abs(m(piv, k))) piv = r;
    if (std::abs(m(piv, k)) <= 1e-14 * scale) {
      std::ostringstream msg;
      msg << "dense_solve: singular matrix at column " << k;
      throw NumericalError(msg.str());
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = m(r, k) / m(k, k);
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= m(k, c) * x[c];
    x[k] = s / m(k, k);
  }
  return x;
}

DenseMatrix dense_inverse(const DenseMatrix& m) {
  DenseMatrix inv(m.n);
  for (std::size_t c = 0; c < m.n; ++c) {
    std::vector<double> e(m.n, 0.0);
    e[c] = 1.0;
    const auto col = dense_solve(m, std::move(e));
    for (std::size_t r = 0; r < m.n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

}  // namespace dirode
