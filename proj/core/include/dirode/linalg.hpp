#pragma once

#include <cstddef>
#include <vector>

namespace dirode {

// Row-major square matrix.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

// Gaussian elimination with partial pivoting. Throws NumericalError when a
// pivot is exactly zero or negligible against the column scale.
std::vector<double> dense_solve(DenseMatrix m, std::vector<double> b);
DenseMatrix dense_inverse(const DenseMatrix& m);

}  // namespace dirode
