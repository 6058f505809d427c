#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace dirode {

struct Grid1D {
  double length = 0.0;
  double origin = 0.0;
  double dx = 0.0;
  std::size_t nx = 0;

  double x(std::size_t i) const { return std::fma(static_cast<double>(i), dx, origin); }
  std::size_t size() const { return nx; }
};

struct Grid2D {
  double lx = 0.0, ly = 0.0;
  double x0 = 0.0, y0 = 0.0;
  double dx = 0.0, dy = 0.0;
  std::size_t nx = 0, ny = 0;

  double x(std::size_t i) const { return std::fma(static_cast<double>(i), dx, x0); }
  double y(std::size_t j) const { return std::fma(static_cast<double>(j), dy, y0); }
  std::size_t size() const { return nx * ny; }
  // Row-major, j (y) outer and i (x) inner.
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  std::size_t col(std::size_t k) const { return k % nx; }
  std::size_t row(std::size_t k) const { return k / nx; }
};

struct TimeAxis {
  double horizon = 0.0;
  std::size_t nt = 0;
  double dt = 0.0;

  std::size_t steps() const { return nt - 1; }
  double t(std::size_t n) const { return static_cast<double>(n) * dt; }
};

Grid1D build_grid_1d(double length, std::size_t nx, double origin = 0.0);
Grid2D build_grid_2d(double lx, double ly, std::size_t nx, std::size_t ny, double x0 = 0.0,
                     double y0 = 0.0);
TimeAxis build_time_axis(double horizon, std::size_t nt);

struct Dirichlet1D {
  double left = 0.0;
  double right = 0.0;
};

// Face values. south/north hold nx entries (j = 0, j = ny-1), west/east hold ny
// entries (i = 0, i = nx-1). Rows are written last, so corners come from them.
struct Dirichlet2D {
  std::vector<double> south, north, west, east;

  static Dirichlet2D uniform(const Grid2D& g, double value);
};

struct Field1D {
  Grid1D grid;
  std::vector<double> u;
  Dirichlet1D bc;

  Field1D() = default;
  explicit Field1D(const Grid1D& g, double fill = 0.0) : grid(g), u(g.nx, fill), bc{fill, fill} {}

  double& operator[](std::size_t i) { return u[i]; }
  double operator[](std::size_t i) const { return u[i]; }
};

struct Field2D {
  Grid2D grid;
  std::vector<double> u;
  Dirichlet2D bc;

  Field2D() = default;
  explicit Field2D(const Grid2D& g, double fill = 0.0)
      : grid(g), u(g.size(), fill), bc(Dirichlet2D::uniform(g, fill)) {}

  double& at(std::size_t i, std::size_t j) { return u[grid.index(i, j)]; }
  double at(std::size_t i, std::size_t j) const { return u[grid.index(i, j)]; }
};

void apply_dirichlet(Field1D& field);
void apply_dirichlet(Field2D& field);

// Sets the boundary spec from the field's current face values.
void capture_boundary(Field1D& field);
void capture_boundary(Field2D& field);

Field1D sample_function(const Grid1D& grid, const std::function<double(double)>& f);
Field2D sample_function(const Grid2D& grid, const std::function<double(double, double)>& f);

bool is_boundary(const Grid2D& g, std::size_t i, std::size_t j);

}  // namespace dirode
