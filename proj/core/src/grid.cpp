#include "dirode/grid.hpp"

#include <sstream>

#include "dirode/errors.hpp"

namespace dirode {

Grid1D build_grid_1d(double length, std::size_t nx, double origin) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw ValidationError("grid length must be positive and finite");
  if (nx < 3) {
    std::ostringstream msg;
    msg << "grid needs at least 3 nodes, got " << nx;
    throw ValidationError(msg.str());
  }
  if (!std::isfinite(origin)) throw ValidationError("grid origin must be finite");
  return {length, origin, length / static_cast<double>(nx - 1), nx};
}

Grid2D build_grid_2d(double lx, double ly, std::size_t nx, std::size_t ny, double x0,
                     double y0) {
  const Grid1D gx = build_grid_1d(lx, nx, x0);
  const Grid1D gy = build_grid_1d(ly, ny, y0);
  return {lx, ly, x0, y0, gx.dx, gy.dx, nx, ny};
}

TimeAxis build_time_axis(double horizon, std::size_t nt) {
  if (!(horizon > 0.0)) throw ValidationError("time horizon must be positive");
  if (nt < 2) throw ValidationError("time axis needs at least 2 levels");
  return {horizon, nt, horizon / static_cast<double>(nt - 1)};
}

Dirichlet2D Dirichlet2D::uniform(const Grid2D& g, double value) {
  Dirichlet2D bc;
  bc.south.assign(g.nx, value);
  bc.north.assign(g.nx, value);
  bc.west.assign(g.ny, value);
  bc.east.assign(g.ny, value);
  return bc;
}

void apply_dirichlet(Field1D& field) {
  field.u.front() = field.bc.left;
  field.u.back() = field.bc.right;
}

void apply_dirichlet(Field2D& field) {
  const Grid2D& g = field.grid;
  const Dirichlet2D& bc = field.bc;
  for (std::size_t j = 0; j < g.ny; ++j) {
    field.u[g.index(0, j)] = bc.west[j];
    field.u[g.index(g.nx - 1, j)] = bc.east[j];
  }
  for (std::size_t i = 0; i < g.nx; ++i) {
    field.u[g.index(i, 0)] = bc.south[i];
    field.u[g.index(i, g.ny - 1)] = bc.north[i];
  }
}

void capture_boundary(Field1D& field) {
  field.bc.left = field.u.front();
  field.bc.right = field.u.back();
}

void capture_boundary(Field2D& field) {
  const Grid2D& g = field.grid;
  field.bc = Dirichlet2D::uniform(g, 0.0);
  for (std::size_t j = 0; j < g.ny; ++j) {
    field.bc.west[j] = field.at(0, j);
    field.bc.east[j] = field.at(g.nx - 1, j);
  }
  for (std::size_t i = 0; i < g.nx; ++i) {
    field.bc.south[i] = field.at(i, 0);
    field.bc.north[i] = field.at(i, g.ny - 1);
  }
}

Field1D sample_function(const Grid1D& grid, const std::function<double(double)>& f) {
  Field1D out(grid);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    const double v = f(grid.x(i));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "sampled function is not finite at node " << i << " (x = " << grid.x(i) << ")";
      throw ValidationError(msg.str());
    }
    out.u[i] = v;
  }
  capture_boundary(out);
  return out;
}

Field2D sample_function(const Grid2D& grid, const std::function<double(double, double)>& f) {
  Field2D out(grid);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double v = f(grid.x(i), grid.y(j));
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "sampled function is not finite at node (" << i << ", " << j << ")";
        throw ValidationError(msg.str());
      }
      out.at(i, j) = v;
    }
  }
  capture_boundary(out);
  return out;
}

bool is_boundary(const Grid2D& g, std::size_t i, std::size_t j) {
  return i == 0 || j == 0 || i + 1 == g.nx || j + 1 == g.ny;
}

}  // namespace dirode
