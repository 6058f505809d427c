#include "dirode/characteristics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dirode/errors.hpp"
#include "dirode/parallel.hpp"

namespace dirode {

namespace {

double central_or_one_sided(const std::vector<double>& u, std::size_t k, std::size_t stride,
                            std::size_t pos, std::size_t n, double h) {
  if (pos == 0) return (u[k + stride] - u[k]) / h;
  if (pos + 1 == n) return (u[k] - u[k - stride]) / h;
  return (u[k + stride] - u[k - stride]) / (2.0 * h);
}

void check_order(int order) {
  if (order < 1 || order > 3) throw ValidationError("characteristic trace order must be 1..3");
}

std::array<double, 4> lagrange4(double p) {
  // Nodes at 0, 1, 2, 3.
  return {-(p - 1.0) * (p - 2.0) * (p - 3.0) / 6.0, p * (p - 2.0) * (p - 3.0) / 2.0,
          -p * (p - 1.0) * (p - 3.0) / 2.0, p * (p - 1.0) * (p - 2.0) / 6.0};
}

struct Bracket {
  std::size_t k;  // left node of the cell
  double s;       // local coordinate in [0, 1]
};

Bracket locate(double x, double origin, double h, std::size_t n) {
  double r = (x - origin) / h;
  const double nearest = std::round(r);
  if (std::abs(r - nearest) <= 1e-12 * std::max(1.0, std::abs(r))) r = nearest;
  long k = static_cast<long>(std::floor(r));
  k = std::clamp(k, 0L, static_cast<long>(n) - 2);
  return {static_cast<std::size_t>(k), r - static_cast<double>(k)};
}

std::size_t cubic_base(std::size_t k, std::size_t n) {
  const long b = std::clamp(static_cast<long>(k) - 1, 0L, static_cast<long>(n) - 4);
  return static_cast<std::size_t>(b);
}

double face_value(const std::vector<double>& face, double coord, double origin, double h) {
  const Bracket b = locate(coord, origin, h, face.size());
  const double s = std::clamp(b.s, 0.0, 1.0);
  return (1.0 - s) * face[b.k] + s * face[b.k + 1];
}

// Series terms of the backward flow X' = -V(X): -V h, (JV) h^2/2, -(JJV + H[V,V]) h^3/6.
template <class Vel>
std::array<double, 2> series_foot(const Vel& v, std::array<double, 2> x, double h, int order,
                                  int dims) {
  auto norm = [&](const std::array<double, 2>& w) {
    return dims == 1 ? std::abs(w[0]) : std::hypot(w[0], w[1]);
  };
  auto scale = [&](const std::array<double, 2>& p) {
    return std::max(1.0, dims == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]));
  };
  auto shifted = [&](const std::array<double, 2>& p, const std::array<double, 2>& u, double d) {
    return std::array<double, 2>{p[0] + d * u[0], p[1] + d * u[1]};
  };
  auto jac_dir = [&](const std::array<double, 2>& p, const std::array<double, 2>& w) {
    const double len = norm(w);
    if (len == 0.0) return std::array<double, 2>{0.0, 0.0};
    const std::array<double, 2> unit{w[0] / len, w[1] / len};
    const double d = 1e-5 * scale(p);
    const auto vp = v(shifted(p, unit, d));
    const auto vm = v(shifted(p, unit, -d));
    return std::array<double, 2>{len * (vp[0] - vm[0]) / (2.0 * d),
                                 len * (vp[1] - vm[1]) / (2.0 * d)};
  };
  auto hess_dir = [&](const std::array<double, 2>& p, const std::array<double, 2>& w) {
    const double len = norm(w);
    if (len == 0.0) return std::array<double, 2>{0.0, 0.0};
    const std::array<double, 2> unit{w[0] / len, w[1] / len};
    const double d = 1e-4 * scale(p);
    const auto vp = v(shifted(p, unit, d));
    const auto v0 = v(p);
    const auto vm = v(shifted(p, unit, -d));
    const double f = len * len / (d * d);
    return std::array<double, 2>{f * (vp[0] - 2.0 * v0[0] + vm[0]),
                                 f * (vp[1] - 2.0 * v0[1] + vm[1])};
  };

  const auto v0 = v(x);
  std::array<double, 2> foot{x[0] - v0[0] * h, x[1] - v0[1] * h};
  if (order >= 2) {
    const auto jv = jac_dir(x, v0);
    foot[0] += jv[0] * h * h / 2.0;
    foot[1] += jv[1] * h * h / 2.0;
    if (order >= 3) {
      const auto jjv = jac_dir(x, jv);
      const auto hvv = hess_dir(x, v0);
      foot[0] -= (jjv[0] + hvv[0]) * h * h * h / 6.0;
      foot[1] -= (jjv[1] + hvv[1]) * h * h * h / 6.0;
    }
  }
  return foot;
}

}  // namespace

InducedAdvection1D induced_advection(const Field1D& field, const DiffusionModel& model) {
  const Grid1D& g = field.grid;
  InducedAdvection1D out;
  out.cx.assign(g.nx, 0.0);
  if (model.is_constant()) return out;
  for (std::size_t i = 0; i < g.nx; ++i)
    out.cx[i] = -model.derivative(field.u[i]) * central_or_one_sided(field.u, i, 1, i, g.nx, g.dx);
  return out;
}

InducedAdvection2D induced_advection(const Field2D& field, const DiffusionModel& model) {
  const Grid2D& g = field.grid;
  InducedAdvection2D out;
  out.cx.assign(g.size(), 0.0);
  out.cy.assign(g.size(), 0.0);
  if (model.is_constant()) return out;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      const double dd = model.derivative(field.u[k]);
      out.cx[k] = -dd * central_or_one_sided(field.u, k, 1, i, g.nx, g.dx);
      out.cy[k] = -dd * central_or_one_sided(field.u, k, g.nx, j, g.ny, g.dy);
    }
  }
  return out;
}

FootMap1D trace_feet_euler(const Field1D& field, const VelocityField1D& vel, double t,
                           double duration, const InducedAdvection1D* induced) {
  return trace_feet_sadm(field, vel, t, duration, 1, induced);
}

FootMap2D trace_feet_euler(const Field2D& field, const VelocityField2D& vel, double t,
                           double duration, const InducedAdvection2D* induced) {
  return trace_feet_sadm(field, vel, t, duration, 1, induced);
}

FootMap1D trace_feet_sadm(const Field1D& field, const VelocityField1D& vel, double t,
                          double duration, int order, const InducedAdvection1D* induced) {
  check_order(order);
  if (duration < 0.0) throw ValidationError("trace duration must be non-negative");
  const Grid1D& g = field.grid;
  FootMap1D feet;
  feet.x.resize(g.nx);
  for (std::size_t i = 0; i < g.nx; ++i) {
    const double ui = field.u[i];
    const double extra = induced ? induced->cx[i] : 0.0;
    auto v = [&](const std::array<double, 2>& p) {
      return std::array<double, 2>{vel.vx(p[0], t, ui) + extra, 0.0};
    };
    feet.x[i] = series_foot(v, {g.x(i), 0.0}, duration, order, 1)[0];
  }
  return feet;
}

FootMap2D trace_feet_sadm(const Field2D& field, const VelocityField2D& vel, double t,
                          double duration, int order, const InducedAdvection2D* induced) {
  check_order(order);
  if (duration < 0.0) throw ValidationError("trace duration must be non-negative");
  const Grid2D& g = field.grid;
  FootMap2D feet;
  feet.x.resize(g.size());
  feet.y.resize(g.size());
  parallel_for(g.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const double uk = field.u[k];
      const double ex = induced ? induced->cx[k] : 0.0;
      const double ey = induced ? induced->cy[k] : 0.0;
      auto v = [&](const std::array<double, 2>& p) {
        return std::array<double, 2>{vel.vx(p[0], p[1], t, uk) + ex,
                                     vel.vy(p[0], p[1], t, uk) + ey};
      };
      const auto f = series_foot(v, {g.x(g.col(k)), g.y(g.row(k))}, duration, order, 2);
      feet.x[k] = f[0];
      feet.y[k] = f[1];
    }
  });
  return feet;
}

double interpolate(const Field1D& field, double x, Interpolation method) {
  const Grid1D& g = field.grid;
  const double x_end = g.x(g.nx - 1);
  if (x < g.origin) return field.bc.left;
  if (x > x_end) return field.bc.right;
  const Bracket b = locate(x, g.origin, g.dx, g.nx);
  if (b.s == 0.0) return field.u[b.k];
  if (b.s == 1.0) return field.u[b.k + 1];
  const double ul = field.u[b.k], ur = field.u[b.k + 1];
  if (method == Interpolation::linear || g.nx < 4) return (1.0 - b.s) * ul + b.s * ur;
  const std::size_t base = cubic_base(b.k, g.nx);
  const auto w = lagrange4((x - g.x(base)) / g.dx);
  double v = 0.0;
  for (std::size_t m = 0; m < 4; ++m) v += w[m] * field.u[base + m];
  if (method == Interpolation::cubic) v = std::clamp(v, std::min(ul, ur), std::max(ul, ur));
  return v;
}

double interpolate(const Field2D& field, double x, double y, Interpolation method) {
  const Grid2D& g = field.grid;
  const double x_end = g.x(g.nx - 1), y_end = g.y(g.ny - 1);
  const bool out_x = x < g.x0 || x > x_end;
  const bool out_y = y < g.y0 || y > y_end;
  if (out_y) {
    const double xc = std::clamp(x, g.x0, x_end);
    return face_value(y < g.y0 ? field.bc.south : field.bc.north, xc, g.x0, g.dx);
  }
  if (out_x) return face_value(x < g.x0 ? field.bc.west : field.bc.east, y, g.y0, g.dy);

  const Bracket bx = locate(x, g.x0, g.dx, g.nx);
  const Bracket by = locate(y, g.y0, g.dy, g.ny);
  auto on_node = [](double t) { return t == 0.0 || t == 1.0; };
  if (on_node(bx.s) && on_node(by.s))
    return field.at(bx.k + static_cast<std::size_t>(bx.s), by.k + static_cast<std::size_t>(by.s));
  const double u00 = field.at(bx.k, by.k), u10 = field.at(bx.k + 1, by.k);
  const double u01 = field.at(bx.k, by.k + 1), u11 = field.at(bx.k + 1, by.k + 1);
  if (method == Interpolation::linear || g.nx < 4 || g.ny < 4) {
    return (1.0 - bx.s) * (1.0 - by.s) * u00 + bx.s * (1.0 - by.s) * u10 +
           (1.0 - bx.s) * by.s * u01 + bx.s * by.s * u11;
  }
  const std::size_t ib = cubic_base(bx.k, g.nx), jb = cubic_base(by.k, g.ny);
  const auto wx = lagrange4((x - g.x(ib)) / g.dx);
  const auto wy = lagrange4((y - g.y(jb)) / g.dy);
  double v = 0.0;
  for (std::size_t b = 0; b < 4; ++b) {
    double row = 0.0;
    for (std::size_t a = 0; a < 4; ++a) row += wx[a] * field.at(ib + a, jb + b);
    v += wy[b] * row;
  }
  if (method == Interpolation::cubic) {
    const double lo = std::min({u00, u10, u01, u11});
    const double hi = std::max({u00, u10, u01, u11});
    v = std::clamp(v, lo, hi);
  }
  return v;
}

Field1D remap(const Field1D& field, const FootMap1D& feet, Interpolation method) {
  Field1D out = field;
  for (std::size_t i = 0; i < field.grid.nx; ++i) {
    if (!std::isfinite(feet.x[i])) throw NumericalError("remap: non-finite foot");
    out.u[i] = interpolate(field, feet.x[i], method);
  }
  return out;
}

Field2D remap(const Field2D& field, const FootMap2D& feet, Interpolation method) {
  Field2D out = field;
  parallel_for(field.grid.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      if (!std::isfinite(feet.x[k]) || !std::isfinite(feet.y[k]))
        throw NumericalError("remap: non-finite foot");
      out.u[k] = interpolate(field, feet.x[k], feet.y[k], method);
    }
  });
  return out;
}

Field1D advect_step(const Field1D& field, const VelocityField1D& vel, double t, double duration,
                    Interpolation method, int order, const InducedAdvection1D* induced) {
  if (duration == 0.0) return field;
  Field1D out = remap(field, trace_feet_sadm(field, vel, t, duration, order, induced), method);
  apply_dirichlet(out);
  return out;
}

Field2D advect_step(const Field2D& field, const VelocityField2D& vel, double t, double duration,
                    Interpolation method, int order, const InducedAdvection2D* induced) {
  if (duration == 0.0) return field;
  Field2D out = remap(field, trace_feet_sadm(field, vel, t, duration, order, induced), method);
  apply_dirichlet(out);
  return out;
}

}  // namespace dirode
