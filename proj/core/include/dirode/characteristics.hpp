#pragma once

#include <functional>
#include <vector>

#include "dirode/diffusion_model.hpp"
#include "dirode/grid.hpp"

namespace dirode {

struct VelocityField1D {
  std::function<double(double x, double t, double u)> vx;
};

struct VelocityField2D {
  std::function<double(double x, double y, double t, double u)> vx;
  std::function<double(double x, double y, double t, double u)> vy;
};

// Nodal velocity corrections -(dD/du) grad u, frozen at t_n.
struct InducedAdvection1D {
  std::vector<double> cx;
};
struct InducedAdvection2D {
  std::vector<double> cx, cy;
};

InducedAdvection1D induced_advection(const Field1D& field, const DiffusionModel& model);
InducedAdvection2D induced_advection(const Field2D& field, const DiffusionModel& model);

struct FootMap1D {
  std::vector<double> x;
};
struct FootMap2D {
  std::vector<double> x, y;
};

enum class Interpolation { linear, cubic, cubic_unlimited };

FootMap1D trace_feet_euler(const Field1D& field, const VelocityField1D& vel, double t,
                           double duration, const InducedAdvection1D* induced = nullptr);
FootMap2D trace_feet_euler(const Field2D& field, const VelocityField2D& vel, double t,
                           double duration, const InducedAdvection2D* induced = nullptr);

// Truncated series of the backward characteristic, k terms (k = 1 is Euler).
FootMap1D trace_feet_sadm(const Field1D& field, const VelocityField1D& vel, double t,
                          double duration, int order, const InducedAdvection1D* induced = nullptr);
FootMap2D trace_feet_sadm(const Field2D& field, const VelocityField2D& vel, double t,
                          double duration, int order, const InducedAdvection2D* induced = nullptr);

// Feet outside the domain take the Dirichlet value of the nearest face.
Field1D remap(const Field1D& field, const FootMap1D& feet, Interpolation method);
Field2D remap(const Field2D& field, const FootMap2D& feet, Interpolation method);

double interpolate(const Field1D& field, double x, Interpolation method);
double interpolate(const Field2D& field, double x, double y, Interpolation method);

Field1D advect_step(const Field1D& field, const VelocityField1D& vel, double t, double duration,
                    Interpolation method, int order = 1,
                    const InducedAdvection1D* induced = nullptr);
Field2D advect_step(const Field2D& field, const VelocityField2D& vel, double t, double duration,
                    Interpolation method, int order = 1,
                    const InducedAdvection2D* induced = nullptr);

}  // namespace dirode
