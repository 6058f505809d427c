#pragma once

#include "dirode/diffusion_model.hpp"
#include "dirode/grid.hpp"

namespace dirode {

// Backward Euler with lambda_i = D(u_i^n) dt / dx^2, one TDMA solve.
Field1D classic_implicit_step_1d(const Field1D& field, const DiffusionModel& model, double dt);

// Forward Euler / central space; stable only for lambda <= 1/2.
Field1D ftcs_step_1d(const Field1D& field, double d, double dt);

}  // namespace dirode
