#pragma once

#include "dirode/baselines.hpp"
#include "dirode/characteristics.hpp"
#include "dirode/csv.hpp"
#include "dirode/diffusion_model.hpp"
#include "dirode/errors.hpp"
#include "dirode/grid.hpp"
#include "dirode/linalg.hpp"
#include "dirode/navier_stokes.hpp"
#include "dirode/problems.hpp"
#include "dirode/sadm.hpp"
#include "dirode/spatial_ode.hpp"
#include "dirode/splitting.hpp"
#include "dirode/stochastic.hpp"
#include "dirode/temporal_ode.hpp"
