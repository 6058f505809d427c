#pragma once

#include <functional>

namespace dirode {

// f(x[, y], t, u). An empty function means f = 0.
using Source1D = std::function<double(double x, double t, double u)>;
using Source2D = std::function<double(double x, double y, double t, double u)>;

}  // namespace dirode
