#pragma once

#include <functional>

#include "types.hpp"

namespace qsym::quad {

// Adaptive Simpson on [a, b] with absolute tolerance. Subdivision is forced
// until intervals are narrower than max_panel, so oscillatory integrands
// cannot alias through the coarse/fine error check.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, double max_panel);

}  // namespace qsym::quad
