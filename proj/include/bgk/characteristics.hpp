#pragma once

#include <functional>

namespace bgk {

/// Exact solution of f_t + v f_x = -f/eps on [x_left, x_right] for one
/// velocity, traced back along x - v (t - t_n).
///
/// `initial(x)` is the profile at t_n. `inflow(t)` is the boundary value on
/// the upwind end (left for v > 0, right for v < 0). v = 0 is pure decay.
double exact_uncollided_oracle(double x, double v, double t, double t_n,
                               const std::function<double(double)>& initial,
                               const std::function<double(double)>& inflow, double epsilon,
                               double x_left, double x_right);

} // namespace bgk
