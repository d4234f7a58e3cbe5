#include "bgk/characteristics.hpp"

#include <cmath>

namespace bgk {

double exact_uncollided_oracle(double x, double v, double t, double t_n,
                               const std::function<double(double)>& initial,
                               const std::function<double(double)>& inflow, double epsilon,
                               double x_left, double x_right) {
    const double elapsed = t - t_n;
    if (v == 0.0) return std::exp(-elapsed / epsilon) * initial(x);
    // time at which the characteristic through (x, t) crossed the upwind boundary
    const double travel = v > 0.0 ? (x - x_left) / v : (x_right - x) / -v;
    const double t_star = t - travel;
    if (t_star > t_n) return std::exp(-(t - t_star) / epsilon) * inflow(t_star);
    return std::exp(-elapsed / epsilon) * initial(x - v * elapsed);
}

} // namespace bgk
