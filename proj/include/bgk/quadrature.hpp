#pragma once

#include <vector>

namespace bgk {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Legendre polynomial P_n(x) and its derivative.
struct LegendreValue {
    double p;
    double dp;
};
LegendreValue legendre(int n, double x);

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending. Exact to degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Lobatto rule on [-1, 1] (endpoints included), nodes ascending.
/// n = 1 returns the midpoint rule {0} with weight 2.
QuadratureRule gauss_lobatto(int n);

} // namespace bgk
