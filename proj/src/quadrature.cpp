#include "bgk/quadrature.hpp"

#include "bgk/errors.hpp"

#include <cmath>
#include <numbers>

namespace bgk {

LegendreValue legendre(int n, double x) {
    if (n == 0) return {1.0, 0.0};
    double p_prev = 1.0;
    double p = x;
    double dp_prev = 0.0;
    double dp = 1.0;
    for (int k = 2; k <= n; ++k) {
        const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        const double dp_next = dp_prev + (2.0 * k - 1.0) * p;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    return {p, dp};
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw ConfigError("gauss_legendre: need at least one point");
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(n, x).dp;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_lobatto(int n) {
    if (n < 1) throw ConfigError("gauss_lobatto: need at least one point");
    if (n == 1) return {{0.0}, {2.0}};
    const int degree = n - 1;
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    rule.nodes.front() = -1.0;
    rule.nodes.back() = 1.0;
    // interior nodes are the roots of P'_degree; Newton using the Legendre ODE for P''
    for (int j = 1; j < degree; ++j) {
        double x = -std::cos(std::numbers::pi * j / degree);
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(degree, x);
            const double d2p = (2.0 * x * dp - degree * (degree + 1.0) * p) / (1.0 - x * x);
            const double dx = dp / d2p;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[j] = x;
    }
    for (int j = 0; j < n; ++j) {
        const double p = legendre(degree, rule.nodes[j]).p;
        rule.weights[j] = 2.0 / (degree * (degree + 1.0) * p * p);
    }
    // symmetrize to remove round-off asymmetry
    for (int j = 0; j < n / 2; ++j) {
        const double x = 0.5 * (rule.nodes[n - 1 - j] - rule.nodes[j]);
        const double w = 0.5 * (rule.weights[n - 1 - j] + rule.weights[j]);
        rule.nodes[j] = -x;
        rule.nodes[n - 1 - j] = x;
        rule.weights[j] = w;
        rule.weights[n - 1 - j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace bgk
