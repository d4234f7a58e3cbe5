#include "bgk/basis.hpp"

#include "bgk/errors.hpp"
#include "bgk/quadrature.hpp"

#include <algorithm>
#include <string>

namespace bgk {

DGBasis::DGBasis(int degree) : degree_(degree) {
    if (degree < 0) throw ConfigError("DGBasis: negative degree");
    auto rule = gauss_lobatto(degree + 1);
    nodes_ = std::move(rule.nodes);
    weights_ = std::move(rule.weights);
}

double DGBasis::lagrange(std::size_t l, double xi) const noexcept {
    double value = 1.0;
    for (std::size_t m = 0; m < nodes_.size(); ++m) {
        if (m == l) continue;
        value *= (xi - nodes_[m]) / (nodes_[l] - nodes_[m]);
    }
    return value;
}

double DGBasis::lagrange_derivative(std::size_t l, double xi) const noexcept {
    double sum = 0.0;
    for (std::size_t m = 0; m < nodes_.size(); ++m) {
        if (m == l) continue;
        double term = 1.0 / (nodes_[l] - nodes_[m]);
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            if (j == l || j == m) continue;
            term *= (xi - nodes_[j]) / (nodes_[l] - nodes_[j]);
        }
        sum += term;
    }
    return sum;
}

double DGBasis::interpolate(std::span<const double> coefficients, double xi) const noexcept {
    double value = 0.0;
    for (std::size_t l = 0; l < nodes_.size(); ++l) value += coefficients[l] * lagrange(l, xi);
    return value;
}

DGBasis build_basis(int degree) { return DGBasis(degree); }

ElementMatrices element_matrices(const DGBasis& basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    // (N+2)-point Gauss-Legendre is exact to degree 2N+3
    const auto rule = gauss_legendre(basis.degree() + 2);

    ElementMatrices m;
    m.J = Eigen::MatrixXd::Zero(n, n);
    m.K = Eigen::MatrixXd::Zero(n, n);
    m.mean_weights = Eigen::VectorXd::Zero(n);
    m.slope_weights = Eigen::VectorXd::Zero(n);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double xi = rule.nodes[q];
        const double w = rule.weights[q];
        for (Eigen::Index l = 0; l < n; ++l) {
            const double pl = basis.lagrange(l, xi);
            const double dpl = basis.lagrange_derivative(l, xi);
            m.mean_weights(l) += 0.5 * w * pl;
            m.slope_weights(l) += 1.5 * w * pl * xi;
            for (Eigen::Index k = 0; k < n; ++k) {
                const double pk = basis.lagrange(k, xi);
                m.J(l, k) += w * pl * pk;
                m.K(l, k) += w * dpl * pk;
            }
        }
    }

    const Eigen::Index first = 0;
    const Eigen::Index last = n - 1;
    m.L1 = Eigen::MatrixXd::Zero(n, n);
    m.L2 = Eigen::MatrixXd::Zero(n, n);
    m.L3 = Eigen::MatrixXd::Zero(n, n);
    m.L4 = Eigen::MatrixXd::Zero(n, n);
    m.L1(last, last) = 1.0;
    m.L2(first, last) = 1.0;
    m.L3(last, first) = 1.0;
    m.L4(first, first) = 1.0;

    m.J_inv = m.J.inverse();
    m.J_inv_K = m.J_inv * m.K;
    m.lift_first = m.J_inv.col(first);
    m.lift_last = m.J_inv.col(last);
    return m;
}

std::size_t locate_cell(const SpatialMesh& mesh, double x) {
    if (!(x >= mesh.x_left && x <= mesh.x_right))
        throw DomainError("evaluate_field: x = " + std::to_string(x) + " outside [" +
                          std::to_string(mesh.x_left) + ", " + std::to_string(mesh.x_right) + "]");
    const auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), x);
    const auto idx = static_cast<std::size_t>(it - mesh.edges.begin());
    return idx == 0 ? 0 : std::min(idx - 1, mesh.n_cells - 1);
}

double evaluate_field(std::span<const double> coefficients, double x, const SpatialMesh& mesh,
                      const DGBasis& basis) {
    const std::size_t i = locate_cell(mesh, x);
    const double xi = std::clamp(2.0 * (x - mesh.centers[i]) / mesh.widths[i], -1.0, 1.0);
    return basis.interpolate(coefficients.subspan(i * basis.size(), basis.size()), xi);
}

} // namespace bgk
