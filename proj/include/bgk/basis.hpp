#pragma once

#include "bgk/mesh.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace bgk {

/// Nodal Lagrange basis on the Gauss-Lobatto points of [-1, 1].
///
/// Degree 0 uses the single node xi = 0. Node indices run 0..degree; the
/// first node is xi = -1 and the last is xi = +1 for degree >= 1.
class DGBasis {
public:
    explicit DGBasis(int degree);

    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& node_weights() const noexcept { return weights_; }

    /// p_l(xi)
    double lagrange(std::size_t l, double xi) const noexcept;
    /// p_l'(xi)
    double lagrange_derivative(std::size_t l, double xi) const noexcept;
    /// Value at xi of the polynomial with nodal values `coefficients`.
    double interpolate(std::span<const double> coefficients, double xi) const noexcept;

private:
    int degree_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

DGBasis build_basis(int degree);

/// Reference-element matrices shared by every cell and velocity.
///
///   J(l, m)  = int p_l p_m
///   K(l, m)  = int p_l' p_m          (so K + K^T = L1 - L4)
///   L1 = e_last e_last^T,  L2 = e_first e_last^T,
///   L3 = e_last e_first^T, L4 = e_first e_first^T
struct ElementMatrices {
    Eigen::MatrixXd J;
    Eigen::MatrixXd K;
    Eigen::MatrixXd L1, L2, L3, L4;
    /// J^{-1}, J^{-1} K and the lifting vectors J^{-1} e_first, J^{-1} e_last.
    Eigen::MatrixXd J_inv;
    Eigen::MatrixXd J_inv_K;
    Eigen::VectorXd lift_first;
    Eigen::VectorXd lift_last;
    /// Weights producing the cell mean (1/2) int u and the Legendre P1
    /// coefficient (3/2) int u xi from nodal values.
    Eigen::VectorXd mean_weights;
    Eigen::VectorXd slope_weights;
};

ElementMatrices element_matrices(const DGBasis& basis);

/// Broken-polynomial field value at physical x. Interior edges take the
/// left-cell trace. `coefficients` is laid out cell-major, n_cells * (N+1).
double evaluate_field(std::span<const double> coefficients, double x, const SpatialMesh& mesh,
                      const DGBasis& basis);

/// Index of the cell containing x (left cell at interior edges).
std::size_t locate_cell(const SpatialMesh& mesh, double x);

} // namespace bgk
