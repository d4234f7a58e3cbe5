#pragma once

#include "bgk/basis.hpp"
#include "bgk/mesh.hpp"

#include <span>
#include <vector>

namespace bgk {

/// L2 norm of a - b for two broken polynomials on the same mesh, integrated
/// cell by cell with an (N+2)-point Gauss-Legendre rule.
double l2_error(std::span<const double> a, std::span<const double> b, const SpatialMesh& mesh,
                const DGBasis& basis);

/// Samples a field from another mesh at the nodes of (mesh, basis). Nodes on
/// a cell edge take the trace from inside their own cell.
std::vector<double> sample_at_nodes(std::span<const double> field, const SpatialMesh& field_mesh,
                                    const DGBasis& field_basis, const SpatialMesh& mesh,
                                    const DGBasis& basis);

/// Coarse-versus-fine L2 difference: the fine field is sampled at the coarse
/// nodes and the difference integrated on the coarse mesh.
double l2_error_refined(std::span<const double> coarse, const SpatialMesh& coarse_mesh,
                        const DGBasis& coarse_basis, std::span<const double> fine,
                        const SpatialMesh& fine_mesh, const DGBasis& fine_basis);

/// L1 norm of a - b for broken polynomials on two meshes of the same domain.
/// Integrates over the union of both edge sets, so discontinuities of either
/// field never fall inside a quadrature interval.
double l1_difference(std::span<const double> a, const SpatialMesh& mesh_a, const DGBasis& basis_a,
                     std::span<const double> b, const SpatialMesh& mesh_b, const DGBasis& basis_b);

/// Largest nodal |a - b|.
double linf_error(std::span<const double> a, std::span<const double> b);

/// nu_j = log(e_j / e_{j+1}) / log 2 for consecutive pairs. Mesh sizes must
/// halve at each entry; otherwise ConfigError.
std::vector<double> convergence_order(std::span<const double> errors,
                                      std::span<const double> mesh_sizes);

} // namespace bgk
