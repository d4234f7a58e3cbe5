#include "bgk/metrics.hpp"

#include "bgk/errors.hpp"
#include "bgk/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace bgk {

double l2_error(std::span<const double> a, std::span<const double> b, const SpatialMesh& mesh,
                const DGBasis& basis) {
    const std::size_t nn = basis.size();
    if (a.size() != mesh.n_cells * nn || b.size() != a.size())
        throw ConfigError("l2_error: fields do not match the mesh; use l2_error_refined");
    const auto rule = gauss_legendre(basis.degree() + 2);
    double sum = 0.0;
    for (std::size_t i = 0; i < mesh.n_cells; ++i) {
        double cell = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double d = basis.interpolate(a.subspan(i * nn, nn), rule.nodes[q]) -
                             basis.interpolate(b.subspan(i * nn, nn), rule.nodes[q]);
            cell += rule.weights[q] * d * d;
        }
        sum += 0.5 * mesh.widths[i] * cell;
    }
    return std::sqrt(sum);
}

std::vector<double> sample_at_nodes(std::span<const double> field, const SpatialMesh& field_mesh,
                                    const DGBasis& field_basis, const SpatialMesh& mesh,
                                    const DGBasis& basis) {
    const std::size_t fn = field_basis.size();
    if (field.size() != field_mesh.n_cells * fn)
        throw ConfigError("sample_at_nodes: field does not match its mesh");
    std::vector<double> out(mesh.n_cells * basis.size());
    for (std::size_t i = 0; i < mesh.n_cells; ++i) {
        for (std::size_t l = 0; l < basis.size(); ++l) {
            const double x = mesh.map_to_physical(i, basis.nodes()[l]);
            // nudge toward the centre so edge nodes read their own side
            const double probe = x + 1e-9 * mesh.widths[i] * (mesh.centers[i] > x ? 1.0 : -1.0);
            const std::size_t j = locate_cell(field_mesh, std::clamp(probe, field_mesh.x_left,
                                                                     field_mesh.x_right));
            const double xi = std::clamp(2.0 * (x - field_mesh.centers[j]) / field_mesh.widths[j],
                                         -1.0, 1.0);
            out[i * basis.size() + l] = field_basis.interpolate(field.subspan(j * fn, fn), xi);
        }
    }
    return out;
}

double l2_error_refined(std::span<const double> coarse, const SpatialMesh& coarse_mesh,
                        const DGBasis& coarse_basis, std::span<const double> fine,
                        const SpatialMesh& fine_mesh, const DGBasis& fine_basis) {
    const auto sampled = sample_at_nodes(fine, fine_mesh, fine_basis, coarse_mesh, coarse_basis);
    return l2_error(coarse, sampled, coarse_mesh, coarse_basis);
}

double l1_difference(std::span<const double> a, const SpatialMesh& mesh_a, const DGBasis& basis_a,
                     std::span<const double> b, const SpatialMesh& mesh_b, const DGBasis& basis_b) {
    if (a.size() != mesh_a.n_cells * basis_a.size() || b.size() != mesh_b.n_cells * basis_b.size())
        throw ConfigError("l1_difference: field does not match its mesh");
    const double scale = std::max(1.0, std::abs(mesh_a.length()));
    if (std::abs(mesh_a.x_left - mesh_b.x_left) > 1e-12 * scale ||
        std::abs(mesh_a.x_right - mesh_b.x_right) > 1e-12 * scale)
        throw ConfigError("l1_difference: meshes cover different domains");
    std::vector<double> cuts(mesh_a.edges);
    cuts.insert(cuts.end(), mesh_b.edges.begin(), mesh_b.edges.end());
    std::sort(cuts.begin(), cuts.end());
    const auto rule = gauss_legendre(std::max(basis_a.degree(), basis_b.degree()) + 2);
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        const double lo = cuts[j], hi = cuts[j + 1];
        if (hi - lo <= 1e-14 * scale) continue;
        double piece = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[q];
            piece += rule.weights[q] * std::abs(evaluate_field(a, x, mesh_a, basis_a) -
                                                evaluate_field(b, x, mesh_b, basis_b));
        }
        sum += 0.5 * (hi - lo) * piece;
    }
    return sum;
}

double linf_error(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ConfigError("linf_error: size mismatch");
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

std::vector<double> convergence_order(std::span<const double> errors,
                                      std::span<const double> mesh_sizes) {
    if (errors.size() < 2 || errors.size() != mesh_sizes.size())
        throw ConfigError("convergence_order: need at least two (h, error) pairs");
    std::vector<double> orders;
    for (std::size_t j = 0; j + 1 < errors.size(); ++j) {
        const double ratio = mesh_sizes[j] / mesh_sizes[j + 1];
        if (std::abs(ratio - 2.0) > 1e-9)
            throw ConfigError("convergence_order: mesh sizes must halve between entries");
        orders.push_back(std::log(errors[j] / errors[j + 1]) / std::log(2.0));
    }
    return orders;
}

} // namespace bgk
