#pragma once

#include "bgk/velocity.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bgk {

/// Nodal DG coefficients of the distribution at every discrete velocity,
/// stored velocity-major: index (k, i, l).
struct KineticField {
    std::size_t n_v{};
    std::size_t n_x{};
    std::size_t n_nodes{};
    std::vector<double> values;

    KineticField() = default;
    KineticField(std::size_t nv, std::size_t nx, std::size_t nn, double fill = 0.0)
        : n_v(nv), n_x(nx), n_nodes(nn), values(nv * nx * nn, fill) {}

    std::size_t index(std::size_t k, std::size_t i, std::size_t l) const noexcept {
        return (k * n_x + i) * n_nodes + l;
    }
    double& operator()(std::size_t k, std::size_t i, std::size_t l) noexcept {
        return values[index(k, i, l)];
    }
    double operator()(std::size_t k, std::size_t i, std::size_t l) const noexcept {
        return values[index(k, i, l)];
    }
    /// All cells of velocity k.
    std::span<double> velocity(std::size_t k) noexcept {
        return {values.data() + k * n_x * n_nodes, n_x * n_nodes};
    }
    std::span<const double> velocity(std::size_t k) const noexcept {
        return {values.data() + k * n_x * n_nodes, n_x * n_nodes};
    }
    /// Distance between consecutive velocities at a fixed spatial node.
    std::size_t velocity_stride() const noexcept { return n_x * n_nodes; }
    std::size_t spatial_size() const noexcept { return n_x * n_nodes; }
    bool same_shape(const KineticField& o) const noexcept {
        return n_v == o.n_v && n_x == o.n_x && n_nodes == o.n_nodes;
    }
};

/// Nodal DG coefficients of (rho, m, E), index (component, i, l).
struct MomentField {
    std::size_t n_x{};
    std::size_t n_nodes{};
    std::vector<double> values;

    MomentField() = default;
    MomentField(std::size_t nx, std::size_t nn) : n_x(nx), n_nodes(nn), values(3 * nx * nn, 0.0) {}

    std::size_t index(std::size_t c, std::size_t i, std::size_t l) const noexcept {
        return (c * n_x + i) * n_nodes + l;
    }
    double& operator()(std::size_t c, std::size_t i, std::size_t l) noexcept {
        return values[index(c, i, l)];
    }
    double operator()(std::size_t c, std::size_t i, std::size_t l) const noexcept {
        return values[index(c, i, l)];
    }
    Moments at(std::size_t i, std::size_t l) const noexcept {
        return {(*this)(0, i, l), (*this)(1, i, l), (*this)(2, i, l)};
    }
    void set(std::size_t i, std::size_t l, const Moments& q) noexcept {
        (*this)(0, i, l) = q.rho;
        (*this)(1, i, l) = q.mom;
        (*this)(2, i, l) = q.energy;
    }
    /// Nodal values of one component across all cells.
    std::span<double> component(std::size_t c) noexcept {
        return {values.data() + c * n_x * n_nodes, n_x * n_nodes};
    }
    std::span<const double> component(std::size_t c) const noexcept {
        return {values.data() + c * n_x * n_nodes, n_x * n_nodes};
    }
    bool same_shape(const MomentField& o) const noexcept {
        return n_x == o.n_x && n_nodes == o.n_nodes;
    }
};

/// a += s * b, shapes must agree.
void axpy(KineticField& a, double s, const KineticField& b);
void axpy(MomentField& a, double s, const MomentField& b);

MomentField moment_field(const KineticField& f, const VelocityGrid& grid);

/// Discrete Maxwellian at every node. With allow_vacuum, nodes below the
/// density floor get zero instead of raising InadmissibleState.
KineticField maxwellian_field(const MomentField& q, const VelocityGrid& grid,
                              bool allow_vacuum = false);

/// In-place minimal-norm projection so that every node of f has moments `target`.
void conservation_fix_field(KineticField& f, const MomentField& target, const VelocityGrid& grid);

bool all_finite(std::span<const double> values) noexcept;

} // namespace bgk
