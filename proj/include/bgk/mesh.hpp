#pragma once

#include <cstddef>
#include <vector>

namespace bgk {

/// Uniform partition of [x_left, x_right] into n_cells cells.
struct SpatialMesh {
    double x_left{};
    double x_right{};
    std::size_t n_cells{};
    std::vector<double> edges;
    std::vector<double> widths;
    std::vector<double> centers;

    double length() const noexcept { return x_right - x_left; }
    double min_width() const noexcept;
    /// Physical position of reference coordinate xi in cell i.
    double map_to_physical(std::size_t i, double xi) const noexcept {
        return centers[i] + 0.5 * widths[i] * xi;
    }
};

/// Throws ConfigError on a degenerate domain or zero cells.
SpatialMesh build_mesh(double x_left, double x_right, std::size_t n_cells);

} // namespace bgk
