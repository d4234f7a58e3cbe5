#include "bgk/mesh.hpp"

#include "bgk/errors.hpp"

#include <algorithm>
#include <string>

namespace bgk {

double SpatialMesh::min_width() const noexcept {
    return *std::min_element(widths.begin(), widths.end());
}

SpatialMesh build_mesh(double x_left, double x_right, std::size_t n_cells) {
    if (!(x_left < x_right))
        throw ConfigError("build_mesh: degenerate domain [" + std::to_string(x_left) + ", " +
                          std::to_string(x_right) + "]");
    if (n_cells == 0) throw ConfigError("build_mesh: n_cells must be positive");

    SpatialMesh mesh;
    mesh.x_left = x_left;
    mesh.x_right = x_right;
    mesh.n_cells = n_cells;
    mesh.edges.resize(n_cells + 1);
    const double h = (x_right - x_left) / static_cast<double>(n_cells);
    for (std::size_t i = 0; i <= n_cells; ++i)
        mesh.edges[i] = x_left + h * static_cast<double>(i);
    mesh.edges.back() = x_right;
    mesh.widths.assign(n_cells, h);
    mesh.centers.resize(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i)
        mesh.centers[i] = x_left + h * (static_cast<double>(i) + 0.5);
    return mesh;
}

} // namespace bgk
