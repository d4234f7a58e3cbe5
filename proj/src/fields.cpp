#include "bgk/fields.hpp"

#include "bgk/errors.hpp"

#include <cassert>
#include <cmath>

namespace bgk {

void axpy(KineticField& a, double s, const KineticField& b) {
    assert(a.same_shape(b));
    for (std::size_t j = 0; j < a.values.size(); ++j) a.values[j] += s * b.values[j];
}

void axpy(MomentField& a, double s, const MomentField& b) {
    assert(a.same_shape(b));
    for (std::size_t j = 0; j < a.values.size(); ++j) a.values[j] += s * b.values[j];
}

MomentField moment_field(const KineticField& f, const VelocityGrid& grid) {
    MomentField q(f.n_x, f.n_nodes);
    const std::size_t n = f.spatial_size();
    double* rho = q.values.data();
    double* mom = rho + n;
    double* en = mom + n;
    for (std::size_t k = 0; k < f.n_v; ++k) {
        const double w = grid.weight(k);
        const double wv = w * grid.point(k);
        const double wvv = 0.5 * wv * grid.point(k);
        const double* fk = f.values.data() + k * n;
#pragma omp simd
        for (std::size_t j = 0; j < n; ++j) {
            rho[j] += w * fk[j];
            mom[j] += wv * fk[j];
            en[j] += wvv * fk[j];
        }
    }
    return q;
}

KineticField maxwellian_field(const MomentField& q, const VelocityGrid& grid, bool allow_vacuum) {
    KineticField f(grid.size(), q.n_x, q.n_nodes);
    const std::size_t n = f.spatial_size();
    for (std::size_t i = 0; i < q.n_x; ++i) {
        for (std::size_t l = 0; l < q.n_nodes; ++l) {
            const Moments m = q.at(i, l);
            if (allow_vacuum && is_vacuum(m)) continue;
            const Primitives p = moments_to_primitives(m);
            const std::size_t j = i * q.n_nodes + l;
            for (std::size_t k = 0; k < grid.size(); ++k)
                f.values[k * n + j] = maxwellian_at(p, grid.point(k));
        }
    }
    return f;
}

void conservation_fix_field(KineticField& f, const MomentField& target, const VelocityGrid& grid) {
    const std::size_t n = f.spatial_size();
    std::vector<double> y0(n), y1(n), y2(n);
    for (int pass = 0; pass < 2; ++pass) {
        const MomentField current = moment_field(f, grid);
        for (std::size_t i = 0; i < f.n_x; ++i) {
            for (std::size_t l = 0; l < f.n_nodes; ++l) {
                const auto y = grid.correction_multipliers(current.at(i, l), target.at(i, l));
                const std::size_t j = i * f.n_nodes + l;
                y0[j] = y[0];
                y1[j] = y[1];
                y2[j] = 0.5 * y[2];
            }
        }
        for (std::size_t k = 0; k < f.n_v; ++k) {
            const double w = grid.weight(k);
            const double v = grid.point(k);
            double* fk = f.values.data() + k * n;
#pragma omp simd
            for (std::size_t j = 0; j < n; ++j) fk[j] += w * (y0[j] + v * (y1[j] + v * y2[j]));
        }
    }
}

bool all_finite(std::span<const double> values) noexcept {
    for (double x : values)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace bgk
