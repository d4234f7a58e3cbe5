#include "bgk/collided.hpp"

#include "bgk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bgk {

Moments euler_flux(const Moments& q) noexcept {
    if (is_vacuum(q)) return {};
    const double u = q.mom / q.rho;
    return {q.mom, 2.0 * q.energy, u * (3.0 * q.energy - q.mom * u)};
}

Eigen::Matrix3d flux_jacobian(const Moments& q) {
    const Primitives p = moments_to_primitives(q);
    const double u = p.u;
    const double e_over_rho = q.energy / q.rho;
    Eigen::Matrix3d A;
    A << 0.0, 1.0, 0.0,
         0.0, 0.0, 2.0,
         2.0 * u * u * u - 3.0 * e_over_rho * u, 3.0 * e_over_rho - 3.0 * u * u, 3.0 * u;
    return A;
}

std::array<double, 3> characteristic_speeds(const Moments& q) noexcept {
    if (is_vacuum(q)) return {0.0, 0.0, 0.0};
    const double u = q.mom / q.rho;
    const double theta = (2.0 * q.energy - q.mom * u) / q.rho;
    const double c = std::sqrt(3.0 * std::max(theta, 0.0));
    return {u - c, u, u + c};
}

double max_abs_speed(const Moments& q) noexcept {
    const auto s = characteristic_speeds(q);
    return std::max({std::abs(s[0]), std::abs(s[1]), std::abs(s[2])});
}

Moments llf_flux(const Moments& q_minus, const Moments& q_plus) noexcept {
    const double lambda = std::max(max_abs_speed(q_minus), max_abs_speed(q_plus));
    return 0.5 * (euler_flux(q_plus) + euler_flux(q_minus) - lambda * (q_plus - q_minus));
}

BoundaryFluxes kinetic_inflow_fluxes(const BoundarySpec& bc, const VelocityGrid& grid, double t) {
    BoundaryFluxes out;
    if (bc.kind == BoundaryKind::periodic) return out;
    std::vector<double> left(grid.size(), 0.0), right(grid.size(), 0.0);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double v = grid.point(k);
        if (v > 0.0 && bc.left) left[k] = bc.left(v, t);
        if (v < 0.0 && bc.right) right[k] = bc.right(v, t);
    }
    out.left = grid.half_range_flux_of(left, +1);
    out.right = grid.half_range_flux_of(right, -1);
    return out;
}

CollidedOperator::CollidedOperator(const SpatialMesh& mesh, const DGBasis& basis,
                                   const VelocityGrid& grid)
    : n_x_(mesh.n_cells),
      n_nodes_(basis.size()),
      h_(mesh.widths.front()),
      grid_(grid),
      mats_(element_matrices(basis)) {}

MomentField CollidedOperator::flux_divergence(const MomentField& q, BoundaryKind kind,
                                              const BoundaryFluxes& inflow,
                                              Execution exec) const {
    const std::size_t first = 0;
    const std::size_t last = n_nodes_ - 1;
    const long n_faces = static_cast<long>(n_x_ + 1);
    // faces[j] sits between cells j-1 and j
    std::vector<Moments> faces(n_x_ + 1);
    const bool parallel = exec == Execution::parallel;

#pragma omp parallel for schedule(static) if (parallel)
    for (long jj = 0; jj < n_faces; ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        if (j > 0 && j < n_x_) {
            faces[j] = llf_flux(q.at(j - 1, last), q.at(j, first));
        } else if (kind == BoundaryKind::periodic) {
            faces[j] = llf_flux(q.at(n_x_ - 1, last), q.at(0, first));
        }
    }
    if (kind != BoundaryKind::periodic) {
        faces[0] = grid_.half_range_flux(q.at(0, first), -1) + inflow.left;
        faces[n_x_] = grid_.half_range_flux(q.at(n_x_ - 1, last), +1) + inflow.right;
    }

    MomentField out(n_x_, n_nodes_);
    const auto n = static_cast<Eigen::Index>(n_nodes_);
    const double scale = 2.0 / h_;
    const long n_cells = static_cast<long>(n_x_);
#pragma omp parallel for schedule(static) if (parallel)
    for (long ii = 0; ii < n_cells; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        Eigen::Matrix<double, Eigen::Dynamic, 3> phi(n, 3);
        for (std::size_t l = 0; l < n_nodes_; ++l) {
            const Moments f = euler_flux(q.at(i, l));
            for (std::size_t c = 0; c < 3; ++c) phi(static_cast<Eigen::Index>(l), c) = f[c];
        }
        const Eigen::Matrix<double, Eigen::Dynamic, 3> vol = mats_.J_inv_K * phi;
        for (std::size_t c = 0; c < 3; ++c) {
            const double fr = faces[i + 1][c];
            const double fl = faces[i][c];
            for (std::size_t l = 0; l < n_nodes_; ++l) {
                const auto li = static_cast<Eigen::Index>(l);
                out(c, i, l) =
                    scale * (vol(li, c) - mats_.lift_last(li) * fr + mats_.lift_first(li) * fl);
            }
        }
    }
    return out;
}

MomentField CollidedOperator::collided_rhs(const MomentField& q_c, const MomentField& q_u,
                                           double epsilon, BoundaryKind kind,
                                           Execution exec) const {
    MomentField out = flux_divergence(q_c, kind, {}, exec);
    axpy(out, 1.0 / epsilon, q_u);
    return out;
}

double tvb_minmod(double a, double b, double c, double bound) noexcept {
    if (std::abs(a) <= bound) return a;
    if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
    if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
    return 0.0;
}

void tvb_limit_scalar(std::span<double> u, double m_tvb, const SpatialMesh& mesh,
                      const DGBasis& basis, const ElementMatrices& mats, BoundaryKind kind) {
    if (basis.degree() == 0 || !std::isfinite(m_tvb)) return;
    const std::size_t nx = mesh.n_cells;
    const std::size_t nn = basis.size();
    const auto n = static_cast<Eigen::Index>(nn);
    const auto& xi = basis.nodes();

    std::vector<double> mean(nx), slope(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        Eigen::Map<const Eigen::VectorXd> ui(u.data() + i * nn, n);
        mean[i] = mats.mean_weights.dot(ui);
        slope[i] = mats.slope_weights.dot(ui);
    }
    for (std::size_t i = 0; i < nx; ++i) {
        const double bound = m_tvb * mesh.widths[i] * mesh.widths[i];
        double left_mean = mean[i];
        double right_mean = mean[i];
        if (i > 0) left_mean = mean[i - 1];
        else if (kind == BoundaryKind::periodic) left_mean = mean[nx - 1];
        if (i + 1 < nx) right_mean = mean[i + 1];
        else if (kind == BoundaryKind::periodic) right_mean = mean[0];
        const double d_plus = right_mean - mean[i];
        const double d_minus = mean[i] - left_mean;

        double* ui = u.data() + i * nn;
        const double dev_right = ui[nn - 1] - mean[i];
        const double dev_left = mean[i] - ui[0];
        const bool keep = tvb_minmod(dev_right, d_plus, d_minus, bound) == dev_right &&
                          tvb_minmod(dev_left, d_plus, d_minus, bound) == dev_left;
        if (keep) continue;
        const double s = tvb_minmod(slope[i], d_plus, d_minus, bound);
        for (std::size_t l = 0; l < nn; ++l) ui[l] = mean[i] + s * xi[l];
    }
}

MomentField tvb_limit(const MomentField& q, double m_tvb, const SpatialMesh& mesh,
                      const DGBasis& basis, BoundaryKind kind) {
    MomentField out = q;
    if (basis.degree() == 0 || !std::isfinite(m_tvb)) return out;
    const auto mats = element_matrices(basis);
#pragma omp parallel for schedule(static)
    for (int c = 0; c < 3; ++c)
        tvb_limit_scalar(out.component(static_cast<std::size_t>(c)), m_tvb, mesh, basis, mats, kind);
    return out;
}

void tvb_limit_kinetic(KineticField& f, double m_tvb, const SpatialMesh& mesh,
                       const DGBasis& basis, BoundaryKind kind, Execution exec) {
    if (basis.degree() == 0 || !std::isfinite(m_tvb)) return;
    const auto mats = element_matrices(basis);
    const long n_v = static_cast<long>(f.n_v);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (long k = 0; k < n_v; ++k)
        tvb_limit_scalar(f.velocity(static_cast<std::size_t>(k)), m_tvb, mesh, basis, mats, kind);
}

namespace {

double pressure(const Moments& q) { return 2.0 * q.energy - q.mom * q.mom / q.rho; }

} // namespace

std::vector<double> positivity_factors(const MomentField& q, const ElementMatrices& mats) {
    const std::size_t nn = q.n_nodes;
    std::vector<double> factors(q.n_x, 1.0);
#pragma omp parallel for schedule(static)
    for (long ii = 0; ii < static_cast<long>(q.n_x); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        Moments mean{};
        for (std::size_t l = 0; l < nn; ++l) mean += mats.mean_weights(static_cast<Eigen::Index>(l)) * q.at(i, l);
        if (!(mean.rho > kRhoFloor)) continue;
        const double p_mean = pressure(mean);
        if (!(p_mean > kThetaFloor * mean.rho)) continue;
        const double rho_min = std::min(1e-11, 0.5 * mean.rho);
        const double kappa = std::min(1e-11, 0.5 * p_mean / mean.rho);

        double t = 1.0;
        for (std::size_t l = 0; l < nn; ++l) {
            const double r = q.at(i, l).rho;
            if (r < rho_min) t = std::min(t, (mean.rho - rho_min) / (mean.rho - r));
        }
        // P - kappa rho is concave in the state, so bisection along the segment works.
        auto ok = [&](const Moments& s) { return s.rho > 0.0 && pressure(s) - kappa * s.rho >= 0.0; };
        for (std::size_t l = 0; l < nn; ++l) {
            const Moments d = q.at(i, l) - mean;
            if (ok(mean + t * d)) continue;
            double lo = 0.0, hi = t;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (ok(mean + mid * d) ? lo : hi) = mid;
            }
            t = lo;
        }
        factors[i] = t;
    }
    return factors;
}

namespace {

void scale_toward_mean(std::span<double> u, std::size_t nn, const std::vector<double>& factors,
                       const ElementMatrices& mats) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] >= 1.0) continue;
        auto ui = u.subspan(i * nn, nn);
        double mean = 0.0;
        for (std::size_t l = 0; l < nn; ++l) mean += mats.mean_weights(static_cast<Eigen::Index>(l)) * ui[l];
        for (auto& x : ui) x = mean + factors[i] * (x - mean);
    }
}

} // namespace

std::size_t positivity_limit(MomentField& q, const ElementMatrices& mats) {
    const auto factors = positivity_factors(q, mats);
    for (std::size_t c = 0; c < 3; ++c) scale_toward_mean(q.component(c), q.n_nodes, factors, mats);
    return static_cast<std::size_t>(std::count_if(factors.begin(), factors.end(), [](double t) { return t < 1.0; }));
}

void nonnegativity_limit_kinetic(KineticField& f, const ElementMatrices& mats, Execution exec) {
    const std::size_t nn = f.n_nodes;
    const long n_v = static_cast<long>(f.n_v);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (long k = 0; k < n_v; ++k) {
        auto u = f.velocity(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < f.n_x; ++i) {
            auto ui = u.subspan(i * nn, nn);
            const double lo = *std::min_element(ui.begin(), ui.end());
            if (lo >= 0.0) continue;
            double mean = 0.0;
            for (std::size_t l = 0; l < nn; ++l) mean += mats.mean_weights(static_cast<Eigen::Index>(l)) * ui[l];
            if (mean <= 0.0) continue;
            const double t = mean / (mean - lo);
            for (auto& x : ui) x = mean + t * (x - mean);
        }
    }
}

std::size_t positivity_limit_kinetic(KineticField& f, const VelocityGrid& grid,
                                     const ElementMatrices& mats, Execution exec) {
    const auto factors = positivity_factors(moment_field(f, grid), mats);
    const auto n = static_cast<std::size_t>(std::count_if(factors.begin(), factors.end(), [](double t) { return t < 1.0; }));
    if (n == 0) return 0;
    const long n_v = static_cast<long>(f.n_v);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (long k = 0; k < n_v; ++k)
        scale_toward_mean(f.velocity(static_cast<std::size_t>(k)), f.n_nodes, factors, mats);
    return n;
}

double max_wavespeed(const MomentField& q) noexcept {
    double lambda = 0.0;
    for (std::size_t i = 0; i < q.n_x; ++i) {
        lambda = std::max(lambda, max_abs_speed(q.at(i, 0)));
        lambda = std::max(lambda, max_abs_speed(q.at(i, q.n_nodes - 1)));
    }
    return lambda;
}

MomentField euler_predictor_corrector_step(const CollidedOperator& op, const MomentField& q,
                                           double dt, BoundaryKind kind,
                                           const BoundaryFluxes& inflow_half,
                                           const BoundaryFluxes& inflow_full,
                                           const LimiterOptions& limiter, const SpatialMesh& mesh,
                                           const DGBasis& basis, Execution exec) {
    MomentField half = q;
    axpy(half, 0.5 * dt, op.flux_divergence(q, kind, inflow_half, exec));
    if (limiter.enabled) {
        half = tvb_limit(half, limiter.m_tvb, mesh, basis, kind);
        positivity_limit(half, op.matrices());
    }
    MomentField next = q;
    axpy(next, dt, op.flux_divergence(half, kind, inflow_full, exec));
    if (limiter.enabled) {
        next = tvb_limit(next, limiter.m_tvb, mesh, basis, kind);
        positivity_limit(next, op.matrices());
    }
    return next;
}

} // namespace bgk
