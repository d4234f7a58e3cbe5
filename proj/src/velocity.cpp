#include "bgk/velocity.hpp"

#include "bgk/errors.hpp"
#include "bgk/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bgk {

namespace {

std::string describe(const Moments& q) {
    std::ostringstream os;
    os.precision(6);
    os << "(rho=" << q.rho << ", m=" << q.mom << ", E=" << q.energy << ")";
    return os.str();
}

} // namespace

Primitives moments_to_primitives(const Moments& q) {
    if (!(q.rho > kRhoFloor)) throw InadmissibleState("density below floor: " + describe(q));
    const double u = q.mom / q.rho;
    const double theta = (2.0 * q.energy - q.mom * u) / q.rho;
    if (!(theta > kThetaFloor)) throw InadmissibleState("temperature below floor: " + describe(q));
    return {q.rho, u, theta};
}

Moments primitives_to_moments(const Primitives& p) noexcept {
    return {p.rho, p.rho * p.u, 0.5 * p.rho * (p.u * p.u + p.theta)};
}

double maxwellian_at(const Primitives& p, double v) noexcept {
    const double d = v - p.u;
    return p.rho / std::sqrt(2.0 * std::numbers::pi * p.theta) * std::exp(-d * d / (2.0 * p.theta));
}

double maxwellian_at(const Moments& q, double v) { return maxwellian_at(moments_to_primitives(q), v); }

VelocityGrid::VelocityGrid(std::size_t n_points, double v_max) : v_max_(v_max) {
    if (n_points == 0) throw ConfigError("VelocityGrid: need at least one point");
    if (!(v_max > 0.0)) throw ConfigError("VelocityGrid: v_max must be positive");

    const auto rule = gauss_legendre(static_cast<int>(n_points));
    points_.resize(n_points);
    weights_.resize(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        points_[k] = v_max * rule.nodes[k];
        weights_[k] = v_max * rule.weights[k];
    }

    const auto n = static_cast<Eigen::Index>(n_points);
    E_.resize(3, n);
    Eigen::MatrixXd Es(3, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double v = points_[k];
        const double w = weights_[k];
        E_(0, k) = w;
        E_(1, k) = w * v;
        E_(2, k) = 0.5 * w * v * v;
        Es(0, k) = w;
        Es(1, k) = w * v / v_max;
        Es(2, k) = 0.5 * w * v * v / (v_max * v_max);
    }
    scaled_gram_ = Es * Es.transpose();
    full_rank_ = n_points >= 3;
    if (full_rank_) scaled_gram_lu_.compute(scaled_gram_);
}

Moments VelocityGrid::discrete_moments(std::span<const double> f, std::size_t stride) const noexcept {
    Moments q;
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const double wf = weights_[k] * f[k * stride];
        const double v = points_[k];
        q.rho += wf;
        q.mom += wf * v;
        q.energy += 0.5 * wf * v * v;
    }
    return q;
}

std::array<double, 3> VelocityGrid::correction_multipliers(const Moments& current,
                                                           const Moments& target) const {
    if (!full_rank_)
        throw RankDeficiency("conservation fix needs at least 3 velocity points, grid has " +
                             std::to_string(points_.size()));
    // (E E^T)^{-1} = D (D E E^T D)^{-1} D with D = diag(1, 1/v_max, 1/v_max^2)
    const double s1 = 1.0 / v_max_;
    const double s2 = s1 * s1;
    const Eigen::Vector3d r((target.rho - current.rho), (target.mom - current.mom) * s1,
                            (target.energy - current.energy) * s2);
    Eigen::Vector3d y = scaled_gram_lu_.solve(r);
    y += scaled_gram_lu_.solve(r - scaled_gram_ * y);
    return {y(0), y(1) * s1, y(2) * s2};
}

std::vector<double> VelocityGrid::conservation_fix(std::span<const double> f,
                                                   const Moments& target) const {
    std::vector<double> out(f.begin(), f.end());
    for (int pass = 0; pass < 2; ++pass) {
        const auto y = correction_multipliers(discrete_moments(out), target);
        for (std::size_t k = 0; k < out.size(); ++k) {
            const double v = points_[k];
            out[k] += weights_[k] * (y[0] + y[1] * v + 0.5 * y[2] * v * v);
        }
    }
    return out;
}

std::vector<double> VelocityGrid::discrete_maxwellian(const Moments& q, bool allow_vacuum) const {
    std::vector<double> out(points_.size(), 0.0);
    if (allow_vacuum && is_vacuum(q)) return out;
    const auto p = moments_to_primitives(q);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = maxwellian_at(p, points_[k]);
    return out;
}

Moments VelocityGrid::half_range_flux_of(std::span<const double> f, int sign,
                                         std::size_t stride) const noexcept {
    Moments flux;
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const double v = points_[k];
        if (v * sign <= 0.0) continue;
        const double wvf = weights_[k] * v * f[k * stride];
        flux.rho += wvf;
        flux.mom += wvf * v;
        flux.energy += 0.5 * wvf * v * v;
    }
    return flux;
}

Moments VelocityGrid::half_range_flux(const Moments& q, int sign) const {
    if (is_vacuum(q)) return {};
    const auto p = moments_to_primitives(q);
    Moments flux;
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const double v = points_[k];
        if (v * sign <= 0.0) continue;
        const double wvf = weights_[k] * v * maxwellian_at(p, v);
        flux.rho += wvf;
        flux.mom += wvf * v;
        flux.energy += 0.5 * wvf * v * v;
    }
    return flux;
}

VelocityGrid build_velocity_grid(std::size_t n_points, double v_max) {
    return VelocityGrid(n_points, v_max);
}

} // namespace bgk
