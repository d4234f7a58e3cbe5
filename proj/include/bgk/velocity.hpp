#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace bgk {

inline constexpr double kRhoFloor = 1e-13;
inline constexpr double kThetaFloor = 1e-13;

/// Conserved densities (rho, m, E) of a distribution in one space dimension.
struct Moments {
    double rho{};
    double mom{};
    double energy{};

    Moments& operator+=(const Moments& o) noexcept {
        rho += o.rho;
        mom += o.mom;
        energy += o.energy;
        return *this;
    }
    Moments& operator-=(const Moments& o) noexcept {
        rho -= o.rho;
        mom -= o.mom;
        energy -= o.energy;
        return *this;
    }
    Moments& operator*=(double s) noexcept {
        rho *= s;
        mom *= s;
        energy *= s;
        return *this;
    }
    double& operator[](std::size_t c) noexcept { return c == 0 ? rho : (c == 1 ? mom : energy); }
    double operator[](std::size_t c) const noexcept {
        return c == 0 ? rho : (c == 1 ? mom : energy);
    }
};

inline Moments operator+(Moments a, const Moments& b) noexcept { return a += b; }
inline Moments operator-(Moments a, const Moments& b) noexcept { return a -= b; }
inline Moments operator*(double s, Moments a) noexcept { return a *= s; }
inline Moments operator*(Moments a, double s) noexcept { return a *= s; }

struct Primitives {
    double rho{};
    double u{};
    double theta{};
};

/// rho below the density floor. Such states carry no flux and no Maxwellian.
inline bool is_vacuum(const Moments& q) noexcept { return q.rho < kRhoFloor; }

/// Throws InadmissibleState below the floors.
Primitives moments_to_primitives(const Moments& q);
Moments primitives_to_moments(const Primitives& p) noexcept;

/// Value of the Maxwellian with the given moments at velocity v.
double maxwellian_at(const Moments& q, double v);
double maxwellian_at(const Primitives& p, double v) noexcept;

/// Gauss-Legendre velocity grid on [-v_max, v_max] with the invariant matrix
/// E = [w_k (1, v_k, v_k^2 / 2)].
class VelocityGrid {
public:
    VelocityGrid(std::size_t n_points, double v_max);

    std::size_t size() const noexcept { return points_.size(); }
    double v_max() const noexcept { return v_max_; }
    const std::vector<double>& points() const noexcept { return points_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double point(std::size_t k) const noexcept { return points_[k]; }
    double weight(std::size_t k) const noexcept { return weights_[k]; }
    const Eigen::MatrixXd& invariant_matrix() const noexcept { return E_; }
    bool full_rank() const noexcept { return full_rank_; }

    /// q = E f for one spatial node. `stride` steps between velocities.
    Moments discrete_moments(std::span<const double> f, std::size_t stride = 1) const noexcept;

    /// Multipliers y with E^T y the minimal-norm correction taking moments
    /// `current` to `target`. Throws RankDeficiency for fewer than three points.
    std::array<double, 3> correction_multipliers(const Moments& current,
                                                 const Moments& target) const;

    /// Minimal-norm projection of f onto {g : E g = target}.
    std::vector<double> conservation_fix(std::span<const double> f, const Moments& target) const;

    /// Maxwellian sampled at every grid point. Vacuum gives zeros when allowed.
    std::vector<double> discrete_maxwellian(const Moments& q, bool allow_vacuum = false) const;

    /// sum over k with sign(v_k) == sign of w_k v_k e(v_k) M_q(v_k).
    /// sign = +1 collects rightward velocities, -1 leftward ones.
    Moments half_range_flux(const Moments& q, int sign) const;
    /// Same for arbitrary values f_k (stride as in discrete_moments).
    Moments half_range_flux_of(std::span<const double> f, int sign, std::size_t stride = 1) const noexcept;

private:
    double v_max_;
    std::vector<double> points_;
    std::vector<double> weights_;
    Eigen::MatrixXd E_;
    // Gram matrix of the rows of diag(1, 1/v_max, 1/v_max^2) E.
    Eigen::Matrix3d scaled_gram_;
    Eigen::PartialPivLU<Eigen::Matrix3d> scaled_gram_lu_;
    bool full_rank_{};
};

VelocityGrid build_velocity_grid(std::size_t n_points, double v_max);

} // namespace bgk
