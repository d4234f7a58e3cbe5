#pragma once

#include "bgk/basis.hpp"
#include "bgk/fields.hpp"
#include "bgk/mesh.hpp"
#include "bgk/uncollided.hpp"
#include "bgk/velocity.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

namespace bgk {

/// Euler flux of the Maxwellian closure (gamma = 3):
/// (m, m^2/rho + rho theta, u (E + rho theta)). Zero at vacuum.
Moments euler_flux(const Moments& q) noexcept;

/// d(flux)/dq. Throws InadmissibleState for non-admissible q.
Eigen::Matrix3d flux_jacobian(const Moments& q);

/// {u - c, u, u + c} with c = sqrt(3 theta); zeros at vacuum.
std::array<double, 3> characteristic_speeds(const Moments& q) noexcept;
double max_abs_speed(const Moments& q) noexcept;

/// Local Lax-Friedrichs flux between the left trace q_minus and right trace q_plus.
Moments llf_flux(const Moments& q_minus, const Moments& q_plus) noexcept;

/// Physical flux carried into the domain by prescribed inflow particles
/// (sum over incoming velocities of w v e G). Signed in the +x direction.
struct BoundaryFluxes {
    Moments left{};
    Moments right{};
};

BoundaryFluxes kinetic_inflow_fluxes(const BoundarySpec& bc, const VelocityGrid& grid, double t);

struct LimiterOptions {
    bool enabled{false};
    double m_tvb{20.0};
};

/// Nodal DG operator for the Euler moment system.
///
/// Interior faces use the LLF flux. Non-periodic ends use the outgoing
/// half-range flux of the Maxwellian closure at the boundary trace plus the
/// supplied inflow fluxes.
class CollidedOperator {
public:
    CollidedOperator(const SpatialMesh& mesh, const DGBasis& basis, const VelocityGrid& grid);

    /// Discrete -d/dx flux(q).
    MomentField flux_divergence(const MomentField& q, BoundaryKind kind,
                                const BoundaryFluxes& inflow = {},
                                Execution exec = Execution::parallel) const;

    /// -d/dx flux(q_c) + q_u / eps, with no collided inflow.
    MomentField collided_rhs(const MomentField& q_c, const MomentField& q_u, double epsilon,
                             BoundaryKind kind, Execution exec = Execution::parallel) const;

    const ElementMatrices& matrices() const noexcept { return mats_; }

private:
    std::size_t n_x_;
    std::size_t n_nodes_;
    double h_;
    VelocityGrid grid_;
    ElementMatrices mats_;
};

/// TVB minmod: a if |a| <= bound, else minmod(a, b, c).
double tvb_minmod(double a, double b, double c, double bound) noexcept;

/// TVB limiter of one scalar broken polynomial laid out cell-major.
void tvb_limit_scalar(std::span<double> u, double m_tvb, const SpatialMesh& mesh,
                      const DGBasis& basis, const ElementMatrices& mats, BoundaryKind kind);

/// Componentwise TVB limiter. Cell means are preserved; limited cells become
/// linear. Non-periodic end cells use their own mean as the missing neighbour.
MomentField tvb_limit(const MomentField& q, double m_tvb, const SpatialMesh& mesh,
                      const DGBasis& basis, BoundaryKind kind = BoundaryKind::dirichlet);

/// The same limiter applied to every velocity of a kinetic field, in place.
void tvb_limit_kinetic(KineticField& f, double m_tvb, const SpatialMesh& mesh,
                       const DGBasis& basis, BoundaryKind kind,
                       Execution exec = Execution::parallel);

/// Scales each cell toward its mean until every node has positive density
/// and temperature. Cells whose mean is itself inadmissible are left alone.
/// Returns the number of cells modified.
std::size_t positivity_limit(MomentField& q, const ElementMatrices& mats);

/// Per-cell scaling factors in (0, 1] used by positivity_limit.
std::vector<double> positivity_factors(const MomentField& q, const ElementMatrices& mats);

/// Zhang-Shu scaling of each velocity component toward its cell mean so that
/// nodal values are non-negative. Cells with a non-positive mean are skipped.
void nonnegativity_limit_kinetic(KineticField& f, const ElementMatrices& mats,
                                 Execution exec = Execution::parallel);

/// Same scaling for a kinetic field, driven by its moments. One factor per
/// cell is shared by all velocities, so the moments are scaled identically.
std::size_t positivity_limit_kinetic(KineticField& f, const VelocityGrid& grid,
                                     const ElementMatrices& mats,
                                     Execution exec = Execution::parallel);

/// Largest |u|, |u +- c| over all cell-edge traces.
double max_wavespeed(const MomentField& q) noexcept;

/// Second-order predictor-corrector step of the Euler system alone:
/// q* = q + dt/2 D(q), q_new = q + dt D(q*), limiting after each stage.
MomentField euler_predictor_corrector_step(const CollidedOperator& op, const MomentField& q,
                                           double dt, BoundaryKind kind,
                                           const BoundaryFluxes& inflow_half,
                                           const BoundaryFluxes& inflow_full,
                                           const LimiterOptions& limiter, const SpatialMesh& mesh,
                                           const DGBasis& basis,
                                           Execution exec = Execution::parallel);

} // namespace bgk
