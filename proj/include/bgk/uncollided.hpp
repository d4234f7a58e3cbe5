#pragma once

#include "bgk/basis.hpp"
#include "bgk/fields.hpp"
#include "bgk/mesh.hpp"
#include "bgk/velocity.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace bgk {

enum class BoundaryKind { periodic, dirichlet };
enum class Side { left, right };
enum class Execution { serial, parallel };

/// Inflow density G(v, t) prescribed at one end of the domain.
using InflowFunction = std::function<double(double v, double t)>;

struct BoundarySpec {
    BoundaryKind kind{BoundaryKind::periodic};
    InflowFunction left;
    InflowFunction right;

    static BoundarySpec periodic();
    static BoundarySpec dirichlet(InflowFunction left, InflowFunction right);
    /// Time-independent Maxwellian inflow on each end.
    static BoundarySpec dirichlet_maxwellian(const Moments& left, const Moments& right);
    static BoundarySpec zero_inflow();
};

/// Ghost-cell nodal values on `side` for velocity k at time t.
/// Periodic copies the opposite end cell of f; dirichlet fills every node
/// with the inflow value.
std::vector<double> apply_boundary(const BoundarySpec& bc, Side side, std::size_t k, double t,
                                   const KineticField& f, const VelocityGrid& grid);

struct SweepResult {
    KineticField f;
    int iterations{1};  ///< largest periodic ghost iteration count over velocities
};

inline constexpr int kPeriodicSweepCap = 10;
inline constexpr double kPeriodicSweepTol = 1e-12;

/// Per-velocity upwind DG solver for
///   sigma f + v d/dx f = r
/// in the weak form (h/2) sigma J f + v (trace terms - K f) = (h/2) J r.
class TransportSweeper {
public:
    TransportSweeper(const SpatialMesh& mesh, const DGBasis& basis, const VelocityGrid& grid);

    std::size_t n_v() const noexcept { return points_.size(); }
    std::size_t n_x() const noexcept { return n_x_; }
    std::size_t n_nodes() const noexcept { return n_nodes_; }
    const ElementMatrices& matrices() const noexcept { return mats_; }

    /// Upwind sweeps. `guess` seeds the periodic ghost traces (may be null).
    SweepResult solve(double sigma, const KineticField& rhs, const BoundarySpec& bc, double t_bc,
                      const KineticField* guess, Execution exec = Execution::parallel) const;

    /// Serial reference: assembles and factors every cell system from scratch.
    SweepResult solve_reference(double sigma, const KineticField& rhs, const BoundarySpec& bc,
                                double t_bc, const KineticField* guess) const;

    /// Explicit upwind DG advection -v d/dx f with ghost data at time t.
    KineticField advection(const KineticField& f, const BoundarySpec& bc, double t,
                           Execution exec = Execution::parallel) const;
    KineticField advection_reference(const KineticField& f, const BoundarySpec& bc, double t) const;

private:
    std::size_t n_x_;
    std::size_t n_nodes_;
    double h_;
    std::vector<double> points_;
    VelocityGrid grid_;
    ElementMatrices mats_;
};

/// One backward Euler step of f_t + v f_x = -f/eps + S over tau.
SweepResult sweep_backward_euler(const TransportSweeper& sweeper, const KineticField& f_in,
                                 double tau, double epsilon, const KineticField* source,
                                 const BoundarySpec& bc, double t_bc,
                                 Execution exec = Execution::parallel);

/// BDF2 step (f - 4/3 g_half + 1/3 g_n)/(dt/3) + v f_x + f/eps = M/eps + S.
SweepResult sweep_bdf2_with_source(const TransportSweeper& sweeper, const KineticField& g_half,
                                   const KineticField& g_n, double dt, double epsilon,
                                   const KineticField& M_source, const KineticField* source,
                                   const BoundarySpec& bc, double t_bc,
                                   Execution exec = Execution::parallel);

} // namespace bgk
