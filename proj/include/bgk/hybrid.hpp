#pragma once

#include "bgk/basis.hpp"
#include "bgk/collided.hpp"
#include "bgk/fields.hpp"
#include "bgk/mesh.hpp"
#include "bgk/uncollided.hpp"
#include "bgk/velocity.hpp"

#include <cstddef>
#include <optional>

namespace bgk {

/// Everything that depends only on the grids.
struct Discretization {
    SpatialMesh mesh;
    DGBasis basis;
    VelocityGrid grid;
    TransportSweeper sweeper;
    CollidedOperator collided;

    Discretization(SpatialMesh m, int degree, VelocityGrid g);

    std::size_t n_nodes() const noexcept { return basis.size(); }
    /// Physical coordinate of node l in cell i.
    double node_x(std::size_t i, std::size_t l) const noexcept {
        return mesh.map_to_physical(i, basis.nodes()[l]);
    }
};

struct HybridState {
    KineticField g;
    MomentField q_c;
    double t{};
    std::size_t step_index{};
};

struct StepReport {
    double dt_used{};
    double lambda{};
    int sweep_iterations{};
    double wall_time{};
};

/// How the collided predictor evaluates its flux.
///  step_start:     flux at the step-start collided state, which is zero.
///  source_updated: flux at the source-updated state (dt/2)(q_u / eps).
enum class PredictorFlux { step_start, source_updated };

struct HybridOptions {
    double epsilon{1.0};
    BoundarySpec bc{};
    std::optional<KineticField> source{};
    LimiterOptions limiter{};
    PredictorFlux predictor{PredictorFlux::source_updated};
    Execution exec{Execution::parallel};
};

HybridState make_hybrid_state(const KineticField& g, double t = 0.0);

class HybridIntegrator {
public:
    HybridIntegrator(const Discretization& disc, HybridOptions options);

    /// One step without the BDF2 correction.
    StepReport berk2_step(HybridState& state, double dt) const;
    /// One step with the BDF2 correction and conservation fix.
    StepReport berk2_corrected_step(HybridState& state, double dt) const;

    const HybridOptions& options() const noexcept { return options_; }

    /// Collided moments at the end of the most recent step, before relabeling.
    const MomentField& last_collided() const noexcept { return last_q_c_; }

private:
    StepReport step(HybridState& state, double dt, bool corrected) const;
    MomentField limit(const MomentField& q) const;

    const Discretization& disc_;
    HybridOptions options_;
    mutable MomentField last_q_c_;
};

/// dt = C h_min / Lambda with Lambda the largest characteristic speed of q_total.
double select_dt(const MomentField& q_total, double cfl, const SpatialMesh& mesh);

} // namespace bgk
