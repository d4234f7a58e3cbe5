#include "bgk/hybrid.hpp"

#include "bgk/errors.hpp"

#include <chrono>
#include <string>

namespace bgk {

Discretization::Discretization(SpatialMesh m, int degree, VelocityGrid g)
    : mesh(std::move(m)),
      basis(degree),
      grid(std::move(g)),
      sweeper(mesh, basis, grid),
      collided(mesh, basis, grid) {}

HybridState make_hybrid_state(const KineticField& g, double t) {
    return {g, MomentField(g.n_x, g.n_nodes), t, 0};
}

HybridIntegrator::HybridIntegrator(const Discretization& disc, HybridOptions options)
    : disc_(disc), options_(std::move(options)) {
    if (!(options_.epsilon > 0.0)) throw ConfigError("HybridIntegrator: epsilon must be positive");
}

StepReport HybridIntegrator::berk2_step(HybridState& state, double dt) const {
    return step(state, dt, false);
}

StepReport HybridIntegrator::berk2_corrected_step(HybridState& state, double dt) const {
    return step(state, dt, true);
}

MomentField HybridIntegrator::limit(const MomentField& q) const {
    if (!options_.limiter.enabled) return q;
    auto out = tvb_limit(q, options_.limiter.m_tvb, disc_.mesh, disc_.basis, options_.bc.kind);
    positivity_limit(out, disc_.collided.matrices());
    return out;
}

StepReport HybridIntegrator::step(HybridState& state, double dt, bool corrected) const {
    if (!(dt > 0.0)) throw ConfigError("hybrid step: dt must be positive");
    const auto start = std::chrono::steady_clock::now();
    const double eps = options_.epsilon;
    const auto exec = options_.exec;
    const auto kind = options_.bc.kind;
    const KineticField* source = options_.source ? &*options_.source : nullptr;
    const auto& grid = disc_.grid;
    StepReport report;
    report.dt_used = dt;

    try {
        // uncollided half step and its moments
        auto half = sweep_backward_euler(disc_.sweeper, state.g, 0.5 * dt, eps, source,
                                         options_.bc, state.t + 0.5 * dt, exec);
        const MomentField q_u_half = moment_field(half.f, grid);

        // collided predictor
        MomentField q_c_half = state.q_c;
        MomentField predictor_state = state.q_c;
        if (options_.predictor == PredictorFlux::source_updated) {
            axpy(predictor_state, 0.5 * dt / eps, q_u_half);
            q_c_half = predictor_state;
        } else {
            axpy(q_c_half, 0.5 * dt / eps, q_u_half);
        }
        axpy(q_c_half, 0.5 * dt, disc_.collided.flux_divergence(predictor_state, kind, {}, exec));
        q_c_half = limit(q_c_half);

        // uncollided full step from t_n
        auto full = sweep_backward_euler(disc_.sweeper, state.g, dt, eps, source, options_.bc,
                                         state.t + dt, exec);
        const MomentField q_u_full = moment_field(full.f, grid);

        // collided corrector
        MomentField q_c_full = state.q_c;
        axpy(q_c_full, dt, disc_.collided.collided_rhs(q_c_half, q_u_full, eps, kind, exec));
        q_c_full = limit(q_c_full);
        last_q_c_ = q_c_full;
        report.sweep_iterations = std::max(half.iterations, full.iterations);

        if (!corrected) {
            KineticField g = std::move(full.f);
            axpy(g, 1.0, maxwellian_field(q_c_full, grid, true));
            state.g = std::move(g);
        } else {
            KineticField g_half = std::move(half.f);
            axpy(g_half, 1.0, maxwellian_field(q_c_half, grid, true));
            MomentField q_next = q_u_full;
            axpy(q_next, 1.0, q_c_full);
            KineticField M = maxwellian_field(q_next, grid);
            conservation_fix_field(M, q_next, grid);
            auto bdf = sweep_bdf2_with_source(disc_.sweeper, g_half, state.g, dt, eps, M, source,
                                              options_.bc, state.t + dt, exec);
            conservation_fix_field(bdf.f, q_next, grid);
            report.sweep_iterations = std::max(report.sweep_iterations, bdf.iterations);
            state.g = std::move(bdf.f);
        }
    } catch (const InadmissibleState& e) {
        throw StepFailure("step " + std::to_string(state.step_index + 1) + " at t=" +
                          std::to_string(state.t) + ": " + e.what());
    }
    if (!all_finite(state.g.values))
        throw StepFailure("step " + std::to_string(state.step_index + 1) + " at t=" +
                          std::to_string(state.t) + ": non-finite distribution");

    state.q_c = MomentField(state.g.n_x, state.g.n_nodes);
    state.t += dt;
    ++state.step_index;
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

double select_dt(const MomentField& q_total, double cfl, const SpatialMesh& mesh) {
    if (!(cfl > 0.0)) throw ConfigError("select_dt: CFL constant must be positive");
    const double lambda = max_wavespeed(q_total);
    if (!(lambda > 1e-14)) throw ConfigError("select_dt: no wave speed (vacuum everywhere)");
    return cfl * mesh.min_width() / lambda;
}

} // namespace bgk
