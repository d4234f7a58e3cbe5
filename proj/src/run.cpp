#include "bgk/run.hpp"

#include "bgk/collided.hpp"
#include "bgk/errors.hpp"
#include "bgk/imex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace bgk {

std::vector<double> RunResult::density() const {
    auto rho = moments.component(0);
    return {rho.begin(), rho.end()};
}

Primitives primitives_unchecked(const Moments& q) noexcept {
    const double u = q.mom / q.rho;
    return {q.rho, u, (2.0 * q.energy - q.mom * u) / q.rho};
}

namespace {

// Next step size, truncated so the last step lands on t_final. A remainder
// below 1e-9 dt is round-off and gets absorbed into the current step.
double clip(double dt, double t, double t_final) {
    const double remaining = t_final - t;
    if (dt * (1.0 + 1e-9) >= remaining) return remaining;
    return dt;
}

bool finished(double t, double t_final) { return t >= t_final * (1.0 - 1e-12); }

} // namespace

RunResult run(const ProblemConfig& cfg, const RunOptions& options) {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();
    const Discretization disc = make_discretization(cfg);
    const BoundarySpec bc = make_boundary(cfg);
    const KineticField g0 = initial_field(cfg, disc);

    RunResult result;
    result.config = cfg;
    result.lambda_min = std::numeric_limits<double>::infinity();
    result.lambda_max = 0.0;
    double t = 0.0;
    std::size_t steps = 0;

    auto record = [&](StepReport r) {
        result.lambda_min = std::min(result.lambda_min, r.lambda);
        result.lambda_max = std::max(result.lambda_max, r.lambda);
        result.reports.push_back(r);
        ++steps;
        if (options.on_step) options.on_step(r, steps);
        if (steps >= cfg.max_steps && !finished(t, cfg.t_final))
            throw StepFailure("step limit " + std::to_string(cfg.max_steps) + " reached at t=" +
                              std::to_string(t));
    };

    MomentField final_moments;
    switch (cfg.scheme) {
    case Scheme::berk2:
    case Scheme::berk2_corrected: {
        HybridOptions opts;
        opts.epsilon = cfg.epsilon;
        opts.bc = bc;
        opts.source = source_field(cfg, disc);
        opts.limiter = {cfg.limiter, cfg.m_tvb};
        opts.predictor = cfg.predictor;
        opts.exec = options.exec;
        const HybridIntegrator integrator(disc, opts);
        HybridState state = make_hybrid_state(g0);
        while (!finished(state.t, cfg.t_final)) {
            const MomentField q = moment_field(state.g, disc.grid);
            const double lambda = max_wavespeed(q);
            const double dt = clip(select_dt(q, cfg.cfl, disc.mesh), state.t, cfg.t_final);
            StepReport r = cfg.scheme == Scheme::berk2 ? integrator.berk2_step(state, dt)
                                                       : integrator.berk2_corrected_step(state, dt);
            r.lambda = lambda;
            t = state.t;
            record(r);
        }
        final_moments = moment_field(state.g, disc.grid);
        break;
    }
    case Scheme::imex2:
    case Scheme::imex3: {
        const ImexTableau tab = cfg.scheme == Scheme::imex2 ? ssp2_322() : ars_443();
        const auto source = source_field(cfg, disc);
        const double dt_fixed = cfg.cfl * disc.mesh.min_width() / cfg.v_max;
        StageFilter filter;
        if (cfg.limiter)
            filter = [&](KineticField& x) {
                tvb_limit_kinetic(x, cfg.m_tvb, disc.mesh, disc.basis, bc.kind, options.exec);
                nonnegativity_limit_kinetic(x, disc.collided.matrices(), options.exec);
                positivity_limit_kinetic(x, disc.grid, disc.collided.matrices(), options.exec);
            };
        KineticField f = g0;
        while (!finished(t, cfg.t_final)) {
            const auto t0 = std::chrono::steady_clock::now();
            StepReport r;
            r.lambda = max_wavespeed(moment_field(f, disc.grid));
            r.dt_used = clip(dt_fixed, t, cfg.t_final);
            try {
                f = imex_step(disc.sweeper, disc.grid, f, t, r.dt_used, cfg.epsilon, tab, bc,
                              source ? &*source : nullptr, options.exec, filter);
            } catch (const std::exception& e) {
                throw StepFailure("step " + std::to_string(steps + 1) + " at t=" +
                                  std::to_string(t) + ": " + e.what());
            }
            t += r.dt_used;
            r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            record(r);
        }
        final_moments = moment_field(f, disc.grid);
        break;
    }
    case Scheme::euler_only: {
        MomentField q = moment_field(g0, disc.grid);
        const BoundaryFluxes inflow = kinetic_inflow_fluxes(bc, disc.grid, 0.0);
        const LimiterOptions limiter{cfg.limiter, cfg.m_tvb};
        while (!finished(t, cfg.t_final)) {
            const auto t0 = std::chrono::steady_clock::now();
            StepReport r;
            r.lambda = max_wavespeed(q);
            r.dt_used = clip(select_dt(q, cfg.cfl, disc.mesh), t, cfg.t_final);
            q = euler_predictor_corrector_step(disc.collided, q, r.dt_used, bc.kind, inflow, inflow,
                                               limiter, disc.mesh, disc.basis, options.exec);
            if (!all_finite(q.values))
                throw StepFailure("step " + std::to_string(steps + 1) + ": non-finite moments");
            t += r.dt_used;
            r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            record(r);
        }
        final_moments = q;
        break;
    }
    }

    result.moments = final_moments;
    result.steps = steps;
    result.t_final = t;
    for (std::size_t i = 0; i < final_moments.n_x; ++i) {
        for (std::size_t l = 0; l < final_moments.n_nodes; ++l) {
            result.x.push_back(disc.node_x(i, l));
            result.primitives.push_back(primitives_unchecked(final_moments.at(i, l)));
        }
    }
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace bgk
