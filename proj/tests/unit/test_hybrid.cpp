#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bgk/errors.hpp"
#include "bgk/hybrid.hpp"

#include <cmath>
#include <numbers>

using namespace bgk;

namespace {

constexpr double kPi = std::numbers::pi;

Moments state(double rho, double u, double p) { return primitives_to_moments({rho, u, p / rho}); }

MomentField fill(const Discretization& d, const std::function<Moments(double)>& q) {
    MomentField out(d.mesh.n_cells, d.n_nodes());
    for (std::size_t i = 0; i < d.mesh.n_cells; ++i)
        for (std::size_t l = 0; l < d.n_nodes(); ++l) out.set(i, l, q(d.node_x(i, l)));
    return out;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

Moments totals(const Discretization& d, const MomentField& q) {
    const auto M = element_matrices(d.basis);
    Moments t{};
    for (std::size_t i = 0; i < q.n_x; ++i)
        for (std::size_t l = 0; l < q.n_nodes; ++l)
            t += d.mesh.widths[i] * M.mean_weights(static_cast<Eigen::Index>(l)) * q.at(i, l);
    return t;
}

} // namespace

TEST_CASE("global Maxwellian is a fixed point") {
    // v_max of ten thermal widths so the discrete moments match the continuous ones
    const Discretization d(build_mesh(0.0, 1.0, 16), 2, VelocityGrid(60, 10.0 + 0.3));
    const Moments q = state(1.0, 0.3, 1.0);
    const KineticField M = maxwellian_field(fill(d, [&](double) { return q; }), d.grid);
    for (bool corrected : {false, true}) {
        for (auto predictor : {PredictorFlux::source_updated, PredictorFlux::step_start}) {
            for (double eps : {1.0, 1e-6}) {
                CAPTURE(corrected);
                CAPTURE(static_cast<int>(predictor));
                CAPTURE(eps);
                HybridOptions o;
                o.epsilon = eps;
                o.predictor = predictor;
                const HybridIntegrator h(d, o);
                HybridState s = make_hybrid_state(M);
                for (int n = 0; n < 10; ++n)
                    corrected ? h.berk2_corrected_step(s, 0.01) : h.berk2_step(s, 0.01);
                CHECK(max_diff(s.g.values, M.values) < 1e-12);
                CHECK(s.step_index == 10);
                CHECK(s.t == doctest::Approx(0.1));
            }
        }
    }
}

TEST_CASE("space-homogeneous step equals backward Euler relaxation") {
    const Discretization d(build_mesh(0.0, 1.0, 4), 1, VelocityGrid(40, 8.0));
    KineticField f(40, 4, 2);
    for (std::size_t k = 0; k < 40; ++k) {
        const double v = d.grid.point(k);
        const double val = std::exp(-(v - 1.5) * (v - 1.5)) + 0.5 * std::exp(-2.0 * (v + 1.0) * (v + 1.0));
        for (std::size_t j = 0; j < 8; ++j) f.values[k * 8 + j] = val;
    }
    const double eps = 0.05, dt = 0.02, x = dt / eps;
    HybridOptions o;
    o.epsilon = eps;
    const HybridIntegrator h(d, o);
    HybridState s = make_hybrid_state(f);
    h.berk2_step(s, dt);
    const auto M = maxwellian_field(moment_field(f, d.grid), d.grid);
    for (std::size_t j = 0; j < f.values.size(); ++j)
        CHECK(s.g.values[j] == doctest::Approx((f.values[j] + x * M.values[j]) / (1.0 + x)).epsilon(1e-12));
}

TEST_CASE("collisionless regime is pure implicit advection") {
    const Discretization d(build_mesh(-kPi, kPi, 32), 2, VelocityGrid(40, 7.0));
    const auto q = fill(d, [](double x) { return state(1.0 + 0.5 * std::exp(-4.0 * x * x), 0.0, 1.0); });
    const KineticField g = maxwellian_field(q, d.grid);
    const double eps = 1e12, dt = 0.01;
    HybridOptions o;
    o.epsilon = eps;
    const HybridIntegrator h(d, o);
    HybridState s = make_hybrid_state(g);
    h.berk2_step(s, dt);
    const auto ref = sweep_backward_euler(d.sweeper, g, dt, eps, nullptr, BoundarySpec::periodic(), dt).f;
    CHECK(max_diff(s.g.values, ref.values) < 1e-10);
    const double qc = max_abs(h.last_collided().values);
    const double qu = max_abs(moment_field(ref, d.grid).values);
    CHECK(qc <= 1e-10);
    CHECK(qc <= dt / eps * qu * (1.0 + 10.0 * dt));
}

TEST_CASE("Euler limit matches the predictor-corrector Euler scheme") {
    // without the fix the reconstruction E(M(q)) = q only holds up to velocity
    // truncation, so the grid is wide enough to make that round-off
    const Discretization d(build_mesh(-kPi, kPi, 32), 3, VelocityGrid(100, 13.0));
    const auto q0 = fill(d, [](double x) {
        const double rho = 1.0 + 0.2 * std::sin(10.0 * x);
        return state(rho, 1.0, 1.0);
    });
    const KineticField g0 = maxwellian_field(q0, d.grid);
    const double dt = 0.1 * d.mesh.min_width() / max_wavespeed(q0);
    for (bool corrected : {false, true}) {
        CAPTURE(corrected);
        HybridOptions o;
        o.epsilon = 1e-12;
        const HybridIntegrator h(d, o);
        HybridState s = make_hybrid_state(g0);
        MomentField q = moment_field(g0, d.grid);
        for (int n = 0; n < 5; ++n) {
            corrected ? h.berk2_corrected_step(s, dt) : h.berk2_step(s, dt);
            q = euler_predictor_corrector_step(d.collided, q, dt, BoundaryKind::periodic, {}, {}, {},
                                               d.mesh, d.basis);
        }
        const auto qh = moment_field(s.g, d.grid);
        CHECK(max_diff(qh.values, q.values) < 1e-10);
    }
}

TEST_CASE("literal predictor reduces to forward Euler in the fluid limit") {
    const Discretization d(build_mesh(-kPi, kPi, 16), 2, VelocityGrid(100, 13.0));
    const auto q0 = fill(d, [](double x) { return state(1.0 + 0.2 * std::sin(x), 1.0, 1.0); });
    const KineticField g0 = maxwellian_field(q0, d.grid);
    const MomentField q = moment_field(g0, d.grid);
    const double dt = 0.01;
    HybridOptions o;
    o.epsilon = 1e-12;
    o.predictor = PredictorFlux::step_start;
    const HybridIntegrator h(d, o);
    HybridState s = make_hybrid_state(g0);
    h.berk2_step(s, dt);
    MomentField fe = q;
    axpy(fe, dt, d.collided.flux_divergence(q, BoundaryKind::periodic));
    CHECK(max_diff(moment_field(s.g, d.grid).values, fe.values) < 1e-10);
}

TEST_CASE("corrected step: moments after the fix and conservation") {
    for (double eps : {1.0, 1e-6}) {
        CAPTURE(eps);
        const Discretization d(build_mesh(-kPi, kPi, 32), 2, VelocityGrid(100, 7.0));
        const auto q0 = fill(d, [](double x) { return state(1.0 + 0.2 * std::sin(x), 1.0, 1.0); });
        KineticField g = maxwellian_field(q0, d.grid);
        HybridOptions o;
        o.epsilon = eps;
        const HybridIntegrator h(d, o);
        HybridState s = make_hybrid_state(g);
        const Moments t0 = totals(d, moment_field(g, d.grid));
        const double dt = 0.2 * d.mesh.min_width() / max_wavespeed(q0);
        for (int n = 0; n < 20; ++n) {
            const KineticField before = s.g;
            const Moments tb = totals(d, moment_field(before, d.grid));
            h.berk2_corrected_step(s, dt);
            // E g = q_u + q_c at every node
            auto target = moment_field(
                sweep_backward_euler(d.sweeper, before, dt, eps, nullptr, BoundarySpec::periodic(), s.t).f, d.grid);
            axpy(target, 1.0, h.last_collided());
            const auto got = moment_field(s.g, d.grid);
            for (std::size_t j = 0; j < got.values.size(); ++j)
                CHECK(std::abs(got.values[j] - target.values[j]) <= 1e-12 * (1.0 + std::abs(target.values[j])));
            const Moments ta = totals(d, got);
            for (std::size_t c = 0; c < 3; ++c)
                CHECK(std::abs(ta[c] - tb[c]) <= 1e-11 * std::max(1.0, std::abs(t0[c])));
        }
        CHECK(s.q_c.values == MomentField(32, 3).values);
    }
}

TEST_CASE("time step selection") {
    const auto unit = build_mesh(0.0, 1.0, 1);
    MomentField u(1, 2);
    u.set(0, 0, {1.0, 0.0, 0.5});
    u.set(0, 1, {1.0, 0.0, 0.5});
    CHECK(select_dt(u, 1.0, unit) == doctest::Approx(1.0 / std::sqrt(3.0)));

    const Discretization d(build_mesh(0.0, 1.0, 100), 2, VelocityGrid(10, 6.0));
    const auto sod = fill(d, [](double x) { return x <= 0.5 ? state(1.0, 0.0, 1.0) : state(0.125, 0.0, 0.1); });
    const double dt = select_dt(sod, 0.2, d.mesh);
    CHECK(dt == doctest::Approx(1.155e-3).epsilon(1e-3));
    CHECK(std::ceil(0.1 / dt) == 87.0);

    CHECK_THROWS_AS(select_dt(MomentField(4, 2), 0.2, d.mesh), ConfigError);
    CHECK_THROWS_AS(select_dt(sod, 0.0, d.mesh), ConfigError);

    HybridOptions o;
    const HybridIntegrator h(d, o);
    HybridState s = make_hybrid_state(maxwellian_field(sod, d.grid));
    CHECK_THROWS_AS(h.berk2_step(s, 0.0), ConfigError);
    o.epsilon = 0.0;
    CHECK_THROWS_AS(HybridIntegrator(d, o), ConfigError);
}

TEST_CASE("serial and parallel steps agree") {
    const Discretization d(build_mesh(0.0, 1.0, 50), 2, VelocityGrid(50, 6.0));
    const auto sod = fill(d, [](double x) { return x <= 0.5 ? state(1.0, 0.0, 1.0) : state(0.125, 0.0, 0.1); });
    const KineticField g = maxwellian_field(sod, d.grid);
    KineticField out[2];
    for (int e = 0; e < 2; ++e) {
        HybridOptions o;
        o.epsilon = 1e-2;
        o.bc = BoundarySpec::dirichlet_maxwellian(state(1.0, 0.0, 1.0), state(0.125, 0.0, 0.1));
        o.limiter = {true, 20.0};
        o.exec = e == 0 ? Execution::serial : Execution::parallel;
        const HybridIntegrator h(d, o);
        HybridState s = make_hybrid_state(g);
        for (int n = 0; n < 5; ++n) h.berk2_corrected_step(s, 1e-3);
        out[e] = s.g;
    }
    CHECK(max_diff(out[0].values, out[1].values) < 1e-13);
}

TEST_CASE("with the fix the Euler limit holds on the benchmark velocity grid") {
    const Discretization d(build_mesh(-kPi, kPi, 32), 3, VelocityGrid(100, 7.0));
    const auto q0 = fill(d, [](double x) { return state(1.0 + 0.2 * std::sin(10.0 * x), 1.0, 1.0); });
    const KineticField g0 = maxwellian_field(q0, d.grid);
    const double dt = 0.1 * d.mesh.min_width() / max_wavespeed(q0);
    HybridOptions o;
    o.epsilon = 1e-12;
    const HybridIntegrator h(d, o);
    HybridState s = make_hybrid_state(g0);
    MomentField q = moment_field(g0, d.grid);
    for (int n = 0; n < 5; ++n) {
        h.berk2_corrected_step(s, dt);
        q = euler_predictor_corrector_step(d.collided, q, dt, BoundaryKind::periodic, {}, {}, {}, d.mesh, d.basis);
    }
    CHECK(max_diff(moment_field(s.g, d.grid).values, q.values) < 1e-10);
}
