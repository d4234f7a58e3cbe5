#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../support/oracles.hpp"

#include "bgk/characteristics.hpp"
#include "bgk/errors.hpp"
#include "bgk/uncollided.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace bgk;
using bgk::testing::dense_global_solve;
using bgk::testing::l2_against;
using bgk::testing::sample_kinetic;

namespace {

double max_diff(const KineticField& a, const KineticField& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) m = std::max(m, std::abs(a.values[j] - b.values[j]));
    return m;
}

KineticField random_field(std::size_t nv, std::size_t nx, std::size_t nn, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    KineticField f(nv, nx, nn);
    for (double& x : f.values) x = U(rng);
    return f;
}

} // namespace

TEST_CASE("constant state relaxes without transport") {
    const auto mesh = build_mesh(0.0, 1.0, 10);
    const DGBasis basis(2);
    const VelocityGrid grid(8, 3.0);
    const TransportSweeper sw(mesh, basis, grid);
    const double c = 1.7, tau = 0.05, eps = 0.2;
    const KineticField f(grid.size(), 10, 3, c);
    const double expect = c / (1.0 + tau / eps);

    auto per = sweep_backward_euler(sw, f, tau, eps, nullptr, BoundarySpec::periodic(), tau);
    for (double x : per.f.values) CHECK(x == doctest::Approx(expect).epsilon(1e-13));

    const auto bc = BoundarySpec::dirichlet([&](double, double) { return expect; },
                                            [&](double, double) { return expect; });
    auto dir = sweep_backward_euler(sw, f, tau, eps, nullptr, bc, tau);
    for (double x : dir.f.values) CHECK(x == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("zero velocity row is pure decay") {
    const auto mesh = build_mesh(0.0, 1.0, 6);
    const DGBasis basis(3);
    const VelocityGrid grid(5, 2.0);
    REQUIRE(std::abs(grid.point(2)) < 1e-15);
    const TransportSweeper sw(mesh, basis, grid);
    const auto f = random_field(5, 6, 4, 1);
    const double tau = 0.3, eps = 0.1;
    const auto out = sweep_backward_euler(sw, f, tau, eps, nullptr, BoundarySpec::zero_inflow(), tau);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t l = 0; l < 4; ++l)
            CHECK(out.f(2, i, l) == doctest::Approx(eps / (tau + eps) * f(2, i, l)).epsilon(1e-13));
}

TEST_CASE("sweep equals a dense global solve") {
    const auto mesh = build_mesh(-1.0, 1.0, 8);
    const DGBasis basis(2);
    const VelocityGrid grid(4, 2.0);
    const TransportSweeper sw(mesh, basis, grid);
    const auto rhs = random_field(4, 8, 3, 5);
    const double sigma = 3.0;

    const auto bc = BoundarySpec::dirichlet([](double v, double t) { return 1.0 + v + t; },
                                            [](double v, double t) { return 2.0 - v * t; });
    const auto dense = dense_global_solve(sigma, rhs, mesh, basis, grid, bc, 0.4);
    CHECK(max_diff(sw.solve(sigma, rhs, bc, 0.4, nullptr, Execution::serial).f, dense) < 1e-12);
    CHECK(max_diff(sw.solve_reference(sigma, rhs, bc, 0.4, nullptr).f, dense) < 1e-12);

    const auto per = BoundarySpec::periodic();
    const auto dense_p = dense_global_solve(sigma, rhs, mesh, basis, grid, per, 0.0);
    const auto swept = sw.solve(sigma, rhs, per, 0.0, nullptr);
    CHECK(swept.iterations <= kPeriodicSweepCap);
    CHECK(max_diff(swept.f, dense_p) < 1e-11);
}

TEST_CASE("serial and parallel kernels agree") {
    const auto mesh = build_mesh(0.0, 2.0, 40);
    const DGBasis basis(3);
    const VelocityGrid grid(32, 5.0);
    const TransportSweeper sw(mesh, basis, grid);
    const auto rhs = random_field(32, 40, 4, 9);
    for (const auto& bc : {BoundarySpec::periodic(), BoundarySpec::dirichlet_maxwellian({1, 0, 0.5}, {0.5, 0, 0.2})}) {
        const auto a = sw.solve(50.0, rhs, bc, 0.0, &rhs, Execution::serial);
        const auto b = sw.solve(50.0, rhs, bc, 0.0, &rhs, Execution::parallel);
        const auto r = sw.solve_reference(50.0, rhs, bc, 0.0, &rhs);
        CHECK(max_diff(a.f, b.f) == 0.0);
        CHECK(max_diff(a.f, r.f) < 1e-12);
        const auto da = sw.advection(rhs, bc, 0.0, Execution::serial);
        const auto db = sw.advection(rhs, bc, 0.0, Execution::parallel);
        const auto dr = sw.advection_reference(rhs, bc, 0.0);
        CHECK(max_diff(da, db) == 0.0);
        CHECK(max_diff(da, dr) < 1e-10);
    }
}

TEST_CASE("advection differentiates smooth periodic data") {
    // the upwind derivative of an interpolant is accurate to order N
    const double L = 2.0 * std::numbers::pi;
    const VelocityGrid grid(4, 2.0);
    double prev = 0.0;
    for (std::size_t nx : {16u, 32u}) {
        const auto mesh = build_mesh(0.0, L, nx);
        const DGBasis basis(2);
        const TransportSweeper sw(mesh, basis, grid);
        const auto f = sample_kinetic(mesh, basis, grid, [](double x, std::size_t) { return std::sin(x); });
        const auto d = sw.advection(f, BoundarySpec::periodic(), 0.0);
        double err = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double v = grid.point(k);
            err = std::max(err, l2_against(d.velocity(k), mesh, basis,
                                           [v](double x) { return -v * std::cos(x); }));
        }
        if (prev > 0.0) CHECK(std::log2(prev / err) > 1.8);
        prev = err;
    }
}

TEST_CASE("ghost values") {
    const VelocityGrid grid(4, 2.0);
    KineticField f(4, 5, 3);
    for (std::size_t j = 0; j < f.values.size(); ++j) f.values[j] = static_cast<double>(j);
    const auto left = apply_boundary(BoundarySpec::periodic(), Side::left, 3, 0.0, f, grid);
    for (std::size_t l = 0; l < 3; ++l) CHECK(left[l] == f(3, 4, l));
    const auto right = apply_boundary(BoundarySpec::periodic(), Side::right, 0, 0.0, f, grid);
    for (std::size_t l = 0; l < 3; ++l) CHECK(right[l] == f(0, 0, l));

    const Moments sod_left = primitives_to_moments({1.0, 0.0, 1.0});
    const auto bc = BoundarySpec::dirichlet_maxwellian(sod_left, primitives_to_moments({0.125, 0.0, 0.8}));
    const auto g = apply_boundary(bc, Side::left, 3, 0.0, f, grid);
    for (double x : g) CHECK(x == doctest::Approx(maxwellian_at(Moments{1.0, 0.0, 0.5}, grid.point(3))));

    const auto z = apply_boundary(BoundarySpec::zero_inflow(), Side::right, 0, 0.0, f, grid);
    for (double x : z) CHECK(x == 0.0);
}

TEST_CASE("characteristics oracle") {
    const auto sine = [](double x) { return std::sin(x); };
    const auto one = [](double) { return 1.0; };
    const double x = 0.3, v = 0.7, t = 0.2;
    CHECK(exact_uncollided_oracle(x, v, t, 0.0, sine, one, 1e12, -5.0, 5.0) ==
          doctest::Approx(std::sin(x - v * t)));
    // characteristic starts on the left boundary at t* = t - (x - x_left)/v
    const double val = exact_uncollided_oracle(-4.9, 1.0, 0.5, 0.0, sine, one, 2.0, -5.0, 5.0);
    CHECK(val == doctest::Approx(std::exp(-0.1 / 2.0)));
    CHECK(exact_uncollided_oracle(0.0, 1.0, 0.01, 0.0, one, one, 1e-6, -5.0, 5.0) < 1e-300);
    CHECK(exact_uncollided_oracle(0.4, 0.0, 1.0, 0.0, sine, one, 1.0, -5.0, 5.0) ==
          doctest::Approx(std::exp(-1.0) * std::sin(0.4)));
}

TEST_CASE("steady damped inflow converges at order N+1") {
    // sigma f + v f_x = 0 with inflow 1 is the large-time limit of the oracle
    const double eps = 0.5;
    const VelocityGrid grid(2, 1.0);
    for (int N = 1; N <= 3; ++N) {
        CAPTURE(N);
        std::vector<double> errs;
        for (std::size_t nx : {8u, 16u, 32u}) {
            const auto mesh = build_mesh(0.0, 1.0, nx);
            const DGBasis basis(N);
            const TransportSweeper sw(mesh, basis, grid);
            const KineticField zero(2, nx, basis.size());
            const auto bc = BoundarySpec::dirichlet([](double, double) { return 1.0; },
                                                    [](double, double) { return 1.0; });
            const auto f = sw.solve(1.0 / eps, zero, bc, 0.0, nullptr).f;
            double e = 0.0;
            for (std::size_t k = 0; k < 2; ++k) {
                const double v = grid.point(k);
                auto exact = [&](double xx) {
                    return exact_uncollided_oracle(xx, v, 100.0, 0.0, [](double) { return 0.0; },
                                                   [](double) { return 1.0; }, eps, 0.0, 1.0);
                };
                e = std::max(e, l2_against(f.velocity(k), mesh, basis, exact));
            }
            errs.push_back(e);
        }
        const double order = std::log2(errs[1] / errs[2]);
        CHECK(order > N + 1 - 0.3);
    }
}

TEST_CASE("backward Euler pulse against the oracle") {
    // collisionless Gaussian pulse; the error is first order in tau on a fine mesh
    const double eps = 1e12;
    const auto mesh = build_mesh(-1.0, 1.0, 200);
    const DGBasis basis(3);
    const VelocityGrid grid(2, 1.0);
    const TransportSweeper sw(mesh, basis, grid);
    const auto pulse = [](double x) { return std::exp(-x * x / 0.02); };
    const auto f0 = sample_kinetic(mesh, basis, grid, [&](double x, std::size_t) { return pulse(x); });
    std::vector<double> errs;
    for (double tau : {0.02, 0.01}) {
        KineticField f = f0;
        const int steps = static_cast<int>(std::lround(0.1 / tau));
        for (int s = 0; s < steps; ++s)
            f = sweep_backward_euler(sw, f, tau, eps, nullptr, BoundarySpec::zero_inflow(), 0.0).f;
        const double v = grid.point(1);
        errs.push_back(l2_against(f.velocity(1), mesh, basis, [&](double x) {
            return exact_uncollided_oracle(x, v, 0.1, 0.0, pulse, [](double) { return 0.0; }, eps, -1.0, 1.0);
        }));
    }
    CHECK(std::log2(errs[0] / errs[1]) == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("backward Euler damps toward zero for stiff relaxation") {
    const auto mesh = build_mesh(0.0, 1.0, 20);
    const DGBasis basis(0);
    const VelocityGrid grid(6, 3.0);
    const TransportSweeper sw(mesh, basis, grid);
    const auto f = sample_kinetic(mesh, basis, grid, [](double x, std::size_t) { return 1.0 + x; });
    const double tau = 1e-3, eps = 1e-8;
    const auto out = sweep_backward_euler(sw, f, tau, eps, nullptr, BoundarySpec::zero_inflow(), tau).f;
    double m = 0.0;
    for (double x : out.values) {
        CHECK(x >= 0.0);
        m = std::max(m, std::abs(x));
    }
    CHECK(m <= 2.0 * eps / (tau + eps) * (1.0 + 1e-12));
}

TEST_CASE("BDF2 step: fixed point and scalar decay") {
    const auto mesh = build_mesh(0.0, 1.0, 6);
    const DGBasis basis(2);
    const VelocityGrid grid(6, 3.0);
    const TransportSweeper sw(mesh, basis, grid);
    const double dt = 0.1, eps = 0.03;

    KineticField M(6, 6, 3);
    for (std::size_t k = 0; k < 6; ++k)
        for (std::size_t j = 0; j < 18; ++j) M.values[k * 18 + j] = maxwellian_at(Moments{1.0, 0.2, 0.7}, grid.point(k));
    const auto same = sweep_bdf2_with_source(sw, M, M, dt, eps, M, nullptr, BoundarySpec::periodic(), dt);
    CHECK(max_diff(same.f, M) < 1e-13);

    const double c = 0.8;
    const KineticField g(6, 6, 3, c), zero(6, 6, 3);
    const auto out = sweep_bdf2_with_source(sw, g, g, dt, eps, zero, nullptr, BoundarySpec::periodic(), dt);
    for (double x : out.f.values) CHECK(x == doctest::Approx(c * 3.0 * eps / (3.0 * eps + dt)).epsilon(1e-13));

    CHECK_THROWS_AS(sweep_bdf2_with_source(sw, g, KineticField(6, 5, 3), dt, eps, zero, nullptr,
                                           BoundarySpec::periodic(), dt),
                    ConfigError);
    CHECK_THROWS_AS(sweep_backward_euler(sw, g, 0.0, eps, nullptr, BoundarySpec::periodic(), 0.0),
                    ConfigError);
}

TEST_CASE("BDF2 manufactured solution is second order in time") {
    // f = sin(x) e^{-t}, M = 0, S = (-sin x + v cos x + sin x / eps) e^{-t}
    const double L = 2.0 * std::numbers::pi, eps = 1.0;
    const auto mesh = build_mesh(0.0, L, 64);
    const DGBasis basis(3);
    const VelocityGrid grid(4, 2.0);
    const TransportSweeper sw(mesh, basis, grid);
    auto exact = [&](double t) {
        return sample_kinetic(mesh, basis, grid, [&](double x, std::size_t) { return std::sin(x) * std::exp(-t); });
    };
    auto source = [&](double t) {
        return sample_kinetic(mesh, basis, grid, [&](double x, std::size_t k) {
            const double v = grid.point(k);
            return (-std::sin(x) + v * std::cos(x) + std::sin(x) / eps) * std::exp(-t);
        });
    };
    const KineticField zero(4, 64, 4);
    std::vector<double> errs;
    for (double h : {0.1, 0.05, 0.025}) {
        KineticField prev = exact(0.0), cur = exact(h);
        const int steps = static_cast<int>(std::lround(1.0 / h));
        for (int m = 1; m < steps; ++m) {
            const double t_next = (m + 1) * h;
            const auto S = source(t_next);
            auto next = sweep_bdf2_with_source(sw, cur, prev, 2.0 * h, eps, zero, &S,
                                               BoundarySpec::periodic(), t_next).f;
            prev = std::move(cur);
            cur = std::move(next);
        }
        errs.push_back(max_diff(cur, exact(1.0)));
    }
    CHECK(std::log2(errs[0] / errs[1]) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(std::log2(errs[1] / errs[2]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("periodic sweeps converge quickly on benchmark-like data") {
    const auto mesh = build_mesh(-std::numbers::pi, std::numbers::pi, 64);
    const DGBasis basis(3);
    const VelocityGrid grid(100, 7.0);
    const TransportSweeper sw(mesh, basis, grid);
    const auto f = sample_kinetic(mesh, basis, grid, [&](double x, std::size_t k) {
        return maxwellian_at(primitives_to_moments({1.0 + 0.2 * std::sin(10 * x), 1.0, 1.0 / (1.0 + 0.2 * std::sin(10 * x))}),
                             grid.point(k));
    });
    const auto r = sweep_backward_euler(sw, f, 1e-3, 1.0, nullptr, BoundarySpec::periodic(), 0.0);
    CHECK(r.iterations <= kPeriodicSweepCap);
    CHECK(all_finite(r.f.values));
}
