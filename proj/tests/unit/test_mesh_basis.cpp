#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bgk/basis.hpp"
#include "bgk/errors.hpp"
#include "bgk/mesh.hpp"
#include "bgk/quadrature.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace bgk;

TEST_CASE("build_mesh: uniform cells") {
    const auto m = build_mesh(0.0, 1.0, 100);
    REQUIRE(m.n_cells == 100);
    for (double h : m.widths) CHECK(h == doctest::Approx(0.01).epsilon(1e-13));

    const auto one = build_mesh(-1.0, 1.0, 1);
    REQUIRE(one.edges.size() == 2);
    CHECK(one.edges[0] == -1.0);
    CHECK(one.edges[1] == 1.0);

    const auto g = build_mesh(-10.0, 10.0, 200);
    for (std::size_t i = 0; i < g.n_cells; ++i) {
        CHECK(g.widths[i] == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(g.centers[i] == doctest::Approx(-9.95 + 0.1 * static_cast<double>(i)).epsilon(1e-12));
    }
    double sum = 0.0;
    for (double h : g.widths) sum += h;
    CHECK(std::abs(sum - 20.0) <= 1e-13 * 20.0);
}

TEST_CASE("build_mesh: rejects degenerate input") {
    CHECK_THROWS_AS(build_mesh(1.0, 1.0, 4), ConfigError);
    CHECK_THROWS_AS(build_mesh(2.0, 1.0, 4), ConfigError);
    CHECK_THROWS_AS(build_mesh(0.0, 1.0, 0), ConfigError);
}

TEST_CASE("basis nodes and weights") {
    const DGBasis b1(1);
    CHECK(b1.nodes() == std::vector<double>{-1.0, 1.0});
    CHECK(b1.node_weights()[0] == doctest::Approx(1.0));
    CHECK(b1.node_weights()[1] == doctest::Approx(1.0));

    const DGBasis b2(2);
    CHECK(b2.nodes()[0] == doctest::Approx(-1.0));
    CHECK(std::abs(b2.nodes()[1]) < 1e-15);
    CHECK(b2.nodes()[2] == doctest::Approx(1.0));
    CHECK(b2.node_weights()[0] == doctest::Approx(1.0 / 3.0));
    CHECK(b2.node_weights()[1] == doctest::Approx(4.0 / 3.0));
    double x2 = 0.0;
    for (std::size_t l = 0; l < 3; ++l) x2 += b2.node_weights()[l] * b2.nodes()[l] * b2.nodes()[l];
    CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    const DGBasis b3(3);
    const double r = 1.0 / std::sqrt(5.0);
    CHECK(b3.nodes()[1] == doctest::Approx(-r).epsilon(1e-14));
    CHECK(b3.nodes()[2] == doctest::Approx(r).epsilon(1e-14));
    // degree 5 exactness: int x^4 = 2/5, int x^5 = 0
    double x4 = 0.0, x5 = 0.0;
    for (std::size_t l = 0; l < 4; ++l) {
        x4 += b3.node_weights()[l] * std::pow(b3.nodes()[l], 4);
        x5 += b3.node_weights()[l] * std::pow(b3.nodes()[l], 5);
    }
    CHECK(x4 == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(std::abs(x5) < 1e-15);

    const DGBasis b0(0);
    REQUIRE(b0.size() == 1);
    CHECK(b0.nodes()[0] == 0.0);
}

TEST_CASE("lagrange polynomials are cardinal") {
    for (int n = 0; n <= 6; ++n) {
        const DGBasis b(n);
        for (std::size_t l = 0; l < b.size(); ++l)
            for (std::size_t m = 0; m < b.size(); ++m)
                CHECK(b.lagrange(l, b.nodes()[m]) == doctest::Approx(l == m ? 1.0 : 0.0));
    }
}

TEST_CASE("element matrices for N = 1") {
    const auto M = element_matrices(DGBasis(1));
    CHECK(M.J(0, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(M.J(0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(M.J(1, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(M.J(1, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(M.K(0, 0) == doctest::Approx(-0.5));
    CHECK(M.K(0, 1) == doctest::Approx(-0.5));
    CHECK(M.K(1, 0) == doctest::Approx(0.5));
    CHECK(M.K(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("element matrices: N = 0 convention") {
    const auto M = element_matrices(DGBasis(0));
    CHECK(M.J(0, 0) == doctest::Approx(2.0));
    CHECK(std::abs(M.K(0, 0)) < 1e-15);
}

TEST_CASE("trace identity and lifting structure") {
    for (int n = 0; n <= 6; ++n) {
        CAPTURE(n);
        const auto M = element_matrices(DGBasis(n));
        const Eigen::MatrixXd lhs = M.K + M.K.transpose();
        const Eigen::MatrixXd rhs = M.L1 - M.L4;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
        const auto last = static_cast<Eigen::Index>(n);
        for (Eigen::Index i = 0; i <= last; ++i)
            for (Eigen::Index j = 0; j <= last; ++j)
                CHECK(M.L2(i, j) == ((i == 0 && j == last) ? 1.0 : 0.0));
    }
}

TEST_CASE("mass matrix against monomial integrals") {
    // J entries equal int p_l p_m, checked by an independent high-order rule
    for (int n = 1; n <= 8; ++n) {
        CAPTURE(n);
        const DGBasis b(n);
        const auto M = element_matrices(b);
        const auto rule = gauss_legendre(n + 4);
        for (std::size_t l = 0; l < b.size(); ++l)
            for (std::size_t m = 0; m < b.size(); ++m) {
                double J = 0.0, K = 0.0;
                for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                    J += rule.weights[q] * b.lagrange(l, rule.nodes[q]) * b.lagrange(m, rule.nodes[q]);
                    K += rule.weights[q] * b.lagrange_derivative(l, rule.nodes[q]) *
                         b.lagrange(m, rule.nodes[q]);
                }
                const auto L = static_cast<Eigen::Index>(l), Mi = static_cast<Eigen::Index>(m);
                CHECK(std::abs(M.J(L, Mi) - J) < 1e-12);
                CHECK(std::abs(M.K(L, Mi) - K) < 1e-11);
            }
        // invertibility
        Eigen::VectorXd rhs = Eigen::VectorXd::LinSpaced(n + 1, 1.0, 2.0);
        Eigen::VectorXd y = M.J.lu().solve(rhs);
        CHECK((M.J * y - rhs).norm() < 1e-12);
    }
}

TEST_CASE("gauss-legendre exactness") {
    for (int n = 1; n <= 6; ++n) {
        const auto rule = gauss_legendre(n);
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0.0;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q)
                s += rule.weights[q] * std::pow(rule.nodes[q], p);
            const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
            CHECK(std::abs(s - exact) < 1e-13);
        }
    }
}

TEST_CASE("evaluate_field") {
    const auto mesh = build_mesh(-1.0, 2.0, 5);
    for (int n = 0; n <= 3; ++n) {
        const DGBasis b(n);
        std::vector<double> c(mesh.n_cells * b.size(), 3.5);
        for (double x : {-1.0, 0.1, 0.6, 2.0}) CHECK(evaluate_field(c, x, mesh, b) == doctest::Approx(3.5));
    }
    const DGBasis b(2);
    std::vector<double> lin(mesh.n_cells * b.size());
    for (std::size_t i = 0; i < mesh.n_cells; ++i)
        for (std::size_t l = 0; l < b.size(); ++l) lin[i * 3 + l] = mesh.map_to_physical(i, b.nodes()[l]);
    for (double x : {-0.93, 0.0, 0.77, 1.99}) CHECK(evaluate_field(lin, x, mesh, b) == doctest::Approx(x));

    CHECK_THROWS_AS(evaluate_field(lin, 2.5, mesh, b), DomainError);
    CHECK_THROWS_AS(evaluate_field(lin, -1.01, mesh, b), DomainError);
}

TEST_CASE("evaluate_field recovers a random polynomial") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto mesh = build_mesh(0.0, 1.0, 4);
    for (int n = 1; n <= 4; ++n) {
        const DGBasis b(n);
        std::vector<double> a(static_cast<std::size_t>(n) + 1);
        for (double& x : a) x = u(rng);
        auto poly = [&](double x) {
            double s = 0.0;
            for (std::size_t p = a.size(); p-- > 0;) s = s * x + a[p];
            return s;
        };
        std::vector<double> c(mesh.n_cells * b.size());
        for (std::size_t i = 0; i < mesh.n_cells; ++i)
            for (std::size_t l = 0; l < b.size(); ++l)
                c[i * b.size() + l] = poly(mesh.map_to_physical(i, b.nodes()[l]));
        for (int j = 0; j < 20; ++j) {
            const double x = 0.5 + 0.5 * u(rng);
            CHECK(std::abs(evaluate_field(c, x, mesh, b) - poly(x)) < 1e-12);
        }
    }
}

TEST_CASE("interior edges take the left trace") {
    const auto mesh = build_mesh(0.0, 2.0, 2);
    const DGBasis b(1);
    std::vector<double> c{0.0, 1.0, 5.0, 6.0};
    CHECK(evaluate_field(c, 1.0, mesh, b) == doctest::Approx(1.0));
    CHECK(locate_cell(mesh, 1.0) == 0);
    CHECK(locate_cell(mesh, 1.0 + 1e-12) == 1);
}
