#include "bgk/imex.hpp"

#include "bgk/errors.hpp"

#include <cmath>
#include <sstream>

namespace bgk {

namespace {

Eigen::MatrixXd lower(std::initializer_list<std::initializer_list<double>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double a : row) A(i, j++) = a;
        ++i;
    }
    return A;
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

} // namespace

ImexTableau ssp2_322() {
    ImexTableau t;
    t.name = "SSP2(3,2,2)";
    t.order = 2;
    t.A_explicit = lower({{0.0}, {0.0, 0.0}, {0.0, 1.0, 0.0}});
    t.b_explicit = vec({0.0, 0.5, 0.5});
    t.c_explicit = vec({0.0, 0.0, 1.0});
    t.A_implicit = lower({{0.5}, {-0.5, 0.5}, {0.0, 0.5, 0.5}});
    t.b_implicit = vec({0.0, 0.5, 0.5});
    t.c_implicit = vec({0.5, 0.0, 1.0});
    return t;
}

ImexTableau ars_443() {
    ImexTableau t;
    t.name = "ARS(4,4,3)";
    t.order = 3;
    t.A_explicit = lower({{0.0},
                          {0.5},
                          {11.0 / 18.0, 1.0 / 18.0},
                          {5.0 / 6.0, -5.0 / 6.0, 0.5},
                          {0.25, 1.75, 0.75, -1.75}});
    t.b_explicit = vec({0.25, 1.75, 0.75, -1.75, 0.0});
    t.c_explicit = vec({0.0, 0.5, 2.0 / 3.0, 0.5, 1.0});
    t.A_implicit = lower({{0.0},
                          {0.0, 0.5},
                          {0.0, 1.0 / 6.0, 0.5},
                          {0.0, -0.5, 0.5, 0.5},
                          {0.0, 1.5, -1.5, 0.5, 0.5}});
    t.b_implicit = vec({0.0, 1.5, -1.5, 0.5, 0.5});
    t.c_implicit = vec({0.0, 0.5, 2.0 / 3.0, 0.5, 1.0});
    return t;
}

ImexTableau euler_imex() {
    ImexTableau t;
    t.name = "forward/backward Euler";
    t.order = 1;
    t.A_explicit = lower({{0.0}});
    t.b_explicit = vec({1.0});
    t.c_explicit = vec({0.0});
    t.A_implicit = lower({{1.0}});
    t.b_implicit = vec({1.0});
    t.c_implicit = vec({1.0});
    return t;
}

bool TableauReport::satisfies(int order) const noexcept {
    if (!structure_ok) return false;
    for (const auto& c : checks)
        if (c.order <= order && !c.passed) return false;
    return true;
}

std::vector<std::string> TableauReport::violations() const {
    std::vector<std::string> out = structure_issues;
    for (const auto& c : checks) {
        if (c.passed) continue;
        std::ostringstream os;
        os << c.name << " = " << c.value << " (expected " << c.expected << ")";
        out.push_back(os.str());
    }
    return out;
}

TableauReport validate_tableau(const ImexTableau& t, double tol) {
    TableauReport report;
    const auto s = static_cast<Eigen::Index>(t.stages());
    auto issue = [&](const std::string& msg) { report.structure_issues.push_back(msg); };

    const bool shapes = t.A_explicit.rows() == s && t.A_explicit.cols() == s &&
                        t.A_implicit.rows() == s && t.A_implicit.cols() == s &&
                        t.b_implicit.size() == s && t.c_explicit.size() == s &&
                        t.c_implicit.size() == s;
    if (!shapes) {
        issue("inconsistent stage counts");
        report.structure_ok = false;
        return report;
    }
    for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = i; j < s; ++j)
            if (t.A_explicit(i, j) != 0.0) issue("explicit part not strictly lower triangular");
        for (Eigen::Index j = i + 1; j < s; ++j)
            if (t.A_implicit(i, j) != 0.0) issue("implicit part not lower triangular");
        if (std::abs(t.A_explicit.row(i).sum() - t.c_explicit(i)) > tol)
            issue("explicit c differs from row sum at stage " + std::to_string(i + 1));
        if (std::abs(t.A_implicit.row(i).sum() - t.c_implicit(i)) > tol)
            issue("implicit c differs from row sum at stage " + std::to_string(i + 1));
    }
    report.structure_ok = report.structure_issues.empty();

    struct Part {
        const char* tag;
        const Eigen::MatrixXd* A;
        const Eigen::VectorXd* b;
        const Eigen::VectorXd* c;
    };
    const Part parts[2] = {{"E", &t.A_explicit, &t.b_explicit, &t.c_explicit},
                           {"I", &t.A_implicit, &t.b_implicit, &t.c_implicit}};
    auto add = [&](std::string name, int order, double value, double expected) {
        report.checks.push_back({std::move(name), order, value, expected,
                                 std::abs(value - expected) <= tol});
    };

    for (const auto& x : parts) add(std::string("sum b") + x.tag, 1, x.b->sum(), 1.0);
    for (const auto& x : parts)
        for (const auto& y : parts)
            add(std::string("b") + x.tag + " c" + y.tag, 2, x.b->dot(*y.c), 0.5);
    for (const auto& x : parts)
        for (const auto& y : parts)
            for (const auto& z : parts) {
                add(std::string("b") + x.tag + " c" + y.tag + " c" + z.tag, 3,
                    x.b->dot(y.c->cwiseProduct(*z.c)), 1.0 / 3.0);
                add(std::string("b") + x.tag + " A" + y.tag + " c" + z.tag, 3,
                    x.b->dot(*y.A * *z.c), 1.0 / 6.0);
            }
    return report;
}

KineticField imex_step(const TransportSweeper& sweeper, const VelocityGrid& grid,
                       const KineticField& f, double t, double dt, double epsilon,
                       const ImexTableau& tab, const BoundarySpec& bc, const KineticField* source,
                       Execution exec, const StageFilter& filter) {
    if (!(dt > 0.0) || !(epsilon > 0.0))
        throw ConfigError("imex_step: dt and epsilon must be positive");
    const auto s = static_cast<Eigen::Index>(tab.stages());
    std::vector<KineticField> T(static_cast<std::size_t>(s));
    std::vector<KineticField> R(static_cast<std::size_t>(s));

    auto needed = [&](const Eigen::MatrixXd& A, const Eigen::VectorXd& b, Eigen::Index j) {
        return b(j) != 0.0 || A.col(j).tail(s - j - 1).cwiseAbs().sum() != 0.0;
    };

    for (Eigen::Index i = 0; i < s; ++i) {
        KineticField stage = f;
        for (Eigen::Index j = 0; j < i; ++j) {
            if (tab.A_explicit(i, j) != 0.0) axpy(stage, dt * tab.A_explicit(i, j), T[j]);
            if (tab.A_implicit(i, j) != 0.0) axpy(stage, dt * tab.A_implicit(i, j), R[j]);
        }
        if (filter) filter(stage);
        const double a_ii = tab.A_implicit(i, i);
        const bool need_R = needed(tab.A_implicit, tab.b_implicit, i);
        if (a_ii != 0.0) {
            // relaxation leaves moments unchanged, so M is known before solving
            const MomentField q = moment_field(stage, grid);
            KineticField M = maxwellian_field(q, grid);
            conservation_fix_field(M, q, grid);
            const double k = dt * a_ii / epsilon;
            const double inv = 1.0 / (1.0 + k);
            KineticField solved(stage.n_v, stage.n_x, stage.n_nodes);
            for (std::size_t j = 0; j < solved.values.size(); ++j)
                solved.values[j] = (stage.values[j] + k * M.values[j]) * inv;
            if (need_R) {
                KineticField r(stage.n_v, stage.n_x, stage.n_nodes);
                const double scale = 1.0 / (dt * a_ii);
                for (std::size_t j = 0; j < r.values.size(); ++j)
                    r.values[j] = (solved.values[j] - stage.values[j]) * scale;
                R[i] = std::move(r);
            }
            stage = std::move(solved);
        } else if (need_R) {
            const MomentField q = moment_field(stage, grid);
            KineticField M = maxwellian_field(q, grid);
            conservation_fix_field(M, q, grid);
            KineticField r = std::move(M);
            axpy(r, -1.0, stage);
            for (double& x : r.values) x /= epsilon;
            R[i] = std::move(r);
        }
        if (needed(tab.A_explicit, tab.b_explicit, i)) {
            T[i] = sweeper.advection(stage, bc, t + tab.c_explicit(i) * dt, exec);
            if (source) axpy(T[i], 1.0, *source);
        }
    }

    KineticField next = f;
    for (Eigen::Index i = 0; i < s; ++i) {
        if (tab.b_explicit(i) != 0.0) axpy(next, dt * tab.b_explicit(i), T[i]);
        if (tab.b_implicit(i) != 0.0) axpy(next, dt * tab.b_implicit(i), R[i]);
    }
    if (filter) filter(next);
    if (!all_finite(next.values)) throw StepFailure("imex_step: non-finite distribution");
    return next;
}

} // namespace bgk
