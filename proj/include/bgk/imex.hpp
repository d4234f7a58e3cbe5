#pragma once

#include "bgk/fields.hpp"
#include "bgk/uncollided.hpp"
#include "bgk/velocity.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace bgk {

/// Paired explicit/implicit Butcher tableaux with a shared stage count.
struct ImexTableau {
    std::string name;
    int order{};
    Eigen::MatrixXd A_explicit;
    Eigen::VectorXd b_explicit;
    Eigen::VectorXd c_explicit;
    Eigen::MatrixXd A_implicit;
    Eigen::VectorXd b_implicit;
    Eigen::VectorXd c_implicit;

    std::size_t stages() const noexcept { return static_cast<std::size_t>(b_explicit.size()); }
};

/// IMEX-SSP2(3,2,2), stiffly accurate, second order.
ImexTableau ssp2_322();
/// IMEX-ARS(4,4,3), third order.
ImexTableau ars_443();
/// Forward Euler paired with backward Euler. First order only.
ImexTableau euler_imex();

struct ConditionCheck {
    std::string name;
    int order{};
    double value{};
    double expected{};
    bool passed{};
};

struct TableauReport {
    bool structure_ok{};
    std::vector<std::string> structure_issues;
    std::vector<ConditionCheck> checks;

    /// Structure holds and every condition up to `order` passes.
    bool satisfies(int order) const noexcept;
    std::vector<std::string> violations() const;
};

/// Checks triangular structure, c = row sums, and the order conditions up to
/// third order for both parts and their coupling. Report only, never throws.
TableauReport validate_tableau(const ImexTableau& tableau, double tol = 1e-13);

/// Optional post-processing of stage values and of the new state, e.g. a limiter.
using StageFilter = std::function<void(KineticField&)>;

/// One step of f_t + v f_x = (M(f) - f)/eps + S with the advection explicit
/// and the relaxation implicit. Stage relaxation solves are closed form
/// because relaxation conserves moments.
KineticField imex_step(const TransportSweeper& sweeper, const VelocityGrid& grid,
                       const KineticField& f, double t, double dt, double epsilon,
                       const ImexTableau& tableau, const BoundarySpec& bc,
                       const KineticField* source, Execution exec = Execution::parallel,
                       const StageFilter& filter = {});

} // namespace bgk
