#pragma once

#include "bgk/fields.hpp"
#include "bgk/hybrid.hpp"
#include "bgk/problems.hpp"

#include <functional>
#include <vector>

namespace bgk {

struct RunOptions {
    Execution exec{Execution::parallel};
    /// Called after every step with the report and the step count so far.
    std::function<void(const StepReport&, std::size_t)> on_step{};
};

struct RunResult {
    ProblemConfig config;
    MomentField moments;
    /// Node positions and primitives in cell-major node order.
    std::vector<double> x;
    std::vector<Primitives> primitives;
    std::size_t steps{};
    double lambda_min{};
    double lambda_max{};
    double wall_time{};
    double t_final{};
    std::vector<StepReport> reports;

    std::vector<double> density() const;
};

/// Primitives without admissibility checks; used for output only.
Primitives primitives_unchecked(const Moments& q) noexcept;

/// Steps the configured scheme from the Maxwellian initial data to t_final.
/// Step failures propagate as StepFailure naming the step index.
RunResult run(const ProblemConfig& cfg, const RunOptions& options = {});

} // namespace bgk
