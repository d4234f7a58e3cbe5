#pragma once

#include "bgk/run.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bgk {

/// `x,rho,u,theta` at every DG node, 12 significant digits.
void write_solution_csv(const RunResult& result, const std::filesystem::path& path);

struct SolutionTable {
    std::vector<double> x, rho, u, theta;
};
SolutionTable read_solution_csv(const std::filesystem::path& path);

struct ConvergenceRow {
    std::size_t n_x{};
    double error{};
    /// Order against the previous row; NaN on the first row.
    double order{};
};

/// Fills the order column from consecutive errors (mesh halving assumed).
std::vector<ConvergenceRow> convergence_rows(const std::vector<std::size_t>& n_x,
                                             const std::vector<double>& errors);
/// `N_x,error,order`; the first order entry is `-`.
void write_convergence_table(const std::vector<ConvergenceRow>& rows,
                             const std::filesystem::path& path);

/// JSON manifest: config echo, step count, lambda range, wall time.
void write_manifest(const RunResult& result, const std::filesystem::path& path);
ProblemConfig read_manifest_config(const std::filesystem::path& path);

/// Writes solution.csv and manifest.json into `dir`, creating it.
void emit_run(const RunResult& result, const std::filesystem::path& dir);

} // namespace bgk
