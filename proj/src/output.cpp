#include "bgk/output.hpp"

#include "bgk/config.hpp"
#include "bgk/errors.hpp"
#include "bgk/metrics.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace bgk {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace

void write_solution_csv(const RunResult& result, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "x,rho,u,theta\n";
    for (std::size_t j = 0; j < result.x.size(); ++j) {
        const auto& p = result.primitives[j];
        out << g12(result.x[j]) << ',' << g12(p.rho) << ',' << g12(p.u) << ',' << g12(p.theta)
            << '\n';
    }
    check_written(out, path);
}

SolutionTable read_solution_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != "x,rho,u,theta")
        throw std::runtime_error(path.string() + ": unexpected header '" + line + "'");
    SolutionTable t;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        double vals[4];
        for (double& v : vals) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error(path.string() + ": short row '" + line + "'");
            v = std::stod(cell);
        }
        t.x.push_back(vals[0]);
        t.rho.push_back(vals[1]);
        t.u.push_back(vals[2]);
        t.theta.push_back(vals[3]);
    }
    return t;
}

std::vector<ConvergenceRow> convergence_rows(const std::vector<std::size_t>& n_x,
                                             const std::vector<double>& errors) {
    std::vector<ConvergenceRow> rows;
    for (std::size_t j = 0; j < n_x.size(); ++j) {
        double order = std::numeric_limits<double>::quiet_NaN();
        if (j > 0) {
            const double h[2] = {1.0 / static_cast<double>(n_x[j - 1]), 1.0 / static_cast<double>(n_x[j])};
            const double e[2] = {errors[j - 1], errors[j]};
            order = convergence_order(e, h).front();
        }
        rows.push_back({n_x[j], errors[j], order});
    }
    return rows;
}

void write_convergence_table(const std::vector<ConvergenceRow>& rows,
                             const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "N_x,error,order\n";
    for (const auto& r : rows)
        out << r.n_x << ',' << g12(r.error) << ',' << (std::isnan(r.order) ? "-" : g12(r.order))
            << '\n';
    check_written(out, path);
}

void write_manifest(const RunResult& result, const std::filesystem::path& path) {
    nlohmann::json j;
    j["config"] = to_key_values(result.config);
    j["steps"] = result.steps;
    j["t_final"] = result.t_final;
    j["lambda_min"] = result.lambda_min;
    j["lambda_max"] = result.lambda_max;
    j["wall_time_seconds"] = result.wall_time;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    check_written(out, path);
}

ProblemConfig read_manifest_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    if (!j.contains("config")) throw ConfigError(path.string() + ": no config section");
    return config_from_key_values(j.at("config").get<std::map<std::string, std::string>>());
}

void emit_run(const RunResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    write_solution_csv(result, dir / "solution.csv");
    write_manifest(result, dir / "manifest.json");
}

} // namespace bgk
