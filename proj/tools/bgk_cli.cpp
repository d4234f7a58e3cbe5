// Command line front end: solve, converge, compare.

#include "bgk/config.hpp"
#include "bgk/errors.hpp"
#include "bgk/metrics.hpp"
#include "bgk/output.hpp"
#include "bgk/problems.hpp"
#include "bgk/run.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace bgk;

namespace {

struct SolveArgs {
    std::string problem{"sod"};
    std::optional<std::string> scheme;
    std::optional<std::size_t> nx, nv;
    std::optional<int> order;
    std::optional<double> eps, cfl, tfinal;
    std::optional<std::string> limiter;
    std::optional<std::string> predictor;
    std::string config_file;
    std::vector<std::string> sets;
    std::string out;
    bool serial{false};
    bool quiet{false};
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::map<std::string, std::string> overrides_of(const SolveArgs& a) {
    std::map<std::string, std::string> o;
    if (!a.config_file.empty()) o = read_key_values(a.config_file);
    for (const auto& s : a.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
        o[s.substr(0, eq)] = s.substr(eq + 1);
    }
    if (a.scheme) o["scheme"] = *a.scheme;
    if (a.nx) o["n_x"] = std::to_string(*a.nx);
    if (a.nv) o["n_v"] = std::to_string(*a.nv);
    if (a.order) o["degree"] = std::to_string(*a.order);
    if (a.eps) o["epsilon"] = fmt(*a.eps);
    if (a.cfl) o["cfl"] = fmt(*a.cfl);
    if (a.tfinal) o["t_final"] = fmt(*a.tfinal);
    if (a.limiter) o["limiter"] = *a.limiter;
    if (a.predictor) o["predictor"] = *a.predictor;
    return o;
}

std::string problem_name(const SolveArgs& a) {
    if (!a.config_file.empty()) {
        const auto kv = read_key_values(a.config_file);
        if (auto it = kv.find("name"); it != kv.end()) return it->second;
    }
    return a.problem;
}

void add_common(CLI::App* cmd, SolveArgs& a) {
    cmd->add_option("--problem", a.problem, "asymptotic|accuracy|sod|lax|shu-osher|gas-injection");
    cmd->add_option("--scheme", a.scheme, "berk2|berk2-corrected|imex2|imex3|euler-only");
    cmd->add_option("--nx", a.nx, "spatial cells");
    cmd->add_option("--nv", a.nv, "velocity points");
    cmd->add_option("--order", a.order, "polynomial degree N of the DG basis");
    cmd->add_option("--eps", a.eps, "Knudsen number");
    cmd->add_option("--cfl", a.cfl, "CFL constant C");
    cmd->add_option("--tfinal", a.tfinal, "final time");
    cmd->add_option("--limiter", a.limiter, "on|off");
    cmd->add_option("--predictor", a.predictor, "source-updated|step-start");
    cmd->add_option("--config", a.config_file, "key = value config file");
    cmd->add_option("--set", a.sets, "extra key=value override (repeatable)");
    cmd->add_flag("--serial", a.serial, "disable OpenMP in the kernels");
    cmd->add_flag("--quiet", a.quiet, "no per-run summary");
}

RunOptions run_options(const SolveArgs& a) {
    RunOptions o;
    o.exec = a.serial ? Execution::serial : Execution::parallel;
    return o;
}

void print_summary(const RunResult& r) {
    std::printf("%s %s nx=%zu nv=%zu N=%d eps=%g: %zu steps, lambda %.4f-%.4f, %.2f s\n",
                r.config.name.c_str(), to_string(r.config.scheme).c_str(), r.config.n_x,
                r.config.n_v, r.config.degree, r.config.epsilon, r.steps, r.lambda_min,
                r.lambda_max, r.wall_time);
}

int do_solve(const SolveArgs& a) {
    const ProblemConfig cfg = build_problem(problem_name(a), overrides_of(a));
    const RunResult r = run(cfg, run_options(a));
    if (!a.quiet) print_summary(r);
    if (!a.out.empty()) emit_run(r, a.out);
    return 0;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct ConvergeArgs {
    SolveArgs base;
    std::string orders{"1,2,3"};
    std::string eps_list{"1"};
    std::string nx_list{"32,64,128,256"};
    std::string reference{"self"};
};

// Density of the constant-velocity, constant-pressure sine family transported to time t.
std::vector<double> advected_density(const ProblemConfig& cfg, const RunResult& r) {
    std::vector<double> rho(r.x.size());
    for (std::size_t j = 0; j < r.x.size(); ++j)
        rho[j] = cfg.sine_base +
                 cfg.sine_amplitude * std::sin(cfg.sine_wavenumber * (r.x[j] - cfg.sine_u * r.t_final));
    return rho;
}

int do_converge(const ConvergeArgs& a) {
    const auto orders = split(a.orders);
    const auto eps_list = split(a.eps_list);
    std::vector<std::size_t> nx;
    for (const auto& s : split(a.nx_list)) nx.push_back(std::stoul(s));
    if (a.reference != "self" && a.reference != "exact")
        throw ConfigError("--reference must be self or exact");
    const bool self = a.reference == "self";

    for (const auto& e : eps_list) {
        for (const auto& o : orders) {
            SolveArgs s = a.base;
            s.order = std::stoi(o);
            auto overrides = overrides_of(s);
            overrides["epsilon"] = e;
            std::vector<RunResult> runs;
            std::vector<ProblemConfig> cfgs;
            for (std::size_t n : nx) {
                overrides["n_x"] = std::to_string(n);
                cfgs.push_back(build_problem(problem_name(s), overrides));
                runs.push_back(run(cfgs.back(), run_options(s)));
                if (!a.base.quiet) print_summary(runs.back());
            }
            std::vector<std::size_t> rows_nx;
            std::vector<double> errors;
            const std::size_t n_err = self ? nx.size() - 1 : nx.size();
            for (std::size_t j = 0; j < n_err; ++j) {
                const auto& c = cfgs[j];
                const auto mesh = build_mesh(c.x_left, c.x_right, c.n_x);
                const DGBasis basis(c.degree);
                double err = 0.0;
                if (self) {
                    const auto& f = cfgs[j + 1];
                    err = l2_error_refined(runs[j].density(), mesh, basis, runs[j + 1].density(),
                                           build_mesh(f.x_left, f.x_right, f.n_x), DGBasis(f.degree));
                } else {
                    err = l2_error(runs[j].density(), advected_density(c, runs[j]), mesh, basis);
                }
                rows_nx.push_back(c.n_x);
                errors.push_back(err);
            }
            const auto rows = convergence_rows(rows_nx, errors);
            std::printf("eps=%s degree=%s\nN_x,error,order\n", e.c_str(), o.c_str());
            for (const auto& r : rows)
                std::printf("%zu,%.3e,%s\n", r.n_x, r.error,
                            std::isnan(r.order) ? "-" : std::to_string(r.order).c_str());
            if (!a.base.out.empty()) {
                fs::create_directories(a.base.out);
                write_convergence_table(rows, fs::path(a.base.out) /
                                                  ("convergence_eps" + e + "_N" + o + ".csv"));
            }
        }
    }
    return 0;
}

struct CompareArgs {
    std::string a, b;
    std::string norm{"l2"};
};

int do_compare(const CompareArgs& c) {
    auto load = [](const std::string& dir) {
        const fs::path p(dir);
        return std::pair{read_manifest_config(p / "manifest.json"), read_solution_csv(p / "solution.csv")};
    };
    auto [ca, ta] = load(c.a);
    auto [cb, tb] = load(c.b);
    const auto mesh_a = build_mesh(ca.x_left, ca.x_right, ca.n_x);
    const auto mesh_b = build_mesh(cb.x_left, cb.x_right, cb.n_x);
    const DGBasis basis_a(ca.degree), basis_b(cb.degree);
    if (ta.rho.size() != ca.n_x * basis_a.size() || tb.rho.size() != cb.n_x * basis_b.size())
        throw ConfigError("compare: solution size does not match its manifest");
    // evaluate the finer run on the coarser run's nodes
    const bool a_coarse = ca.n_x <= cb.n_x;
    const auto& cm = a_coarse ? mesh_a : mesh_b;
    const auto& cbasis = a_coarse ? basis_a : basis_b;
    const auto& coarse = a_coarse ? ta.rho : tb.rho;
    const auto fine = sample_at_nodes(a_coarse ? tb.rho : ta.rho, a_coarse ? mesh_b : mesh_a,
                                      a_coarse ? basis_b : basis_a, cm, cbasis);
    double value = 0.0;
    if (c.norm == "l1") value = l1_difference(ta.rho, mesh_a, basis_a, tb.rho, mesh_b, basis_b);
    else if (c.norm == "l2") value = l2_error(coarse, fine, cm, cbasis);
    else if (c.norm == "linf") value = linf_error(coarse, fine);
    else throw ConfigError("--norm must be l1, l2 or linf");
    std::printf("%s density difference: %.6e\n", c.norm.c_str(), value);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BGK hybrid kinetic solver"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "run one benchmark configuration");
    add_common(solve_cmd, solve);
    solve_cmd->add_option("--out", solve.out, "directory for solution.csv and manifest.json");

    ConvergeArgs conv;
    conv.base.problem = "accuracy";
    auto* conv_cmd = app.add_subcommand("converge", "mesh refinement study of the density");
    add_common(conv_cmd, conv.base);
    conv_cmd->add_option("--orders", conv.orders, "comma-separated polynomial degrees");
    conv_cmd->add_option("--eps-list", conv.eps_list, "comma-separated Knudsen numbers");
    conv_cmd->add_option("--nx-list", conv.nx_list, "comma-separated cell counts, each doubling");
    conv_cmd->add_option("--reference", conv.reference, "self (next finer run) or exact (advected sine)");
    conv_cmd->add_option("--out", conv.base.out, "directory for convergence tables");

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "density difference between two run directories");
    cmp_cmd->add_option("--a", cmp.a, "run directory")->required();
    cmp_cmd->add_option("--b", cmp.b, "run directory")->required();
    cmp_cmd->add_option("--norm", cmp.norm, "l1|l2|linf");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*solve_cmd) return do_solve(solve);
        if (*conv_cmd) return do_converge(conv);
        if (*cmp_cmd) return do_compare(cmp);
    } catch (const StepFailure& e) {
        std::cerr << "step failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
