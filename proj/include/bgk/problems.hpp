#pragma once

#include "bgk/collided.hpp"
#include "bgk/fields.hpp"
#include "bgk/hybrid.hpp"
#include "bgk/uncollided.hpp"
#include "bgk/velocity.hpp"

#include <map>
#include <optional>
#include <string>

namespace bgk {

enum class Scheme { berk2, berk2_corrected, imex2, imex3, euler_only };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);
std::string to_string(PredictorFlux p);
PredictorFlux parse_predictor(const std::string& s);

/// Density, velocity and pressure of a constant state.
struct StateSpec {
    double rho{1.0};
    double u{0.0};
    double p{1.0};

    bool operator==(const StateSpec&) const = default;
};

/// S(x, v) = eta(x) M(rho, u, theta)(v) with a Gaussian eta normalised to
/// unit mass over [norm_left, norm_right].
struct SourceSpec {
    bool enabled{false};
    double rho{0.01};
    double u{100.0};
    double theta{100.0};
    double center{0.5};
    double width{0.1};
    double norm_left{0.0};
    double norm_right{1.0};

    bool operator==(const SourceSpec&) const = default;
};

/// Initial data families:
///   piecewise  : left_state for x <= x_split, right_state otherwise
///   sine       : rho = sine_base + sine_amplitude sin(sine_wavenumber x), u = sine_u, p = sine_p
///   shock-sine : left_state for x <= x_split, the sine family otherwise
struct ProblemConfig {
    std::string name{"custom"};
    double x_left{0.0};
    double x_right{1.0};
    double v_max{6.0};
    std::size_t n_x{100};
    std::size_t n_v{100};
    int degree{2};
    double epsilon{1.0};
    double t_final{0.1};
    double cfl{0.2};
    Scheme scheme{Scheme::berk2};
    BoundaryKind boundary{BoundaryKind::dirichlet};
    bool limiter{false};
    double m_tvb{20.0};
    PredictorFlux predictor{PredictorFlux::source_updated};
    std::string initial{"piecewise"};
    StateSpec left_state{};
    StateSpec right_state{};
    double x_split{0.5};
    double sine_base{1.0};
    double sine_amplitude{0.2};
    double sine_wavenumber{1.0};
    double sine_u{1.0};
    double sine_p{1.0};
    SourceSpec source{};
    std::size_t max_steps{10000000};

    bool operator==(const ProblemConfig&) const = default;
};

/// Names: asymptotic, accuracy, sod, lax, shu-osher, gas-injection.
/// Overrides use the key names of the config file format. When the scheme
/// or degree is overridden without a cfl, the cfl follows the benchmark table.
ProblemConfig build_problem(const std::string& name,
                            const std::map<std::string, std::string>& overrides = {});

/// CFL constant the benchmarks use for a problem, scheme and degree.
double default_cfl(const std::string& name, Scheme scheme, int degree);

/// Throws ConfigError on inconsistent values.
void validate(const ProblemConfig& cfg);

Primitives initial_primitives(const ProblemConfig& cfg, double x);
BoundarySpec make_boundary(const ProblemConfig& cfg);
Discretization make_discretization(const ProblemConfig& cfg);
KineticField initial_field(const ProblemConfig& cfg, const Discretization& disc);

double source_normalization(const SourceSpec& s);
double source_profile(const SourceSpec& s, double x);
std::optional<KineticField> source_field(const ProblemConfig& cfg, const Discretization& disc);

} // namespace bgk
