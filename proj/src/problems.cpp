#include "bgk/problems.hpp"

#include "bgk/config.hpp"
#include "bgk/errors.hpp"

#include <cmath>
#include <numbers>

namespace bgk {

std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::berk2: return "berk2";
    case Scheme::berk2_corrected: return "berk2-corrected";
    case Scheme::imex2: return "imex2";
    case Scheme::imex3: return "imex3";
    case Scheme::euler_only: return "euler-only";
    }
    return "?";
}

Scheme parse_scheme(const std::string& s) {
    if (s == "berk2") return Scheme::berk2;
    if (s == "berk2-corrected") return Scheme::berk2_corrected;
    if (s == "imex2") return Scheme::imex2;
    if (s == "imex3") return Scheme::imex3;
    if (s == "euler-only") return Scheme::euler_only;
    throw ConfigError("unknown scheme '" + s +
                      "' (expected berk2, berk2-corrected, imex2, imex3, euler-only)");
}

std::string to_string(PredictorFlux p) {
    return p == PredictorFlux::step_start ? "step-start" : "source-updated";
}

PredictorFlux parse_predictor(const std::string& s) {
    if (s == "step-start") return PredictorFlux::step_start;
    if (s == "source-updated") return PredictorFlux::source_updated;
    throw ConfigError("unknown predictor '" + s + "' (expected step-start or source-updated)");
}

double default_cfl(const std::string& name, Scheme scheme, int degree) {
    if (name == "asymptotic") return 0.1;
    if (name == "accuracy") {
        if (degree <= 1) return 0.2;
        if (degree == 2) return 0.1;
        return 0.05;
    }
    if (name == "gas-injection") return 0.1;
    if (name == "sod" || name == "lax" || name == "shu-osher")
        return scheme == Scheme::imex3 ? 0.14 : 0.2;
    return 0.2;
}

namespace {

ProblemConfig base_problem(const std::string& name) {
    ProblemConfig c;
    c.name = name;
    if (name == "asymptotic" || name == "accuracy") {
        c.x_left = -std::numbers::pi;
        c.x_right = std::numbers::pi;
        c.v_max = 7.0;
        c.n_v = 100;
        c.t_final = 0.1;
        c.scheme = Scheme::berk2_corrected;
        c.boundary = BoundaryKind::periodic;
        c.initial = "sine";
        c.sine_base = 1.0;
        c.sine_amplitude = 0.2;
        c.sine_u = 1.0;
        c.sine_p = 1.0;
        if (name == "asymptotic") {
            c.n_x = 64;
            c.degree = 3;
            c.epsilon = 1e-12;
            c.sine_wavenumber = 10.0;
        } else {
            c.n_x = 64;
            c.degree = 2;
            c.epsilon = 1.0;
            c.sine_wavenumber = 1.0;
        }
    } else if (name == "sod") {
        c.x_left = 0.0;
        c.x_right = 1.0;
        c.v_max = 6.0;
        c.n_x = 100;
        c.n_v = 100;
        c.x_split = 0.5;
        c.left_state = {1.0, 0.0, 1.0};
        c.right_state = {0.125, 0.0, 0.1};
    } else if (name == "lax") {
        c.x_left = -0.5;
        c.x_right = 1.5;
        c.v_max = 15.0;
        c.n_x = 100;
        c.n_v = 100;
        c.x_split = 0.5;
        c.left_state = {0.445, 0.698, 3.528};
        c.right_state = {0.5, 0.0, 0.571};
    } else if (name == "shu-osher") {
        c.x_left = -10.0;
        c.x_right = 10.0;
        c.v_max = 14.0;
        c.n_x = 200;
        c.n_v = 200;
        c.t_final = 1.8;
        c.initial = "shock-sine";
        c.x_split = -4.0;
        c.left_state = {1.756757, 2.005122, 10.333333};
        c.sine_base = 1.0;
        c.sine_amplitude = 0.2;
        c.sine_wavenumber = 5.0;
        c.sine_u = 0.0;
        c.sine_p = 1.0;
    } else if (name == "gas-injection") {
        c.x_left = -3.0;
        c.x_right = 19.0;
        c.v_max = 110.0;
        c.n_x = 200;
        c.n_v = 1000;
        c.left_state = {1.0, 0.0, 0.1};
        c.right_state = c.left_state;
        c.x_split = c.x_right;
        c.source.enabled = true;
    } else {
        throw ConfigError("unknown problem '" + name +
                          "' (expected asymptotic, accuracy, sod, lax, shu-osher, gas-injection)");
    }
    const bool shock = name == "sod" || name == "lax" || name == "shu-osher" || name == "gas-injection";
    if (shock) {
        c.degree = 2;
        c.epsilon = 1e-6;
        if (name != "shu-osher") c.t_final = 0.1;
        c.boundary = BoundaryKind::dirichlet;
        c.limiter = true;
        c.m_tvb = 20.0;
        c.scheme = Scheme::berk2;
    }
    c.cfl = default_cfl(name, c.scheme, c.degree);
    return c;
}

} // namespace

ProblemConfig build_problem(const std::string& name,
                            const std::map<std::string, std::string>& overrides) {
    ProblemConfig c = base_problem(name);
    for (const auto& [k, v] : overrides) {
        if (k == "name") continue;
        set_config_value(c, k, v);
    }
    const bool picks_scheme = overrides.count("scheme") || overrides.count("degree");
    if (picks_scheme && !overrides.count("cfl")) c.cfl = default_cfl(name, c.scheme, c.degree);
    validate(c);
    return c;
}

void validate(const ProblemConfig& c) {
    if (!(c.x_left < c.x_right)) throw ConfigError("x_left must be below x_right");
    if (!(c.v_max > 0.0)) throw ConfigError("v_max must be positive");
    if (c.n_x == 0 || c.n_v == 0) throw ConfigError("n_x and n_v must be positive");
    if (c.degree < 0 || c.degree > 8) throw ConfigError("degree must lie in 0..8");
    if (!(c.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (!(c.t_final > 0.0)) throw ConfigError("t_final must be positive");
    if (!(c.cfl > 0.0)) throw ConfigError("cfl must be positive");
    if (!(c.m_tvb >= 0.0)) throw ConfigError("m_tvb must be non-negative");
    if (c.initial != "piecewise" && c.initial != "sine" && c.initial != "shock-sine")
        throw ConfigError("unknown initial data '" + c.initial +
                          "' (expected piecewise, sine, shock-sine)");
    if (c.max_steps == 0) throw ConfigError("max_steps must be positive");
    if (c.source.enabled && !(c.source.width > 0.0)) throw ConfigError("source_width must be positive");
    if (c.n_v < 3 && (c.scheme != Scheme::berk2 && c.scheme != Scheme::euler_only))
        throw ConfigError("schemes with a conservation fix need n_v >= 3");
}

Primitives initial_primitives(const ProblemConfig& c, double x) {
    auto from_state = [](const StateSpec& s) { return Primitives{s.rho, s.u, s.p / s.rho}; };
    auto sine = [&] {
        const double rho = c.sine_base + c.sine_amplitude * std::sin(c.sine_wavenumber * x);
        return Primitives{rho, c.sine_u, c.sine_p / rho};
    };
    if (c.initial == "sine") return sine();
    if (x <= c.x_split) return from_state(c.left_state);
    if (c.initial == "shock-sine") return sine();
    return from_state(c.right_state);
}

BoundarySpec make_boundary(const ProblemConfig& c) {
    if (c.boundary == BoundaryKind::periodic) return BoundarySpec::periodic();
    return BoundarySpec::dirichlet_maxwellian(primitives_to_moments(initial_primitives(c, c.x_left)),
                                              primitives_to_moments(initial_primitives(c, c.x_right)));
}

Discretization make_discretization(const ProblemConfig& c) {
    return Discretization(build_mesh(c.x_left, c.x_right, c.n_x), c.degree,
                          build_velocity_grid(c.n_v, c.v_max));
}

KineticField initial_field(const ProblemConfig& c, const Discretization& disc) {
    MomentField q(disc.mesh.n_cells, disc.n_nodes());
    for (std::size_t i = 0; i < q.n_x; ++i)
        for (std::size_t l = 0; l < q.n_nodes; ++l)
            q.set(i, l, primitives_to_moments(initial_primitives(c, disc.node_x(i, l))));
    return maxwellian_field(q, disc.grid);
}

double source_normalization(const SourceSpec& s) {
    const double scale = s.width * std::numbers::sqrt2;
    const double mass = 0.5 * s.width * std::sqrt(2.0 * std::numbers::pi) *
                        (std::erf((s.norm_right - s.center) / scale) -
                         std::erf((s.norm_left - s.center) / scale));
    return 1.0 / mass;
}

double source_profile(const SourceSpec& s, double x) {
    const double d = x - s.center;
    return source_normalization(s) * std::exp(-d * d / (2.0 * s.width * s.width));
}

std::optional<KineticField> source_field(const ProblemConfig& c, const Discretization& disc) {
    if (!c.source.enabled) return std::nullopt;
    const Primitives p{c.source.rho, c.source.u, c.source.theta};
    KineticField s(disc.grid.size(), disc.mesh.n_cells, disc.n_nodes());
    for (std::size_t k = 0; k < s.n_v; ++k) {
        const double m = maxwellian_at(p, disc.grid.point(k));
        for (std::size_t i = 0; i < s.n_x; ++i)
            for (std::size_t l = 0; l < s.n_nodes; ++l)
                s(k, i, l) = source_profile(c.source, disc.node_x(i, l)) * m;
    }
    return s;
}

} // namespace bgk
