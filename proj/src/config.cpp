#include "bgk/config.hpp"

#include "bgk/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

namespace bgk {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    std::size_t x = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "': expected a count, got '" + value + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1" || value == "yes") return true;
    if (value == "off" || value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key '" + key + "': expected on/off, got '" + value + "'");
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(bool b) { return b ? "on" : "off"; }

} // namespace

void set_config_value(ProblemConfig& c, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    auto num = [&] { return parse_double(key, v); };
    auto count = [&] { return parse_count(key, v); };

    if (key == "name") c.name = v;
    else if (key == "x_left") c.x_left = num();
    else if (key == "x_right") c.x_right = num();
    else if (key == "v_max") c.v_max = num();
    else if (key == "n_x") c.n_x = count();
    else if (key == "n_v") c.n_v = count();
    else if (key == "degree") c.degree = static_cast<int>(count());
    else if (key == "epsilon") c.epsilon = num();
    else if (key == "t_final") c.t_final = num();
    else if (key == "cfl") c.cfl = num();
    else if (key == "scheme") c.scheme = parse_scheme(v);
    else if (key == "boundary") {
        if (v == "periodic") c.boundary = BoundaryKind::periodic;
        else if (v == "dirichlet") c.boundary = BoundaryKind::dirichlet;
        else throw ConfigError("config key 'boundary': expected periodic or dirichlet, got '" + v + "'");
    }
    else if (key == "limiter") c.limiter = parse_bool(key, v);
    else if (key == "m_tvb") c.m_tvb = num();
    else if (key == "predictor") c.predictor = parse_predictor(v);
    else if (key == "initial") c.initial = v;
    else if (key == "left_rho") c.left_state.rho = num();
    else if (key == "left_u") c.left_state.u = num();
    else if (key == "left_p") c.left_state.p = num();
    else if (key == "right_rho") c.right_state.rho = num();
    else if (key == "right_u") c.right_state.u = num();
    else if (key == "right_p") c.right_state.p = num();
    else if (key == "x_split") c.x_split = num();
    else if (key == "sine_base") c.sine_base = num();
    else if (key == "sine_amplitude") c.sine_amplitude = num();
    else if (key == "sine_wavenumber") c.sine_wavenumber = num();
    else if (key == "sine_u") c.sine_u = num();
    else if (key == "sine_p") c.sine_p = num();
    else if (key == "source") c.source.enabled = parse_bool(key, v);
    else if (key == "source_rho") c.source.rho = num();
    else if (key == "source_u") c.source.u = num();
    else if (key == "source_theta") c.source.theta = num();
    else if (key == "source_center") c.source.center = num();
    else if (key == "source_width") c.source.width = num();
    else if (key == "source_norm_left") c.source.norm_left = num();
    else if (key == "source_norm_right") c.source.norm_right = num();
    else if (key == "max_steps") c.max_steps = count();
    else throw ConfigError("unknown config key '" + key + "'");
}

std::map<std::string, std::string> to_key_values(const ProblemConfig& c) {
    return {
        {"name", c.name},
        {"x_left", fmt(c.x_left)},
        {"x_right", fmt(c.x_right)},
        {"v_max", fmt(c.v_max)},
        {"n_x", std::to_string(c.n_x)},
        {"n_v", std::to_string(c.n_v)},
        {"degree", std::to_string(c.degree)},
        {"epsilon", fmt(c.epsilon)},
        {"t_final", fmt(c.t_final)},
        {"cfl", fmt(c.cfl)},
        {"scheme", to_string(c.scheme)},
        {"boundary", c.boundary == BoundaryKind::periodic ? "periodic" : "dirichlet"},
        {"limiter", fmt(c.limiter)},
        {"m_tvb", fmt(c.m_tvb)},
        {"predictor", to_string(c.predictor)},
        {"initial", c.initial},
        {"left_rho", fmt(c.left_state.rho)},
        {"left_u", fmt(c.left_state.u)},
        {"left_p", fmt(c.left_state.p)},
        {"right_rho", fmt(c.right_state.rho)},
        {"right_u", fmt(c.right_state.u)},
        {"right_p", fmt(c.right_state.p)},
        {"x_split", fmt(c.x_split)},
        {"sine_base", fmt(c.sine_base)},
        {"sine_amplitude", fmt(c.sine_amplitude)},
        {"sine_wavenumber", fmt(c.sine_wavenumber)},
        {"sine_u", fmt(c.sine_u)},
        {"sine_p", fmt(c.sine_p)},
        {"source", fmt(c.source.enabled)},
        {"source_rho", fmt(c.source.rho)},
        {"source_u", fmt(c.source.u)},
        {"source_theta", fmt(c.source.theta)},
        {"source_center", fmt(c.source.center)},
        {"source_width", fmt(c.source.width)},
        {"source_norm_left", fmt(c.source.norm_left)},
        {"source_norm_right", fmt(c.source.norm_right)},
        {"max_steps", std::to_string(c.max_steps)},
    };
}

ProblemConfig config_from_key_values(const std::map<std::string, std::string>& kv) {
    ProblemConfig cfg;
    for (const auto& [k, v] : kv) set_config_value(cfg, k, v);
    return cfg;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

ProblemConfig read_config(const std::filesystem::path& path) {
    auto kv = read_key_values(path);
    // a known benchmark name supplies the defaults for keys the file omits
    const auto it = kv.find("name");
    if (it != kv.end()) {
        try {
            return build_problem(it->second, kv);
        } catch (const ConfigError& e) {
            if (std::string(e.what()).find("unknown problem") == std::string::npos) throw;
        }
    }
    return config_from_key_values(kv);
}

void write_config(const ProblemConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file " + path.string());
    for (const auto& [k, v] : to_key_values(cfg)) out << k << " = " << v << '\n';
    if (!out) throw ConfigError("write failed for " + path.string());
}

} // namespace bgk
