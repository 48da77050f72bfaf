#include "kinlab/config.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kinlab {

namespace {

enum class KeyKind { number, text, list };

struct KeySpec {
    const char* name;
    KeyKind kind;
};

const std::array<KeySpec, 31> kKnownKeys = {{
    {"potential.kind", KeyKind::text},
    {"potential.amplitude", KeyKind::number},
    {"potential.height", KeyKind::number},
    {"potential.skew", KeyKind::number},
    {"bar.length", KeyKind::number},
    {"bar.interface", KeyKind::number},
    {"bar.modulus", KeyKind::number},
    {"bar.eps_bar", KeyKind::number},
    {"bar.body_force", KeyKind::text},
    {"bar.u0", KeyKind::number},
    {"bar.uL", KeyKind::number},
    {"model.mu", KeyKind::number},
    {"model.lambda", KeyKind::number},
    {"model.mobility", KeyKind::number},
    {"sim.geometry", KeyKind::text},
    {"sim.grid_points", KeyKind::number},
    {"sim.dt", KeyKind::number},
    {"sim.t_end", KeyKind::number},
    {"sim.output_every", KeyKind::number},
    {"sim.initial_radius", KeyKind::number},
    {"sim.domain", KeyKind::number},
    {"sim.profile_points", KeyKind::number},
    {"profiles.points", KeyKind::number},
    {"profiles.half_width", KeyKind::number},
    {"sweep.kind", KeyKind::text},
    {"sweep.mu", KeyKind::list},
    {"sweep.lambda", KeyKind::list},
    {"effort.target_error", KeyKind::number},
    {"effort.curvature_norm", KeyKind::number},
    {"effort.s10_norm", KeyKind::number},
    {"effort.exponent", KeyKind::number},
}};

const KeySpec* find_key(const std::string& key) {
    for (const KeySpec& k : kKnownKeys)
        if (key == k.name) return &k;
    return nullptr;
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& raw) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(raw, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("settings: key '" + key + "' is not a number: '" +
                                    raw + "'");
    }
    if (strip(raw.substr(used)) != "")
        throw std::invalid_argument("settings: trailing text after number in key '" +
                                    key + "': '" + raw + "'");
    return v;
}

std::vector<double> parse_number_list(const std::string& key, std::string raw) {
    for (char& ch : raw)
        if (ch == ',') ch = ' ';
    std::istringstream in(raw);
    std::vector<double> out;
    double v = 0.0;
    while (in >> v) out.push_back(v);
    std::string rest;
    if (in.fail() && !in.eof() && (in.clear(), in >> rest))
        throw std::invalid_argument("settings: non-numeric entry in list '" + key + "'");
    if (out.empty())
        throw std::invalid_argument("settings: empty list for key '" + key + "'");
    return out;
}

}  // namespace

Settings Settings::from_string(const std::string& text) {
    Settings out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("settings: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("settings: empty key or value on line " +
                                        std::to_string(lineno));
        const KeySpec* spec = find_key(key);
        if (spec == nullptr)
            throw std::invalid_argument("settings: unknown key '" + key + "'");
        if (out.kv_.count(key))
            throw std::invalid_argument("settings: duplicate key '" + key + "'");
        // validate numeric payloads at load time, not first use
        if (spec->kind == KeyKind::number) parse_number(key, value);
        if (spec->kind == KeyKind::list) parse_number_list(key, value);
        out.kv_[key] = value;
    }
    return out;
}

Settings Settings::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("settings: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

bool Settings::has(const std::string& key) const { return kv_.count(key) != 0; }

double Settings::number(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end())
        throw std::invalid_argument("settings: missing required key '" + key + "'");
    return parse_number(key, it->second);
}

double Settings::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

int Settings::integer_or(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::invalid_argument("settings: key '" + key + "' must be an integer");
    return i;
}

std::string Settings::text(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end())
        throw std::invalid_argument("settings: missing required key '" + key + "'");
    return it->second;
}

std::string Settings::text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
}

std::vector<double> Settings::number_list(const std::string& key) const {
    return parse_number_list(key, text(key));
}

DoubleWellPotential potential_from_settings(const Settings& s) {
    const std::string kind = s.text_or("potential.kind", "quartic");
    const double amplitude = s.number_or("potential.amplitude", 1.0);
    if (kind == "quartic") return make_quartic(amplitude);
    if (kind == "bump")
        return make_bump_asymmetric(amplitude, s.number_or("potential.height", 0.1));
    if (kind == "tilted") return make_tilted(amplitude, s.number_or("potential.skew", 0.5));
    throw std::invalid_argument("settings: unknown potential.kind '" + kind + "'");
}

Bar1D bar_from_settings(const Settings& s) {
    Bar1D bar;
    bar.length = s.number_or("bar.length", bar.length);
    bar.interface = s.number_or("bar.interface", bar.interface);
    bar.modulus = s.number_or("bar.modulus", bar.modulus);
    bar.eps_bar = s.number_or("bar.eps_bar", bar.eps_bar);
    bar.u0 = s.number_or("bar.u0", bar.u0);
    bar.uL = s.number_or("bar.uL", bar.uL);
    if (s.has("bar.body_force")) {
        std::istringstream in(s.text("bar.body_force"));
        std::string kind;
        in >> kind;
        Poly b;
        if (kind == "zero") {
            b = Poly();
        } else if (kind == "constant") {
            double c0 = 0.0;
            if (!(in >> c0))
                throw std::invalid_argument("settings: bar.body_force constant needs one value");
            b = Poly::constant(c0);
        } else if (kind == "linear") {
            double c0 = 0.0, c1 = 0.0;
            if (!(in >> c0 >> c1))
                throw std::invalid_argument("settings: bar.body_force linear needs two values");
            b = Poly({c0, c1});
        } else {
            throw std::invalid_argument(
                "settings: bar.body_force must be 'zero', 'constant c0' or 'linear c0 c1'");
        }
        std::string rest;
        if (in >> rest)
            throw std::invalid_argument("settings: trailing text in bar.body_force");
        bar.body_force_left = b;
        bar.body_force_right = b;
    }
    return bar;
}

SimConfig sim_from_settings(const Settings& s) {
    SimConfig cfg;
    const std::string geom = s.text_or("sim.geometry", "planar1d");
    if (geom == "planar1d")
        cfg.geometry = Geometry::planar1d;
    else if (geom == "radial2d")
        cfg.geometry = Geometry::radial2d;
    else if (geom == "radial3d")
        cfg.geometry = Geometry::radial3d;
    else
        throw std::invalid_argument("settings: unknown sim.geometry '" + geom + "'");

    cfg.mu = s.number_or("model.mu", cfg.mu);
    cfg.lambda = s.number_or("model.lambda", cfg.lambda);
    cfg.mobility = s.number_or("model.mobility", cfg.mobility);
    cfg.psi = potential_from_settings(s);
    cfg.bar = bar_from_settings(s);
    cfg.initial_radius = s.number_or("sim.initial_radius", cfg.initial_radius);
    cfg.domain_length = s.number_or("sim.domain", cfg.domain_length);
    cfg.grid_points = s.integer_or("sim.grid_points", cfg.grid_points);
    cfg.dt = s.number_or("sim.dt", cfg.dt);
    cfg.t_end = s.number_or("sim.t_end", cfg.t_end);
    cfg.output_every = s.number_or("sim.output_every", cfg.output_every);
    cfg.profile_points = s.integer_or("sim.profile_points", cfg.profile_points);
    return cfg;
}

}  // namespace kinlab
