#include "plastiflow/config.hpp"

#include <fstream>
#include <sstream>

#include "plastiflow/errors.hpp"

namespace plastiflow {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

Config Config::parse_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("config line " + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
        cfg.data_[section][key] = value;
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = data_.find(section);
    return s != data_.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
    const auto s = data_.find(section);
    if (s == data_.end() || !s->second.count(key))
        throw ValidationError("config is missing [" + section + "] " + key);
    return s->second.at(key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (trim(v.substr(pos)) != "")
        throw ValidationError("config value [" + section + "] " + key + " is not a number: " + v);
    return d;
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int_or(const std::string& section, const std::string& key, int fallback) const {
    if (!has(section, key)) return fallback;
    return static_cast<int>(get_double(section, key));
}

bool Config::get_bool_or(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ValidationError("config value [" + section + "] " + key + " is not a boolean: " + v);
}

std::vector<double> Config::get_list_or(const std::string& section, const std::string& key,
                                        std::vector<double> fallback) const {
    if (!has(section, key)) return fallback;
    std::vector<double> out;
    std::string v = get(section, key);
    for (auto& ch : v)
        if (ch == ',') ch = ' ';
    std::istringstream in(v);
    double d;
    while (in >> d) out.push_back(d);
    return out;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    data_[section][key] = value;
}

std::string Config::serialize() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [section, kv] : data_) {
        if (!first) out << "\n";
        first = false;
        out << "[" << section << "]\n";
        for (const auto& [key, value] : kv) out << key << " = " << value << "\n";
    }
    return out.str();
}

Scenario Config::to_scenario() const {
    Scenario sc;
    sc.grid.length = get_double_or("domain", "length", 1.0);
    sc.grid.nx = get_int_or("domain", "nx", 200);
    sc.compliance = get_double_or("material", "compliance", 1.0);

    const std::string kind = get_or("surface", "kind", "interval");
    if (kind == "interval") {
        sc.surface = YieldSurface::interval(get_double_or("surface", "lo", -1.0),
                                            get_double_or("surface", "hi", 1.0));
    } else if (kind == "vonmises") {
        sc.surface = YieldSurface::vonmises(get_int_or("surface", "dim", 3),
                                            get_double_or("surface", "radius", 1.0));
    } else if (kind == "hill") {
        sc.surface = YieldSurface::hill(get_int_or("surface", "dim", 3),
                                        get_list_or("surface", "b", {}));
    } else if (kind == "hosford") {
        sc.surface = YieldSurface::hosford(get_int_or("surface", "dim", 3),
                                           get_double_or("surface", "p", 2.0),
                                           get_double_or("surface", "scale", 1.0));
    } else {
        throw ValidationError("unknown surface kind: " + kind);
    }

    sc.alpha = get_double_or("potential", "alpha", 0.1);
    sc.lambda = get_double_or("potential", "lambda", 1e3);

    auto bc = [&](const std::string& key) {
        const std::string v = get_or("boundary", key, "dirichlet");
        if (v == "dirichlet") return BcType::Dirichlet;
        if (v == "neumann") return BcType::Neumann;
        throw ValidationError("unknown boundary type: " + v);
    };
    sc.bc_left = bc("left");
    sc.bc_right = bc("right");
    sc.w_left = TimeFn::parse(get_or("boundary", "w_left", "constant 0"));
    sc.w_right = TimeFn::parse(get_or("boundary", "w_right", "constant 0"));
    sc.g_left = TimeFn::parse(get_or("boundary", "g_left", "constant 0"));
    sc.g_right = TimeFn::parse(get_or("boundary", "g_right", "constant 0"));

    sc.body_force.space = SpaceFn::parse(get_or("loads", "f_space", "constant 0"));
    sc.body_force.time = TimeFn::parse(get_or("loads", "f_time", "constant 1"));
    sc.load_potential.space = SpaceFn::parse(get_or("loads", "rho_space", "constant 0"));
    sc.load_potential.time = TimeFn::parse(get_or("loads", "rho_time", "constant 1"));
    sc.check_equilibrium = get_bool_or("loads", "check_equilibrium", false);

    sc.sigma0 = SpaceFn::parse(get_or("initial", "sigma0", "constant 0"));
    sc.v0 = SpaceFn::parse(get_or("initial", "v0", "constant 0"));
    sc.u0 = SpaceFn::parse(get_or("initial", "u0", "constant 0"));

    sc.u_left = get_double_or("stationary", "u_left", 0.0);
    sc.u_right = get_double_or("stationary", "u_right", 0.0);

    sc.seed = static_cast<std::uint64_t>(get_double_or("run", "seed", 42));
    return sc;
}

std::vector<SweepCell> Config::sweep_cells() const {
    const auto alphas = get_list_or("sweep", "alphas", {0.4, 0.2, 0.1, 0.05});
    auto lambdas = get_list_or("sweep", "lambdas", {1e3});
    if (lambdas.size() == 1) lambdas.assign(alphas.size(), lambdas.front());
    if (lambdas.size() != alphas.size())
        throw ValidationError("sweep lambdas must be a single value or match alphas in length");
    std::vector<SweepCell> cells;
    for (size_t i = 0; i < alphas.size(); ++i) {
        SweepCell c;
        c.alpha = alphas[i];
        c.lambda = lambdas[i];
        c.nx = get_int_or("sweep", "nx", 0);
        c.dt_factor = get_double_or("sweep", "dt_factor", 0.9);
        cells.push_back(c);
    }
    return cells;
}

}  // namespace plastiflow
