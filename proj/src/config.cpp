#include "befp/config.hpp"

#include "befp/equilibria.hpp"
#include "befp/log.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace befp {

namespace {

const std::vector<std::pair<Mode, std::string>> mode_names{
    {Mode::equilibrium, "equilibrium"},
    {Mode::radial_exact, "radial-exact"},
    {Mode::numeric_2d, "numeric-2d"},
    {Mode::convergence_study, "convergence-study"},
    {Mode::validate, "validate"},
};

const std::vector<std::pair<InitialKind, std::string>> ic_names{
    {InitialKind::dirac, "dirac"},       {InitialKind::fundamental, "fundamental"},
    {InitialKind::equilibrium, "equilibrium"}, {InitialKind::gaussian, "gaussian"},
    {InitialKind::two_bump, "two-bump"}, {InitialKind::random, "random"},
};

template <class E>
std::string joined(const std::vector<std::pair<E, std::string>>& names)
{
    std::string s;
    for (const auto& [e, name] : names)
        s += (s.empty() ? "" : ", ") + name;
    return s;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v))
        throw ConfigError(key, "expected a finite number, got '" + text + "'");
    return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
    return v;
}

std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void apply(ExperimentConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "mode") {
        cfg.mode = mode_from_string(trim(value));
    } else if (key == "ic") {
        cfg.ic = initial_kind_from_string(trim(value));
    } else if (key == "mass") {
        cfg.mass = parse_double(key, value);
    } else if (key == "beta") {
        cfg.beta = parse_double(key, value);
    } else if (key == "grid-n") {
        cfg.grid_n = parse_unsigned(key, value);
    } else if (key == "grid-l") {
        cfg.grid_l = parse_double(key, value);
    } else if (key == "radial-n") {
        cfg.radial_n = parse_unsigned(key, value);
    } else if (key == "radial-rmax") {
        cfg.radial_rmax = parse_double(key, value);
    } else if (key == "times") {
        try {
            cfg.times = parse_times(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("times", e.what());
        }
    } else if (key == "dt") {
        cfg.dt = parse_double(key, value);
    } else if (key == "t-end") {
        cfg.t_end = parse_double(key, value);
    } else if (key == "out") {
        cfg.out = trim(value);
    } else if (key == "seed") {
        cfg.seed = parse_unsigned(key, value);
    } else if (key == "tol") {
        cfg.tol = parse_double(key, value);
    } else {
        throw ConfigError(key, "unknown key '" + key + "'");
    }
}

void validate(const ExperimentConfig& c)
{
    if (!(c.mass > 0.0))
        throw ConfigError("mass", "must be positive");
    if (c.beta && !(*c.beta > 1.0))
        throw ConfigError("beta", "must be greater than 1");
    if (c.grid_n < 4 || c.grid_n % 2 != 0)
        throw ConfigError("grid-n", "must be even and at least 4");
    if (!(c.grid_l > 0.0))
        throw ConfigError("grid-l", "must be positive");
    if (c.radial_n < 8)
        throw ConfigError("radial-n", "must be at least 8");
    if (!(c.radial_rmax > 0.0))
        throw ConfigError("radial-rmax", "must be positive");
    if (!(c.dt >= 0.0))
        throw ConfigError("dt", "must be non-negative");
    if (!(c.t_end >= 0.0))
        throw ConfigError("t-end", "must be non-negative");
    if (!(c.tol > 0.0))
        throw ConfigError("tol", "must be positive");
    if (c.out.empty())
        throw ConfigError("out", "must not be empty");

    const bool needs_times = c.mode == Mode::radial_exact || c.mode == Mode::numeric_2d;
    if (needs_times && c.times.empty())
        throw ConfigError("times", "at least one time is required");
    for (std::size_t k = 0; k < c.times.size(); ++k) {
        const double t = c.times[k];
        if (t < 0.0 || (t == 0.0 && c.mode != Mode::numeric_2d))
            throw ConfigError("times", "times must be positive (numeric-2d also accepts 0)");
        if (k > 0 && !(t > c.times[k - 1]))
            throw ConfigError("times", "times must be strictly increasing");
    }
    if (c.t_end > 0.0 && !c.times.empty() && c.times.back() > c.t_end)
        throw ConfigError("t-end", "is smaller than the last requested time");
    if (c.mode == Mode::convergence_study && c.resolved_t_end() <= 0.0)
        throw ConfigError("t-end", "convergence-study needs t-end or times");

    using K = InitialKind;
    auto allowed = [&](std::initializer_list<K> ks) {
        if (std::find(ks.begin(), ks.end(), c.ic) == ks.end())
            throw ConfigError("ic", "'" + to_string(c.ic) + "' is not available in mode " + to_string(c.mode));
    };
    switch (c.mode) {
    case Mode::radial_exact: allowed({K::dirac, K::fundamental, K::equilibrium, K::gaussian, K::random}); break;
    case Mode::numeric_2d: allowed({K::equilibrium, K::gaussian, K::two_bump, K::random}); break;
    case Mode::convergence_study: allowed({K::gaussian, K::equilibrium}); break;
    case Mode::equilibrium:
    case Mode::validate: break;
    }
}

}  // namespace

std::string to_string(Mode m)
{
    for (const auto& [e, name] : mode_names)
        if (e == m)
            return name;
    return "?";
}

Mode mode_from_string(const std::string& s)
{
    for (const auto& [e, name] : mode_names)
        if (name == s)
            return e;
    throw ConfigError("mode", "unknown mode '" + s + "'; valid modes: " + joined(mode_names));
}

std::string to_string(InitialKind k)
{
    for (const auto& [e, name] : ic_names)
        if (e == k)
            return name;
    return "?";
}

InitialKind initial_kind_from_string(const std::string& s)
{
    for (const auto& [e, name] : ic_names)
        if (name == s)
            return e;
    throw ConfigError("ic", "unknown initial condition '" + s + "'; valid: " + joined(ic_names));
}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error("config field '" + field + "': " + message), field_(std::move(field))
{
}

double ExperimentConfig::resolved_beta() const { return beta ? *beta : beta_from_mass(mass); }

double ExperimentConfig::resolved_t_end() const
{
    if (t_end > 0.0)
        return t_end;
    return times.empty() ? 0.0 : times.back();
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys{"mode",   "ic",          "mass",  "beta", "grid-n",
                                               "grid-l", "radial-n",    "radial-rmax", "times", "dt",
                                               "t-end",  "out",         "seed",  "tol"};
    return keys;
}

KeyValues parse_config_text(const std::string& text)
{
    KeyValues kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& keys = config_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError(key, "unknown key '" + key + "' at line " + std::to_string(lineno));
        for (const auto& [k, v] : kv)
            if (k == key)
                throw ConfigError(key, "repeated at line " + std::to_string(lineno));
        kv.emplace_back(key, value);
    }
    return kv;
}

KeyValues read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

ExperimentConfig resolve_config(const KeyValues& file_values, const KeyValues& flag_values)
{
    std::map<std::string, std::string> merged;
    for (const auto& [k, v] : file_values)
        merged[k] = v;
    for (const auto& [k, v] : flag_values) {
        if (auto it = merged.find(k); it != merged.end() && trim(it->second) != trim(v))
            warn("--" + k + "=" + v + " overrides config file value '" + it->second + "'");
        merged[k] = v;
    }
    ExperimentConfig cfg;
    // canonical order so that errors are reported deterministically
    for (const auto& key : config_keys())
        if (auto it = merged.find(key); it != merged.end()) {
            apply(cfg, key, it->second);
            merged.erase(it);
        }
    if (!merged.empty())
        apply(cfg, merged.begin()->first, merged.begin()->second);  // throws: unknown key
    validate(cfg);
    return cfg;
}

std::vector<double> parse_times(const std::string& text)
{
    const std::string t = trim(text);
    if (t.empty())
        throw std::invalid_argument("empty time list");
    std::vector<double> out;
    if (t.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::istringstream is(t);
        std::string piece;
        while (std::getline(is, piece, ':'))
            parts.push_back(parse_double("times", piece));
        if (parts.size() != 3)
            throw std::invalid_argument("range must be start:stop:step");
        const double a = parts[0], b = parts[1], s = parts[2];
        if (!(s > 0.0) || b < a)
            throw std::invalid_argument("range needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((b - a) / s + 1e-9));
        for (std::size_t k = 0; k <= count; ++k)
            out.push_back(a + static_cast<double>(k) * s);
        return out;
    }
    std::istringstream is(t);
    std::string piece;
    while (std::getline(is, piece, ','))
        out.push_back(parse_double("times", piece));
    return out;
}

KeyValues to_key_values(const ExperimentConfig& c)
{
    std::string times;
    for (double t : c.times)
        times += (times.empty() ? "" : ",") + format_double(t);
    return {
        {"mode", to_string(c.mode)},
        {"ic", to_string(c.ic)},
        {"mass", format_double(c.mass)},
        {"beta", format_double(c.resolved_beta())},
        {"grid-n", std::to_string(c.grid_n)},
        {"grid-l", format_double(c.grid_l)},
        {"radial-n", std::to_string(c.radial_n)},
        {"radial-rmax", format_double(c.radial_rmax)},
        {"times", times},
        {"dt", format_double(c.dt)},
        {"t-end", format_double(c.resolved_t_end())},
        {"out", c.out},
        {"seed", std::to_string(c.seed)},
        {"tol", format_double(c.tol)},
    };
}

std::string describe_defaults()
{
    const ExperimentConfig d;
    std::ostringstream os;
    os << "Config file: one `key = value` per line, `#` comments; keys are the flag names.\n"
       << "Flags override file values.\n\n"
       << "  mode         " << joined(mode_names) << " (default " << to_string(d.mode) << ")\n"
       << "  ic           " << joined(ic_names) << " (default " << to_string(d.ic) << ")\n"
       << "  mass         BEFP mass of the initial data (default 2 pi)\n"
       << "  beta         equilibrium parameter > 1 (default: from mass)\n"
       << "  grid-n       2D cells per side, even (default " << d.grid_n << ")\n"
       << "  grid-l       2D half-width (default " << d.grid_l << ")\n"
       << "  radial-n     radial intervals (default " << d.radial_n << ")\n"
       << "  radial-rmax  radial cutoff (default " << d.radial_rmax << ")\n"
       << "  times        list a,b,c or range start:stop:step (default 0.5:6:0.5)\n"
       << "  dt           2D time step, 0 = automatic (default 0)\n"
       << "  t-end        final time, 0 = last of times (default 0)\n"
       << "  out          output directory (default " << d.out << ")\n"
       << "  seed         seed for ic = random (default " << d.seed << ")\n"
       << "  tol          validation tolerance (default " << d.tol << ")\n";
    return os.str();
}

}  // namespace befp
