// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/run_config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pchaos/csv_io.hpp"

namespace pchaos {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct Entry {
    std::string value;
    std::size_t line;
};

double to_double(const std::string& key, const Entry& e) {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (e.value.empty() || ec != std::errc{} || ptr != last) {
        throw ConfigError("line " + std::to_string(e.line) + ": malformed number for '" + key + "': '" + e.value +
                          "'");
    }
    return v;
}

std::uint64_t to_uint(const std::string& key, const Entry& e) {
    std::uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (e.value.empty() || ec != std::errc{} || ptr != last) {
        throw ConfigError("line " + std::to_string(e.line) + ": malformed integer for '" + key + "': '" + e.value +
                          "'");
    }
    return v;
}

const std::set<std::string, std::less<>> kKnownKeys{"mu",    "T",       "M",     "kernel", "alpha", "beta",
                                                    "table", "seed",    "n_paths", "h",    "horizon", "n_max",
                                                    "j_max", "mode",    "points", "input"};

void validate(const RunConfig& c) {
    if (!(c.mu > 0.0)) throw ConfigError("invariant violated: mu must be > 0, got " + format_double(c.mu));
    if (!(c.T > 0.0)) throw ConfigError("invariant violated: T must be > 0, got " + format_double(c.T));
    if (!(c.M > 0.0)) throw ConfigError("invariant violated: M must be > 0, got " + format_double(c.M));
    if (c.M < c.mu) {
        throw ConfigError("invariant violated: M=" + format_double(c.M) + " is below mu=" + format_double(c.mu));
    }
    if (c.kernel != "exp" && c.kernel != "zero" && c.kernel != "table") {
        throw ConfigError("kernel must be exp, zero or table, got '" + c.kernel + "'");
    }
    if (c.mode != "thinning" && c.mode != "imbedding") {
        throw ConfigError("mode must be thinning or imbedding, got '" + c.mode + "'");
    }
    if (c.n_paths < 1) throw ConfigError("n_paths must be >= 1");
    if (!(c.h > 0.0)) throw ConfigError("h must be > 0");
    if (c.n_max < 1) throw ConfigError("n_max must be >= 1");
    if (c.j_max < 1) throw ConfigError("j_max must be >= 1");
    const Kernel k = make_kernel(c);
    if (!(k.l1_norm() < 1.0)) {
        std::string detail = c.kernel == "exp" ? " (alpha=" + format_double(c.alpha) + ", beta=" + format_double(c.beta) + ")"
                                               : " (table " + c.table + ")";
        throw ConfigError("stability violated: kernel L1 norm " + format_double(k.l1_norm()) + " >= 1" + detail);
    }
}

}  // namespace

RunConfig default_config() { return RunConfig{}; }

Kernel make_kernel(const RunConfig& c) {
    try {
        if (c.kernel == "zero") return Kernel::zero();
        if (c.kernel == "table") return Kernel::load_table_csv(c.table);
        return Kernel::exponential(c.alpha, c.beta);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("kernel: ") + e.what());
    }
}

HawkesParams make_params(const RunConfig& c) {
    try {
        return HawkesParams::make(c.mu, make_kernel(c), Window{c.T, c.M});
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

SimulationMode make_mode(const RunConfig& c) {
    return c.mode == "imbedding" ? SimulationMode::Imbedding : SimulationMode::ExactThinning;
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (!kKnownKeys.contains(key)) {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        if (entries.contains(key)) {
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
        entries.emplace(std::move(key), Entry{std::move(value), lineno});
    }

    auto require = [&](const char* key) -> const Entry& {
        const auto it = entries.find(key);
        if (it == entries.end()) throw ConfigError(std::string("missing required key '") + key + "'");
        return it->second;
    };
    auto optional = [&](const char* key) -> const Entry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    RunConfig c;
    c.mu = to_double("mu", require("mu"));
    c.T = to_double("T", require("T"));
    c.M = to_double("M", require("M"));
    c.kernel = require("kernel").value;
    if (c.kernel == "exp") {
        c.alpha = to_double("alpha", require("alpha"));
        c.beta = to_double("beta", require("beta"));
    } else {
        if (const Entry* e = optional("alpha")) c.alpha = to_double("alpha", *e);
        if (const Entry* e = optional("beta")) c.beta = to_double("beta", *e);
    }
    if (c.kernel == "table") c.table = require("table").value;
    else if (const Entry* e = optional("table")) c.table = e->value;
    if (const Entry* e = optional("seed")) c.seed = to_uint("seed", *e);
    if (const Entry* e = optional("n_paths")) c.n_paths = to_uint("n_paths", *e);
    if (const Entry* e = optional("h")) c.h = to_double("h", *e);
    if (const Entry* e = optional("horizon")) c.horizon = to_double("horizon", *e);
    if (const Entry* e = optional("n_max")) c.n_max = to_uint("n_max", *e);
    if (const Entry* e = optional("j_max")) c.j_max = to_uint("j_max", *e);
    if (const Entry* e = optional("mode")) c.mode = e->value;
    if (const Entry* e = optional("points")) c.points = e->value;
    if (const Entry* e = optional("input")) c.input = e->value;
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out << "mu = " << format_double(c.mu) << '\n'
        << "T = " << format_double(c.T) << '\n'
        << "M = " << format_double(c.M) << '\n'
        << "kernel = " << c.kernel << '\n'
        << "alpha = " << format_double(c.alpha) << '\n'
        << "beta = " << format_double(c.beta) << '\n';
    if (!c.table.empty()) out << "table = " << c.table << '\n';
    out << "seed = " << c.seed << '\n'
        << "n_paths = " << c.n_paths << '\n'
        << "h = " << format_double(c.h) << '\n'
        << "horizon = " << format_double(c.horizon) << '\n'
        << "n_max = " << c.n_max << '\n'
        << "j_max = " << c.j_max << '\n'
        << "mode = " << c.mode << '\n';
    if (!c.points.empty()) out << "points = " << c.points << '\n';
    if (!c.input.empty()) out << "input = " << c.input << '\n';
    return out.str();
}

}  // namespace pchaos
