#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace caustic::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string where(const std::string& field, int line) {
    return line > 0 ? "line " + std::to_string(line) + ": field '" + field + "'" : "field '" + field + "'";
}

double as_real(const std::string& key, const RawValue& v) {
    double out = 0;
    const char* end = v.text.data() + v.text.size();
    auto [p, ec] = std::from_chars(v.text.data(), end, out);
    if (ec != std::errc() || p != end || !std::isfinite(out))
        throw UsageError(key, v.line, where(key, v.line) + ": expected a real number, got '" + v.text + "'");
    return out;
}

template <class T>
T as_count(const std::string& key, const RawValue& v) {
    T out = 0;
    const char* end = v.text.data() + v.text.size();
    auto [p, ec] = std::from_chars(v.text.data(), end, out);
    if (ec != std::errc() || p != end)
        throw UsageError(key, v.line, where(key, v.line) + ": expected a non-negative integer, got '" + v.text + "'");
    return out;
}

}  // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{"scenario", "epsilon", "x0",    "mu1",  "h",     "eta0",
                                               "psi",      "kappa0",  "xmin",  "xmax", "kmin",  "kmax",
                                               "nx",       "nk",      "nrays", "sigma_samples",
                                               "taper_fraction",      "out",   "format", "seed"};
    return keys;
}

bool RunConfig::wants(const std::string& format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

std::string to_string(Command c) {
    switch (c) {
        case Command::rays: return "rays";
        case Command::field: return "field";
        case Command::wigner: return "wigner";
        case Command::validate: return "validate";
    }
    return "?";
}

RawConfig parse_config(std::istream& in) {
    RawConfig raw;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("", n, "line " + std::to_string(n) + ": expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        const auto& keys = known_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw UsageError(key, n, "line " + std::to_string(n) + ": unknown field '" + key + "'");
        if (value.empty()) throw UsageError(key, n, where(key, n) + ": empty value");
        raw[key] = {value, n};
    }
    return raw;
}

void overlay(RawConfig& base, const RawConfig& top) {
    for (const auto& [k, v] : top) base[k] = v;
}

RunConfig resolve(const RawConfig& raw, Command command) {
    RunConfig c;
    c.command = command;
    auto get = [&](const std::string& key) -> const RawValue* {
        const auto it = raw.find(key);
        return it == raw.end() ? nullptr : &it->second;
    };
    auto require = [&](const std::string& key) -> const RawValue& {
        const RawValue* v = get(key);
        if (!v) throw UsageError(key, 0, "missing required field '" + key + "'");
        return *v;
    };
    auto real_or = [&](const std::string& key, double& dst) {
        if (const RawValue* v = get(key)) dst = as_real(key, *v);
    };
    auto count_or = [&](const std::string& key, std::size_t& dst) {
        if (const RawValue* v = get(key)) dst = as_count<std::size_t>(key, *v);
    };

    c.scenario = require("scenario").text;
    if (c.scenario != "airy" && c.scenario != "linear_layer") {
        const auto& v = require("scenario");
        throw UsageError("scenario", v.line, where("scenario", v.line) + ": expected airy or linear_layer, got '" + v.text + "'");
    }
    c.epsilon = as_real("epsilon", require("epsilon"));
    if (!(c.epsilon > 0)) throw UsageError("epsilon", require("epsilon").line, where("epsilon", require("epsilon").line) + ": must be positive");

    if (command != Command::validate) {
        if (c.scenario == "airy") {
            c.x0 = as_real("x0", require("x0"));
            if (!(c.x0 > 0)) throw UsageError("x0", require("x0").line, where("x0", require("x0").line) + ": must be positive");
        } else {
            if (command == Command::wigner)
                throw UsageError("scenario", require("scenario").line, "wigner: only the airy scenario has Wigner grids");
            c.mu1 = as_real("mu1", require("mu1"));
            c.h = as_real("h", require("h"));
            c.eta0 = as_real("eta0", require("eta0"));
            c.psi = as_real("psi", require("psi"));
            c.kappa0 = as_real("kappa0", require("kappa0"));
        }
    }

    real_or("xmin", c.xmin);
    real_or("xmax", c.xmax);
    real_or("kmin", c.kmin);
    real_or("kmax", c.kmax);
    count_or("nx", c.nx);
    count_or("nk", c.nk);
    count_or("nrays", c.nrays);
    count_or("sigma_samples", c.sigma_samples);
    real_or("taper_fraction", c.taper_fraction);
    if (const RawValue* v = get("seed")) c.seed = as_count<std::uint64_t>("seed", *v);
    if (const RawValue* v = get("out")) c.out = v->text;
    if (const RawValue* v = get("format")) {
        c.formats.clear();
        std::stringstream ss(v->text);
        std::string f;
        while (std::getline(ss, f, ',')) {
            f = trim(f);
            if (f != "csv" && f != "json")
                throw UsageError("format", v->line, where("format", v->line) + ": unknown format '" + f + "'");
            if (!c.wants(f)) c.formats.push_back(f);
        }
        if (c.formats.empty()) throw UsageError("format", v->line, where("format", v->line) + ": no formats given");
    }

    auto line_of = [&](const std::string& key) {
        const RawValue* v = get(key);
        return v ? v->line : 0;
    };
    for (const char* key : {"nx", "nk"}) {
        const std::size_t n = std::string(key) == "nx" ? c.nx : c.nk;
        if (n < 8) throw UsageError(key, line_of(key), where(key, line_of(key)) + ": grid counts must be at least 8");
    }
    if (c.nrays < 1) throw UsageError("nrays", line_of("nrays"), where("nrays", line_of("nrays")) + ": must be at least 1");
    if (!(c.xmin < c.xmax)) throw UsageError("xmax", line_of("xmax"), where("xmax", line_of("xmax")) + ": bounds must satisfy xmin < xmax");
    if (!(c.kmin < c.kmax)) throw UsageError("kmax", line_of("kmax"), where("kmax", line_of("kmax")) + ": bounds must satisfy kmin < kmax");
    if (!(c.taper_fraction >= 0 && c.taper_fraction < 0.5))
        throw UsageError("taper_fraction", line_of("taper_fraction"), where("taper_fraction", line_of("taper_fraction")) + ": must lie in [0, 0.5)");
    if (c.scenario == "airy" && command != Command::validate && command != Command::rays) {
        if (!(c.xmin > 0)) throw UsageError("xmin", line_of("xmin"), where("xmin", line_of("xmin")) + ": must be positive");
        if (command == Command::field && !(c.xmax < c.x0))
            throw UsageError("xmax", line_of("xmax"), where("xmax", line_of("xmax")) + ": must be below x0");
    }
    return c;
}

}  // namespace caustic::cli
