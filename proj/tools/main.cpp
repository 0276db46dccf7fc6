#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "caustic/errors.hpp"
#include "caustic/kl.hpp"
#include "caustic/rays.hpp"
#include "caustic/surgery.hpp"
#include "caustic/wigner.hpp"
#include "caustic/wkb.hpp"
#include "config.hpp"
#include "acceptance/criteria.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace caustic;
using cli::Command;
using cli::RunConfig;
using cplx = std::complex<double>;

namespace {

constexpr const char* kVersion = "1.0.0";

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

std::string row(std::initializer_list<double> vals) {
    std::string s;
    char buf[32];
    bool first = true;
    for (double v : vals) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        if (!first) s += ',';
        s += buf;
        first = false;
    }
    s += '\n';
    return s;
}

class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void write(const std::string& name, const std::string& content) {
        std::ofstream f(dir_ / name, std::ios::binary);
        f << content;
        if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
        files_.push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
    }

    // manifest goes last and lands atomically
    void finish(const RunConfig& c, const cli::RawConfig& raw, double seconds) {
        json cfg;
        cfg["command"] = cli::to_string(c.command);
        for (const auto& key : cli::known_keys())
            if (auto it = raw.find(key); it != raw.end()) cfg[key] = it->second.text;
        json m;
        m["tool"] = "caustic";
        m["version"] = kVersion;
        m["config"] = cfg;
        m["duration_s"] = seconds;
        m["outputs"] = files_;
        const fs::path tmp = dir_ / "manifest.json.tmp";
        {
            std::ofstream f(tmp, std::ios::binary);
            f << m.dump(2) << '\n';
            if (!f) throw std::runtime_error("cannot write " + tmp.string());
        }
        fs::rename(tmp, dir_ / "manifest.json");
    }

private:
    fs::path dir_;
    json files_ = json::array();
};

void cmd_rays(const RunConfig& c, OutputSet& out) {
    std::ostringstream fan, caustics;
    json summary;
    if (c.scenario == "airy") {
        const auto prof = rays::airy_profile();
        const double t_end = 4 * std::sqrt(c.x0);
        std::vector<rays::RayPath> paths;
        caustics << "ray_id,x0,k0,t,x\n";
        std::size_t id = 0;
        json list = json::array();
        for (double x0 : linspace(c.x0 / c.nrays, c.x0, c.nrays)) {
            for (double sign : {-1.0, 1.0}) {
                const double k0 = sign * std::sqrt(x0);
                paths.push_back(rays::integrate_hamiltonian(prof, x0, k0, t_end));
                for (const auto& p : rays::find_caustic(prof, x0, k0, t_end)) {
                    caustics << id << ',' << row({x0, k0, p.t, p.x});
                    list.push_back({{"ray_id", id}, {"t", p.t}, {"x", p.x}});
                }
                ++id;
            }
        }
        rays::write_ray_fan_csv(fan, paths);
        summary["caustics"] = list;
    } else {
        const auto p = rays::make_linear_layer(c.mu1, c.h, c.eta0, c.psi, c.kappa0);
        const double tc = rays::linear_layer_caustic_time(p), zc = rays::linear_layer_caustic_depth(p);
        rays::write_layer_fan_csv(fan, p, linspace(-1.0, 1.0, c.nrays), linspace(0.0, 2 * tc, c.nx));
        caustics << "t,z\n" << row({tc, zc});
        summary["caustic_time"] = tc;
        summary["caustic_depth"] = zc;
    }
    if (c.wants("csv")) {
        out.write("rays.csv", fan.str());
        out.write("caustics.csv", caustics.str());
    }
    if (c.wants("json")) out.write("rays.json", summary.dump(2) + "\n");
}

void cmd_field(const RunConfig& c, OutputSet& out) {
    std::ostringstream csv;
    json summary;
    if (c.scenario == "airy") {
        const auto [plus, minus] = wkb::airy_wkb_branches(c.x0);
        const auto coords = kl::kl_coordinates(plus.S, minus.S);
        const auto amps = kl::kl_amplitudes(plus.A, minus.A, coords.rho);
        csv << "x,re_wkb,im_wkb,re_kl,im_kl,re_greens,im_greens,caustic_zone\n";
        double wkb_err = 0, kl_err = 0, scale = 0;
        for (double x : linspace(c.xmin, c.xmax, c.nx)) {
            const auto w = wkb::airy_wkb_field(x, c.epsilon, c.x0);
            const cplx k = kl::kl_field(coords, amps, c.epsilon, x);
            const cplx g = wkb::airy_greens(x, c.x0, c.epsilon);
            csv << row({x, w.value.real(), w.value.imag(), k.real(), k.imag(), g.real(), g.imag(), w.caustic_zone ? 1.0 : 0.0});
            wkb_err = std::max(wkb_err, std::abs(w.value - g));
            kl_err = std::max(kl_err, std::abs(k - g));
            scale = std::max(scale, std::abs(g));
        }
        summary["max_abs_greens"] = scale;
        summary["max_abs_wkb_minus_greens"] = wkb_err;
        summary["max_abs_kl_minus_greens"] = kl_err;
    } else {
        const auto p = rays::make_linear_layer(c.mu1, c.h, c.eta0, c.psi, c.kappa0);
        const double zc = rays::linear_layer_caustic_depth(p);
        auto sp = [&](double z) { return wkb::linear_layer_phases(0.0, z, p).first; };
        auto sm = [&](double z) { return wkb::linear_layer_phases(0.0, z, p).second; };
        csv << "z,re_wkb,im_wkb,abs_wkb2\n";
        const double lo = std::max(c.xmin, zc), hi = std::min(c.xmax, p.h);
        if (!(lo < hi)) throw cli::UsageError("xmin", 0, "field: [xmin, xmax] misses the illuminated layer (z_c, h]");
        for (double z : linspace(lo, hi, c.nx)) {
            if (z <= zc) continue;
            const auto [ap, am] = wkb::linear_layer_amplitudes(z, p);
            const cplx u = ap * std::exp(cplx(0, sp(z) / c.epsilon)) + am * std::exp(cplx(0, sm(z) / c.epsilon));
            csv << row({z, u.real(), u.imag(), std::norm(u)});
        }
        summary["caustic_depth"] = zc;
    }
    if (c.wants("csv")) out.write("field.csv", csv.str());
    if (c.wants("json")) out.write("field.json", summary.dump(2) + "\n");
}

void cmd_wigner(const RunConfig& c, OutputSet& out) {
    const auto xs = linspace(c.xmin, c.xmax, c.nx), ks = linspace(c.kmin, c.kmax, c.nk);
    const double eps = c.epsilon, x0 = c.x0;
    wigner::WaveFunctionSampler psi{[=](double x) { return wkb::airy_inner_approx(x, x0, eps); },
                                    Interval{-25 * std::pow(eps, 2.0 / 3.0), INFINITY}, eps, true};
    wigner::QuadraturePolicy q;
    q.truncation_rule = wigner::TruncationRule::domain_limited;
    q.sigma_samples = c.sigma_samples;
    q.taper_fraction = c.taper_fraction;
    wigner::PhaseSpaceGrid numeric;
    try {
        numeric = wigner::wigner_numeric(psi, xs, ks, q);
    } catch (const UndersampledError& e) {
        throw cli::UsageError("sigma_samples", 0,
                              "field 'sigma_samples': at least " + std::to_string(e.required_samples) + " required");
    }
    std::string csv = "x,k,region,W_exact,W_numeric,W_semiclassical,W_combined,diff_numeric,diff_semiclassical,diff_combined\n";
    csv.reserve(xs.size() * ks.size() * 200);
    wigner::PhaseSpaceGrid combined{xs, ks, std::vector<double>(xs.size() * ks.size()), eps};
    double max_num = 0, max_semi = 0, max_comb = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ks.size(); ++j) {
            const double x = xs[i], k = ks[j];
            const double ex = wigner::wigner_exact_airy(x, k, eps, x0);
            const double semi = surgery::diagonal_asymptotics(1, x, k, eps, x0).value +
                                surgery::diagonal_asymptotics(2, x, k, eps, x0).value +
                                (surgery::offdiagonal_asymptotics(3, x, k, eps, x0).value +
                                 surgery::offdiagonal_asymptotics(4, x, k, eps, x0).value)
                                    .real();
            const double comb = surgery::combined_wkb_wigner(x, k, eps, x0);
            combined.at(i, j) = comb;
            const double num = numeric.at(i, j);
            std::string r = row({x, k});
            r.pop_back();
            r += ',' + surgery::to_string(surgery::classify_region(x, k)) + ',';
            r += row({ex, num, semi, comb, num - ex, semi - ex, comb - ex});
            csv += r;
            max_num = std::max(max_num, std::abs(num - ex));
            if (std::isfinite(semi)) max_semi = std::max(max_semi, std::abs(semi - ex));
            max_comb = std::max(max_comb, std::abs(comb - ex));
        }
    if (c.wants("csv")) out.write("wigner.csv", csv);
    if (c.wants("json")) {
        std::ostringstream grid;
        wigner::write_wigner_manifest(grid, combined, {x0, c.sigma_samples, c.taper_fraction, kVersion});
        out.write("wigner_grid.json", grid.str());
        json s;
        s["max_abs_numeric_minus_exact"] = max_num;
        s["max_abs_semiclassical_minus_exact"] = max_semi;
        s["max_abs_combined_minus_exact"] = max_comb;
        out.write("wigner_summary.json", s.dump(2) + "\n");
    }
}

bool cmd_validate(const RunConfig& c, OutputSet& out) {
    json report;
    report["scenario"] = c.scenario;
    report["epsilon"] = c.epsilon;
    report["seed"] = c.seed;
    json list = json::array();
    bool ok = true;
    for (const auto& r : acceptance::run_all({c.seed})) {
        std::printf("AC%-2d %s  %s: %s (%.2f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(),
                    r.seconds);
        std::fflush(stdout);
        list.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        ok = ok && r.pass;
    }
    report["criteria"] = list;
    report["pass"] = ok;
    if (c.wants("json")) out.write("validate_report.json", report.dump(2) + "\n");
    if (c.wants("csv")) {
        std::string csv = "id,name,pass,detail\n";
        for (const auto& r : list)
            csv += std::to_string(r["id"].get<int>()) + "," + r["name"].get<std::string>() + "," +
                   (r["pass"].get<bool>() ? "1" : "0") + ",\"" + r["detail"].get<std::string>() + "\"\n";
        out.write("validate_report.csv", csv);
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Caustic asymptotics toolkit: rays, fields, Wigner transforms and validation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string config_file;
    cli::RawConfig flags;
    std::map<std::string, std::string> values;
    std::map<CLI::App*, Command> commands;
    for (auto [name, cmd, help] : {std::tuple{"rays", Command::rays, "ray fans, Jacobians and caustic locations"},
                                   std::tuple{"field", Command::field, "WKB, KL and fundamental-solution fields"},
                                   std::tuple{"wigner", Command::wigner, "exact, numeric, semiclassical and combined Wigner grids"},
                                   std::tuple{"validate", Command::validate, "run the acceptance suite"}}) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands[sub] = cmd;
        sub->set_help_flag("--help", "print this help and exit");
        sub->add_option("--config", config_file, "key = value configuration file");
        for (const auto& key : cli::known_keys())
            sub->add_option("--" + key, values[key], key == "out" ? "output directory" : key);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const Command command = commands.at(sub);
    try {
        const auto t0 = std::chrono::steady_clock::now();
        cli::RawConfig raw;
        if (!config_file.empty()) {
            std::ifstream f(config_file);
            if (!f) throw cli::UsageError("config", 0, "cannot open config file '" + config_file + "'");
            raw = cli::parse_config(f);
        }
        for (const auto& key : cli::known_keys())
            if (sub->count("--" + key) > 0) flags[key] = {values[key], 0};
        cli::overlay(raw, flags);
        const RunConfig c = cli::resolve(raw, command);

        OutputSet out(c.out);
        bool ok = true;
        switch (command) {
            case Command::rays: cmd_rays(c, out); break;
            case Command::field: cmd_field(c, out); break;
            case Command::wigner: cmd_wigner(c, out); break;
            case Command::validate: ok = cmd_validate(c, out); break;
        }
        out.finish(c, raw, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        return ok ? 0 : 1;
    } catch (const cli::UsageError& e) {
        std::cerr << "caustic " << cli::to_string(command) << ": " << e.what() << '\n';
        return 2;
    } catch (const caustic::DomainError& e) {
        // parameter combinations the library rejects are configuration errors
        std::cerr << "caustic " << cli::to_string(command) << ": " << e.what() << '\n';
        return 2;
    } catch (const caustic::PreconditionError& e) {
        std::cerr << "caustic " << cli::to_string(command) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "caustic " << cli::to_string(command) << ": " << e.what() << '\n';
        return 1;
    }
}
