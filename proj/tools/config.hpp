#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace caustic::cli {

// Thrown for anything that should end in exit status 2.
class UsageError : public std::runtime_error {
public:
    UsageError(std::string field, int line, const std::string& what)
        : std::runtime_error(what), field_(std::move(field)), line_(line) {}
    const std::string& field() const { return field_; }
    int line() const { return line_; }  // 0: command line

private:
    std::string field_;
    int line_;
};

struct RawValue {
    std::string text;
    int line = 0;
};

using RawConfig = std::map<std::string, RawValue>;

enum class Command { rays, field, wigner, validate };

struct RunConfig {
    Command command = Command::wigner;
    std::string scenario;  // airy | linear_layer
    double epsilon = 0;
    double x0 = 0;
    // linear layer
    double mu1 = 0, h = 0, eta0 = 0, psi = 0, kappa0 = 0;
    double xmin = 0.05, xmax = 1.9, kmin = -1.6, kmax = 1.6;
    std::size_t nx = 200, nk = 200, nrays = 16;
    std::size_t sigma_samples = 8192;
    double taper_fraction = 0.1;
    std::string out = "out";
    std::vector<std::string> formats{"csv", "json"};
    std::uint64_t seed = 20240917;

    bool wants(const std::string& format) const;
};

const std::vector<std::string>& known_keys();

// key = value lines; '#' starts a comment.
RawConfig parse_config(std::istream& in);

// Later entries win.
void overlay(RawConfig& base, const RawConfig& top);

RunConfig resolve(const RawConfig& raw, Command command);

std::string to_string(Command c);

}  // namespace caustic::cli
