#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "caustic/common.hpp"
#include "caustic/wkb.hpp"

namespace caustic::wigner {

using cplx = std::complex<double>;

struct WaveFunctionSampler {
    std::function<cplx(double)> value;
    Interval support;
    double epsilon = 0.1;
    bool decays_outside = true;
};

enum class TruncationRule { support_limited, domain_limited };

struct QuadraturePolicy {
    std::size_t sigma_samples = 4096;
    double taper_fraction = 0.1;
    TruncationRule truncation_rule = TruncationRule::support_limited;
    double delta = 0.05;  // domain_limited window shrink: |sigma| <= (1 - delta) * distance to the boundary
};

struct PhaseSpaceGrid {
    std::vector<double> xs, ks;
    std::vector<double> values;  // row-major, xs.size() x ks.size()
    double epsilon = 0;

    double& at(std::size_t i, std::size_t j) { return values[i * ks.size() + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * ks.size() + j]; }
};

// (1 / (pi eps)) int psi(x + s) conj(psi(x - s)) e^{-2iks/eps} ds, rows computed in parallel
PhaseSpaceGrid wigner_numeric(const WaveFunctionSampler& psi, const std::vector<double>& xs,
                              const std::vector<double>& ks, const QuadraturePolicy& q = {});

double wigner_exact_airy(double x, double k, double epsilon, double x0);

// positive root of S'(x + s) + S'(x - s) = 2k with s in bracket
std::optional<double> chord_points(const std::function<double(double)>& S_prime, double x, double k,
                                   Interval bracket);

double semiclassical_wigner_local(const wkb::BranchField& branch, double x, double k, double epsilon);
double semiclassical_wigner_uniform(const wkb::BranchField& branch, double x, double k, double epsilon);

std::vector<double> wigner_moment0(const PhaseSpaceGrid& g, bool* truncated = nullptr);
std::vector<double> wigner_moment1(const PhaseSpaceGrid& g, bool* truncated = nullptr);

// psi_hat(q) = (1/2pi) int e^{iqz} psi^eps(z) dz, negligible for |q| > q_cut.
// Returns the scaled transform W^eps(x, k) = (1/eps) W(x, k/eps).
double wigner_via_fourier(const std::function<cplx(double)>& psi_hat, double x, double k, double epsilon,
                          double q_cut);

double weak_limit_pairing(const PhaseSpaceGrid& g, const std::function<double(double, double)>& Q);

struct GridManifestInfo {
    double x0 = 0;
    std::size_t sigma_samples = 0;
    double taper_fraction = 0;
    std::string code_version;
};

void write_wigner_csv(std::ostream& os, const PhaseSpaceGrid& g);
void write_wigner_manifest(std::ostream& os, const PhaseSpaceGrid& g, const GridManifestInfo& info);

}  // namespace caustic::wigner
