#pragma once

#include <complex>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "caustic/rays.hpp"
#include "caustic/stphase.hpp"
#include "caustic/wigner.hpp"

// Wigner transform of the two-phase Airy WKB field psi = A+ e^{iS+/eps} + A- e^{iS-/eps}.
//
// The four Wigner integrals W_ab use F(s) = S_a(x + s) - S_b(x - s) - 2ks and D(s) = A_a(x + s) conj(A_b(x - s)):
//
//   index  (a, b)  contributes where                 unfolding parameter
//   1      (+, +)  k > 0, x <= 2k^2                   alpha = k - sqrt(x)
//   2      (-, -)  k < 0, x <= 2k^2                   alpha = k + sqrt(x)
//   3      (+, -)  x >= 2k^2 (point sgn(k) s0), x < k^2
//   4      (-, +)  x >= 2k^2 (point -sgn(k) s0), x < k^2
//
// with s0 = 2|k| |x - k^2|^{1/2}.
namespace caustic::surgery {

using cplx = std::complex<double>;

enum class RegionLabel { Exterior, OnManifold, Between, OnConjugate, Interior };

std::string to_string(RegionLabel r);

RegionLabel classify_region(double x, double k);

struct PhaseValues {
    cplx F, Fs, Fss, Fsss;
};

struct WignerBranchIntegral {
    int index = 1;
    std::function<cplx(cplx, double)> D;                     // (sigma, x)
    std::function<PhaseValues(cplx, double, double)> F;      // (sigma, x, k); principal square roots
};

WignerBranchIntegral airy_wigner_integral(int index, double x0);

// real sigma with |sigma| < x
PhaseValues wigner_phase_eval(const WignerBranchIntegral& w, double sigma, double x, double k);
// F_sigma alone, allowed on the closed interval |sigma| <= x
double wigner_phase_gradient(const WignerBranchIntegral& w, double sigma, double x, double k);

struct StationaryPointReport {
    RegionLabel region;
    std::vector<stphase::StationaryPoint> points;
    std::string table_cell;
};

StationaryPointReport stationary_points(const WignerBranchIntegral& w, double x, double k);

enum class AsymptoticFlag { none, no_stationary_point, singular_curvature };

struct DiagonalResult {
    double value = 0;
    AsymptoticFlag flag = AsymptoticFlag::none;
};

struct OffDiagonalResult {
    cplx value;
    AsymptoticFlag flag = AsymptoticFlag::none;
};

DiagonalResult diagonal_asymptotics(int index, double x, double k, double epsilon, double x0);
OffDiagonalResult offdiagonal_asymptotics(int index, double x, double k, double epsilon, double x0);

// (1/(2 sqrt x0)) (2/eps)^{2/3} Ai((2/eps)^{2/3}(k^2 - x)); x <= 0 only with extended = true
double combined_wkb_wigner(double x, double k, double epsilon, double x0, bool extended = false);

double k_integral_amplitude(double x, double epsilon, double x0, bool extended = false);
// trapezoid of k W over the symmetric grid [-k_max, k_max]
double k_integral_flux(double x, double epsilon, double x0, double k_max = 3.0, std::size_t nk = 6001);

// k f_x + f_k / 2 on interior grid points
wigner::PhaseSpaceGrid liouville_residual(const wigner::PhaseSpaceGrid& g);
// k f_x + (eta^2)' f_k / 2; profiles with (eta^2)''' != 0 are rejected
wigner::PhaseSpaceGrid stationary_wigner_residual(const rays::RefractionProfile1D& profile,
                                                  const wigner::PhaseSpaceGrid& g, double epsilon);

void write_surgery_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<double>& ks, double epsilon,
                       double x0);

}  // namespace caustic::surgery
