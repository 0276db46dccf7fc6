#pragma once

#include <complex>
#include <functional>
#include <ostream>
#include <utility>
#include <vector>

#include "caustic/common.hpp"
#include "caustic/rays.hpp"

namespace caustic::wkb {

using cplx = std::complex<double>;

enum class BranchLabel { Plus, Minus, Right };

struct BranchField {
    BranchLabel label = BranchLabel::Minus;
    std::function<double(double)> S;
    std::function<cplx(double)> A;  // empty when the amplitude is not fixed (right-moving branch)
    int maslov_index = 0;
    Interval domain;
    // closed-form S', S'', S''' where available
    std::function<double(double)> dS, d2S, d3S;
};

struct WkbField {
    std::vector<BranchField> branches;
    double epsilon = 0.1;
    cplx alpha0{};

    cplx operator()(double x) const;
};

cplx airy_alpha0(double x0);

// (Plus, Minus) branches on (0, x0)
std::pair<BranchField, BranchField> airy_wkb_branches(double x0);
// x > x0; phase only
BranchField airy_right_branch(double x0);

struct FieldSample {
    cplx value;
    bool caustic_zone = false;  // x within 10 eps^{2/3} of the caustic
};

FieldSample airy_wkb_field(double x, double epsilon, double x0);

// Fundamental solution of eps^2 u'' + x u = point source at x0.
cplx airy_greens(double x, double x0, double epsilon);
cplx airy_inner_approx(double x, double x0, double epsilon);

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

std::vector<double> eikonal_residual(const RealFn& S, const rays::RefractionProfile1D& profile,
                                     const std::vector<double>& xs);
// |grad S|^2 - eta^2 on (y, z) points
std::vector<double> eikonal_residual_2d(const std::function<double(double, double)>& S,
                                        const std::function<double(double, double)>& eta_squared,
                                        const std::vector<std::pair<double, double>>& pts);
// |2 S' A' + S'' A|
std::vector<double> transport_residual(const RealFn& S, const ComplexFn& A, const std::vector<double>& xs);

std::pair<double, double> linear_layer_phases(double y, double z, const rays::LinearLayerParams& p);
// (A+, A-) = (-i |J+|^{-1/2}, J-^{-1/2}) at depth z
std::pair<cplx, cplx> linear_layer_amplitudes(double z, const rays::LinearLayerParams& p);

void write_field_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<cplx>& u);

}  // namespace caustic::wkb
