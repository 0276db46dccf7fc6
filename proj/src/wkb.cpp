#include "caustic/wkb.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "caustic/errors.hpp"
#include "caustic/numdiff.hpp"
#include "caustic/specfun.hpp"

namespace caustic::wkb {

using namespace std::complex_literals;

cplx WkbField::operator()(double x) const {
    cplx u = 0;
    for (const BranchField& b : branches) {
        if (!b.domain.contains_open(x) || !b.A) continue;
        u += b.A(x) * std::exp(1i * (b.S(x) / epsilon));
    }
    return u;
}

cplx airy_alpha0(double x0) {
    if (!(x0 > 0)) throw DomainError("airy_alpha0: x0 must be positive");
    return std::exp(-1i * (std::numbers::pi / 4)) / (2 * std::sqrt(x0));
}

std::pair<BranchField, BranchField> airy_wkb_branches(double x0) {
    if (!(x0 > 0) || !std::isfinite(x0)) throw DomainError("airy_wkb_branches: x0 must be positive");
    const double c = 2.0 / 3.0 * x0 * std::sqrt(x0);
    const cplx amp = airy_alpha0(x0) * std::pow(x0, 0.25);
    BranchField plus, minus;
    plus.label = BranchLabel::Plus;
    plus.maslov_index = 1;
    plus.S = [c](double x) { return 2.0 / 3.0 * x * std::sqrt(x) + c; };
    plus.dS = [](double x) { return std::sqrt(x); };
    plus.d2S = [](double x) { return 0.5 / std::sqrt(x); };
    plus.d3S = [](double x) { return -0.25 / (x * std::sqrt(x)); };
    plus.A = [amp](double x) { return -1i * amp * std::pow(x, -0.25); };
    plus.domain = Interval{0.0, x0};

    minus.label = BranchLabel::Minus;
    minus.maslov_index = 0;
    minus.S = [c](double x) { return -2.0 / 3.0 * x * std::sqrt(x) + c; };
    minus.dS = [](double x) { return -std::sqrt(x); };
    minus.d2S = [](double x) { return -0.5 / std::sqrt(x); };
    minus.d3S = [](double x) { return 0.25 / (x * std::sqrt(x)); };
    minus.A = [amp](double x) { return amp * std::pow(x, -0.25); };
    minus.domain = Interval{0.0, x0};
    return {plus, minus};
}

BranchField airy_right_branch(double x0) {
    if (!(x0 > 0)) throw DomainError("airy_right_branch: x0 must be positive");
    const double c = 2.0 / 3.0 * x0 * std::sqrt(x0);
    BranchField r;
    r.label = BranchLabel::Right;
    r.maslov_index = 0;
    r.S = [c](double x) { return 2.0 / 3.0 * x * std::sqrt(x) - c; };
    r.dS = [](double x) { return std::sqrt(x); };
    r.d2S = [](double x) { return 0.5 / std::sqrt(x); };
    r.d3S = [](double x) { return -0.25 / (x * std::sqrt(x)); };
    r.domain = Interval{x0, INFINITY};
    return r;
}

FieldSample airy_wkb_field(double x, double epsilon, double x0) {
    if (!(epsilon > 0)) throw DomainError("airy_wkb_field: epsilon must be positive");
    if (!(x > 0 && x < x0)) throw DomainError("airy_wkb_field: x outside (0, x0)");
    const double c = 2.0 / 3.0 * x0 * std::sqrt(x0);
    const double s = 2.0 / 3.0 * x * std::sqrt(x);
    const cplx pre = airy_alpha0(x0) * std::pow(x0, 0.25) * std::pow(x, -0.25);
    FieldSample out;
    out.value = pre * (-1i * std::exp(1i * ((c + s) / epsilon)) + std::exp(1i * ((c - s) / epsilon)));
    out.caustic_zone = x < 10 * std::pow(epsilon, 2.0 / 3.0);
    return out;
}

cplx airy_greens(double x, double x0, double epsilon) {
    if (!(x0 > 0)) throw DomainError("airy_greens: x0 must be positive");
    if (!(epsilon > 0)) throw DomainError("airy_greens: epsilon must be positive");
    const cplx sigma = -1i * std::exp(-1i * (std::numbers::pi / 4)) * epsilon;
    const double s = std::pow(epsilon, -2.0 / 3.0);
    const auto a0 = specfun::airy_all(-s * x0);
    const auto ax = specfun::airy_all(-s * x);
    const cplx pre = 1i * sigma * std::numbers::pi * std::pow(epsilon, -4.0 / 3.0);
    if (x <= x0) return pre * cplx(a0.ai, -a0.bi) * ax.ai;
    return pre * a0.ai * cplx(ax.ai, -ax.bi);
}

cplx airy_inner_approx(double x, double x0, double epsilon) {
    if (!(x0 > 0)) throw DomainError("airy_inner_approx: x0 must be positive");
    if (!(epsilon > 0)) throw DomainError("airy_inner_approx: epsilon must be positive");
    const double phase = 2.0 / 3.0 * x0 * std::sqrt(x0) / epsilon;
    return std::sqrt(std::numbers::pi) * -1i * std::pow(x0, -0.25) * std::exp(1i * phase) *
           std::pow(epsilon, -1.0 / 6.0) * specfun::ai(-std::pow(epsilon, -2.0 / 3.0) * x);
}

std::vector<double> eikonal_residual(const RealFn& S, const rays::RefractionProfile1D& profile,
                                     const std::vector<double>& xs) {
    std::vector<double> r;
    r.reserve(xs.size());
    for (double x : xs) {
        const double h = numdiff::step(x);
        const double sp = numdiff::d1(S, x, h);
        r.push_back(sp * sp - profile.eta_squared(x));
    }
    return r;
}

std::vector<double> eikonal_residual_2d(const std::function<double(double, double)>& S,
                                        const std::function<double(double, double)>& eta_squared,
                                        const std::vector<std::pair<double, double>>& pts) {
    std::vector<double> r;
    r.reserve(pts.size());
    for (auto [y, z] : pts) {
        const double hy = numdiff::step(y), hz = numdiff::step(z);
        const double sy = numdiff::d1([&](double v) { return S(v, z); }, y, hy);
        const double sz = numdiff::d1([&](double v) { return S(y, v); }, z, hz);
        r.push_back(sy * sy + sz * sz - eta_squared(y, z));
    }
    return r;
}

std::vector<double> transport_residual(const RealFn& S, const ComplexFn& A, const std::vector<double>& xs) {
    std::vector<double> r;
    r.reserve(xs.size());
    for (double x : xs) {
        const double h = numdiff::step(x, 1e-4);
        const double sp = numdiff::d1(S, x, h);
        const double spp = numdiff::d2(S, x, h);
        const cplx ap = numdiff::d1(A, x, h);
        r.push_back(std::abs(2.0 * sp * ap + spp * A(x)));
    }
    return r;
}

std::pair<double, double> linear_layer_phases(double y, double z, const rays::LinearLayerParams& p) {
    rays::validate(p);
    const double alpha = -p.eta0 * std::cos(p.psi);
    const double disc = alpha * alpha + p.mu1 * (z - p.h);
    if (disc < 0) throw DomainError("linear_layer_phases: point below the caustic");
    const double beta = std::sqrt(disc);
    const auto [tm, tp] = rays::linear_layer_arrivals(z, p);
    const double sy = p.eta0 * std::sin(p.psi);
    const double xi_p = y - sy * tp, xi_m = y - sy * tm;
    const double e = p.mu0 + p.mu1 * p.h;
    const double a2 = alpha * alpha, a3 = a2 * alpha, b3 = beta * beta * beta;
    const double s_plus = -(6 * e * (alpha - beta) + 6 * a2 * beta - 4 * a3 - 2 * b3) / (3 * p.mu1) + sy * xi_p;
    const double s_minus = -(6 * e * (alpha + beta) - 6 * a2 * beta - 4 * a3 + 2 * b3) / (3 * p.mu1) + sy * xi_m;
    return {s_plus, s_minus};
}

std::pair<cplx, cplx> linear_layer_amplitudes(double z, const rays::LinearLayerParams& p) {
    rays::validate(p);
    const double c = p.eta0 * std::cos(p.psi);
    const double disc = c * c + p.mu1 * (z - p.h);
    if (!(disc > 0)) throw DomainError("linear_layer_amplitudes: point on or below the caustic");
    const double m = std::sqrt(c / std::sqrt(disc));
    return {-1i * m, cplx(m, 0.0)};
}

void write_field_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<cplx>& u) {
    if (xs.size() != u.size()) throw PreconditionError("write_field_csv: size mismatch");
    char buf[160];
    os << "x,re_u,im_u,abs_u2\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", xs[i], u[i].real(), u[i].imag(),
                      std::norm(u[i]));
        os << buf;
    }
}

}  // namespace caustic::wkb
