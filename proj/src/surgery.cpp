#include "caustic/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "caustic/errors.hpp"
#include "caustic/specfun.hpp"

namespace caustic::surgery {

using namespace std::complex_literals;
using std::numbers::pi;
using stphase::Multiplicity;
using stphase::StationaryPoint;

namespace {

constexpr double kCurveTol = 1e-12;

void check_index(int index, int lo, int hi) {
    if (index < lo || index > hi) throw PreconditionError("surgery: Wigner integral index out of range");
}

// signs (a, b) of the branch pair
std::pair<int, int> branch_signs(int index) {
    switch (index) {
        case 1: return {1, 1};
        case 2: return {-1, -1};
        case 3: return {1, -1};
        default: return {-1, 1};
    }
}

}  // namespace

std::string to_string(RegionLabel r) {
    switch (r) {
        case RegionLabel::Exterior: return "Exterior";
        case RegionLabel::OnManifold: return "OnManifold";
        case RegionLabel::Between: return "Between";
        case RegionLabel::OnConjugate: return "OnConjugate";
        case RegionLabel::Interior: return "Interior";
    }
    return "";
}

RegionLabel classify_region(double x, double k) {
    if (!(x > 0)) throw DomainError("classify_region: x must be positive");
    const double k2 = k * k;
    const double tol = kCurveTol * std::max(1.0, x);
    if (std::abs(x - k2) <= tol) return RegionLabel::OnManifold;
    if (std::abs(x - 2 * k2) <= tol) return RegionLabel::OnConjugate;
    if (x < k2) return RegionLabel::Exterior;
    if (x < 2 * k2) return RegionLabel::Between;
    return RegionLabel::Interior;
}

WignerBranchIntegral airy_wigner_integral(int index, double x0) {
    check_index(index, 1, 4);
    if (!(x0 > 0)) throw DomainError("airy_wigner_integral: x0 must be positive");
    const auto [sa, sb] = branch_signs(index);
    // A+ = -i m, A- = m with m(v) = v^{-1/4} / (2 sqrt x0) up to the common phase of alpha0
    const cplx pa = sa > 0 ? -1i : cplx(1.0), pb = sb > 0 ? -1i : cplx(1.0);
    WignerBranchIntegral w;
    w.index = index;
    w.D = [pa, pb, x0](cplx s, double x) {
        return pa * std::conj(pb) / (4 * std::sqrt(x0)) * std::pow(cplx(x * x) - s * s, -0.25);
    };
    w.F = [sa, sb](cplx s, double x, double k) {
        const cplx a = std::sqrt(x + s), b = std::sqrt(x - s);
        PhaseValues v;
        v.F = 2.0 / 3.0 * (double(sa) * a * a * a - double(sb) * b * b * b) - 2.0 * k * s;
        v.Fs = double(sa) * a + double(sb) * b - 2.0 * k;
        // 1/(2a) -+ 1/(2b) in cancellation-free form
        if (sa == sb) v.Fss = -double(sa) * s / ((a + b) * a * b);
        else v.Fss = double(sa) * (a + b) / (2.0 * a * b);
        v.Fsss = -0.25 * (double(sa) / (a * a * a) + double(sb) / (b * b * b));
        return v;
    };
    return w;
}

PhaseValues wigner_phase_eval(const WignerBranchIntegral& w, double sigma, double x, double k) {
    if (!(std::abs(sigma) < x)) throw ComplexPhaseError("wigner_phase_eval: |sigma| >= x, phases are complex");
    return w.F(sigma, x, k);
}

double wigner_phase_gradient(const WignerBranchIntegral& w, double sigma, double x, double k) {
    if (!(std::abs(sigma) <= x)) throw ComplexPhaseError("wigner_phase_gradient: |sigma| > x, phases are complex");
    const auto [sa, sb] = branch_signs(w.index);
    return sa * std::sqrt(x + sigma) + sb * std::sqrt(x - sigma) - 2 * k;
}

StationaryPointReport stationary_points(const WignerBranchIntegral& w, double x, double k) {
    const RegionLabel region = classify_region(x, k);
    StationaryPointReport rep{region, {}, {}};
    const double s0 = 2 * std::abs(k) * std::sqrt(std::abs(x - k * k));
    const int index = w.index;
    check_index(index, 1, 4);

    auto real_point = [&](double s) {
        rep.points.push_back({cplx(s), Multiplicity::Simple, w.F(s, x, k).Fss.real()});
    };
    auto imaginary_pair = [&] {
        rep.points.push_back({cplx(0, s0), Multiplicity::Simple, 0.0});
        rep.points.push_back({cplx(0, -s0), Multiplicity::Simple, 0.0});
    };
    auto double_point = [&] { rep.points.push_back({cplx(0.0), Multiplicity::Double, 0.0}); };

    // the conjugate curve puts s0 = x where F_ss of the mixed phases diverges
    auto edge_point = [&](double s) {
        rep.points.push_back({cplx(s), Multiplicity::Simple, index <= 2 ? w.F(s, x, k).Fss.real() : INFINITY});
    };

    const int ks = k > 0 ? 1 : (k < 0 ? -1 : 0);
    switch (region) {
        case RegionLabel::Exterior:
            rep.table_cell = ks > 0 ? "k>sqrt(x)" : "k<-sqrt(x)";
            if ((index == 1 && ks > 0) || (index == 2 && ks < 0) || index >= 3) imaginary_pair();
            break;
        case RegionLabel::OnManifold:
            rep.table_cell = ks > 0 ? "k=sqrt(x)" : "k=-sqrt(x)";
            if ((index == 1 && ks > 0) || (index == 2 && ks < 0)) double_point();
            break;
        case RegionLabel::Between:
            rep.table_cell = ks > 0 ? "sqrt(x/2)<k<sqrt(x)" : "-sqrt(x)<k<-sqrt(x/2)";
            if ((index == 1 && ks > 0) || (index == 2 && ks < 0)) {
                real_point(s0);
                real_point(-s0);
            }
            break;
        case RegionLabel::OnConjugate:
            rep.table_cell = ks > 0 ? "k=sqrt(x/2)" : "k=-sqrt(x/2)";
            if ((index == 1 && ks > 0) || (index == 2 && ks < 0)) {
                edge_point(x);
                edge_point(-x);
            } else if (index == 3) {
                edge_point(ks * x);
            } else if (index == 4) {
                edge_point(-ks * x);
            }
            break;
        case RegionLabel::Interior:
            rep.table_cell = "|k|<sqrt(x/2)";
            if (index == 3) real_point(ks >= 0 ? s0 : -s0);
            if (index == 4) real_point(ks >= 0 ? -s0 : s0);
            break;
    }
    return rep;
}

DiagonalResult diagonal_asymptotics(int index, double x, double k, double epsilon, double x0) {
    check_index(index, 1, 2);
    if (!(epsilon > 0)) throw DomainError("diagonal_asymptotics: epsilon must be positive");
    const RegionLabel region = classify_region(x, k);
    const bool right_sign = index == 1 ? k > 0 : k < 0;
    if (!right_sign || region == RegionLabel::Interior) return {0.0, AsymptoticFlag::no_stationary_point};

    const auto w = airy_wigner_integral(index, x0);
    const double lambda = 1 / epsilon;
    const double s0 = 2 * std::abs(k) * std::sqrt(std::abs(x - k * k));

    if (region == RegionLabel::OnManifold) {
        // coalescence: xi = 0, A0 = D(0) (|F_sss(0)| / 2)^{-1/3}
        const PhaseValues v = w.F(0.0, x, k);
        const stphase::CfuCoefficients c{0.0, 0.0, w.D(0.0, x).real() / std::cbrt(0.5 * std::abs(v.Fsss.real())), 0.0};
        return {(stphase::cfu_eval(c, lambda) / (pi * epsilon)).real(), AsymptoticFlag::none};
    }

    if (region == RegionLabel::Exterior) {
        // imaginary pair +-i s0: continue xi to -(3/2 |Im F|)^{2/3}; the amplitude keeps its modulus
        const cplx s = cplx(0, s0);
        const PhaseValues v = w.F(s, x, k);
        const double xi = -std::pow(1.5 * std::abs(v.F.imag()), 2.0 / 3.0);
        const double A0 =
            std::numbers::sqrt2 * std::pow(-xi, 0.25) * std::abs(w.D(s, x)) / std::sqrt(std::abs(v.Fss));
        const stphase::CfuCoefficients c{0.0, xi, A0, 0.0};
        return {(stphase::cfu_eval(c, lambda) / (pi * epsilon)).real(), AsymptoticFlag::none};
    }

    // Between or OnConjugate: real pair, the maximum of F sits where F_ss < 0.
    // D / |F_ss|^{1/2} = sqrt(2) / (4 sqrt(x0) |a - b|^{1/2}) stays finite on the conjugate curve,
    // so the curvature is normalized out before matching.
    // at sigma = +-s0 the square roots are q + |k| and |q - |k||, q = sqrt(x - k^2), free of cancellation
    const double smax = index == 1 ? s0 : -s0;
    const double q = std::sqrt(x - k * k), hi = q + std::abs(k), lo = std::abs(q - std::abs(k));
    const auto [sa, sb] = branch_signs(index);
    auto phase = [&](double s) {
        const double a = s > 0 ? hi : lo, b = s > 0 ? lo : hi;
        return 2.0 / 3.0 * (sa * a * a * a - sb * b * b * b) - 2 * k * s;
    };
    auto ratio = [&](double) { return std::numbers::sqrt2 / (4 * std::sqrt(x0) * std::sqrt(hi - lo)); };
    const double phi1 = phase(smax), phi2 = phase(-smax);
    const auto c = stphase::cfu_match(phi1, phi2, ratio(smax), ratio(-smax), -1.0, 1.0);
    const AsymptoticFlag flag = region == RegionLabel::OnConjugate ? AsymptoticFlag::singular_curvature : AsymptoticFlag::none;
    return {(stphase::cfu_eval(c, lambda) / (pi * epsilon)).real(), flag};
}

OffDiagonalResult offdiagonal_asymptotics(int index, double x, double k, double epsilon, double x0) {
    check_index(index, 3, 4);
    if (!(epsilon > 0)) throw DomainError("offdiagonal_asymptotics: epsilon must be positive");
    const RegionLabel region = classify_region(x, k);
    const double lambda = 1 / epsilon;
    const double s0 = 2 * std::abs(k) * std::sqrt(std::abs(x - k * k));

    if (region == RegionLabel::Between || region == RegionLabel::OnManifold)
        return {0.0, AsymptoticFlag::no_stationary_point};

    if (region == RegionLabel::Exterior) {
        // Saddle of the continued phase with one root on its negative sheet (the F1/F2 form),
        // taken at the decaying point Im F > 0; the pair is defined by W4 = -W3.
        const auto cont = airy_wigner_integral(k > 0 ? 1 : 2, x0);
        cplx s = cplx(0, s0);
        PhaseValues v = cont.F(s, x, k);
        if (v.F.imag() < 0) {
            s = -s;
            v = cont.F(s, x, k);
        }
        const double dmod = 1 / (4 * std::sqrt(x0)) * std::pow(x * x + s0 * s0, -0.25);
        const cplx w3 = -1i * dmod * std::exp(1i * (v.F * lambda)) * std::sqrt(2i * pi * epsilon / v.Fss) / (pi * epsilon);
        return {index == 3 ? w3 : -w3, AsymptoticFlag::none};
    }

    const double d = std::sqrt(x - k * k);
    if (region == RegionLabel::OnConjugate) {
        // limit from the interior side of the closed form
        const cplx w3 = -1i / std::sqrt(x0) * std::pow(2.0, -1.5) / std::sqrt(pi * epsilon) / std::sqrt(d) *
                        std::exp(1i * (pi / 4)) * std::exp(1i * (4 * d * d * d / (3 * epsilon)));
        return {index == 3 ? w3 : std::conj(w3), AsymptoticFlag::singular_curvature};
    }

    const auto w = airy_wigner_integral(index, x0);
    const double ks = k >= 0 ? 1.0 : -1.0;
    const double s = index == 3 ? ks * s0 : -ks * s0;
    const PhaseValues v = w.F(s, x, k);
    const cplx val = stphase::standard_spa(w.D(s, x), v.F.real(), v.Fss.real(), lambda) / (pi * epsilon);
    return {val, AsymptoticFlag::none};
}

double combined_wkb_wigner(double x, double k, double epsilon, double x0, bool extended) {
    if (!(epsilon > 0)) throw DomainError("combined_wkb_wigner: epsilon must be positive");
    if (!(x0 > 0)) throw DomainError("combined_wkb_wigner: x0 must be positive");
    if (x <= 0 && !extended) throw DomainError("combined_wkb_wigner: x <= 0 needs extended mode");
    // diagonal part: W1 (k > 0) or W2 (k < 0) outside the interior, xi = 2^{2/3}(x - k^2), A0 = 2^{-4/3} x0^{-1/2}
    // off-diagonal part: interior oscillations folded into the same Airy expression, exterior pair cancels
    const double A0 = std::pow(2.0, -4.0 / 3.0) / std::sqrt(x0);
    const double xi = std::cbrt(4.0) * (x - k * k);
    const double airy_form = 2 * A0 * std::pow(epsilon, -2.0 / 3.0) * specfun::ai(-std::pow(epsilon, -2.0 / 3.0) * xi);
    if (x <= 0) return airy_form;
    const RegionLabel region = classify_region(x, k);
    const double diagonal = region == RegionLabel::Interior ? 0.0 : airy_form;
    const double offdiagonal = region == RegionLabel::Interior ? airy_form : 0.0;
    return diagonal + offdiagonal;
}

double k_integral_amplitude(double x, double epsilon, double x0, bool extended) {
    if (!(epsilon > 0)) throw DomainError("k_integral_amplitude: epsilon must be positive");
    if (!(x0 > 0)) throw DomainError("k_integral_amplitude: x0 must be positive");
    if (x <= 0 && !extended) throw DomainError("k_integral_amplitude: x <= 0 needs extended mode");
    const double r = std::pow(2 / epsilon, 2.0 / 3.0);
    return r / (2 * std::sqrt(x0)) * specfun::airy_square_integral(r, 0.0, -r * x);
}

double k_integral_flux(double x, double epsilon, double x0, double k_max, std::size_t nk) {
    if (nk < 3 || nk % 2 == 0) throw PreconditionError("k_integral_flux: need an odd number of k samples");
    const double h = 2 * k_max / (nk - 1);
    const std::size_t half = nk / 2;
    // symmetric pairs summed together
    double acc = 0;
    for (std::size_t j = 1; j <= half; ++j) {
        const double k = j * h;
        const double wt = j == half ? 0.5 : 1.0;
        acc += wt * (k * combined_wkb_wigner(x, k, epsilon, x0, true) - k * combined_wkb_wigner(x, -k, epsilon, x0, true));
    }
    return acc * h;
}

namespace {

wigner::PhaseSpaceGrid transport_residual(const wigner::PhaseSpaceGrid& g, const std::function<double(double)>& drift) {
    const std::size_t nx = g.xs.size(), nk = g.ks.size();
    if (nx < 3 || nk < 3) throw PreconditionError("Wigner residual: need at least 3 points in each direction");
    wigner::PhaseSpaceGrid r{{g.xs.begin() + 1, g.xs.end() - 1}, {g.ks.begin() + 1, g.ks.end() - 1}, {}, g.epsilon};
    r.values.resize((nx - 2) * (nk - 2));
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        const double c = 0.5 * drift(g.xs[i]);
        for (std::size_t j = 1; j + 1 < nk; ++j) {
            const double fx = (g.at(i + 1, j) - g.at(i - 1, j)) / (g.xs[i + 1] - g.xs[i - 1]);
            const double fk = (g.at(i, j + 1) - g.at(i, j - 1)) / (g.ks[j + 1] - g.ks[j - 1]);
            r.at(i - 1, j - 1) = g.ks[j] * fx + c * fk;
        }
    }
    return r;
}

}  // namespace

wigner::PhaseSpaceGrid liouville_residual(const wigner::PhaseSpaceGrid& g) {
    return transport_residual(g, [](double) { return 1.0; });
}

wigner::PhaseSpaceGrid stationary_wigner_residual(const rays::RefractionProfile1D& profile,
                                                  const wigner::PhaseSpaceGrid& g, double epsilon) {
    if (!(epsilon > 0)) throw DomainError("stationary_wigner_residual: epsilon must be positive");
    if (!profile.eta_squared || !profile.eta_squared_prime) throw PreconditionError("stationary_wigner_residual: incomplete profile");
    if (g.xs.size() < 3) throw PreconditionError("Wigner residual: need at least 3 points in each direction");
    // dispersion terms vanish only when (eta^2)''' = 0; check with a third difference across the grid
    const double span = g.xs.back() - g.xs.front();
    const double h = std::max(1e-2, 0.05 * span);
    double fmax = 0, worst = 0;
    for (double x : g.xs) {
        const auto& f = profile.eta_squared;
        fmax = std::max(fmax, std::abs(f(x)));
        const double d3 = (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
        worst = std::max(worst, std::abs(d3));
    }
    if (worst > 1e-6 * (1 + fmax)) throw UnsupportedProfileError("stationary_wigner_residual: (eta^2)''' != 0 is not supported");
    return transport_residual(g, profile.eta_squared_prime);
}

void write_surgery_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<double>& ks, double epsilon,
                       double x0) {
    std::vector<WignerBranchIntegral> ints;
    for (int i = 1; i <= 4; ++i) ints.push_back(airy_wigner_integral(i, x0));
    char buf[256];
    os << "x,k,region,n_stationary,W_combined,W_exact,diff\n";
    for (double x : xs)
        for (double k : ks) {
            const RegionLabel region = classify_region(x, k);
            std::size_t n = 0;
            for (const auto& w : ints) n += stationary_points(w, x, k).points.size();
            const double wc = combined_wkb_wigner(x, k, epsilon, x0);
            const double we = wigner::wigner_exact_airy(x, k, epsilon, x0);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%zu,%.17g,%.17g,%.17g\n", x, k, to_string(region).c_str(), n,
                          wc, we, wc - we);
            os << buf;
        }
}

}  // namespace caustic::surgery
