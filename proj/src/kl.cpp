#include "caustic/kl.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "caustic/errors.hpp"
#include "caustic/numdiff.hpp"
#include "caustic/specfun.hpp"

namespace caustic::kl {

using namespace std::complex_literals;

KlPoint kl_point(double s_plus, double s_minus) {
    if (s_plus < s_minus) throw DomainError("kl_coordinates: S+ < S- at the requested point");
    return {0.5 * (s_plus + s_minus), std::pow(0.75 * (s_plus - s_minus), 2.0 / 3.0)};
}

KlAmplitudePoint kl_amplitude_point(cplx a_plus, cplx a_minus, double rho) {
    if (rho < 0) throw DomainError("kl_amplitudes: rho must be nonnegative");
    const cplx diff = a_plus - 1i * a_minus;
    const cplx sum = a_plus + 1i * a_minus;
    KlAmplitudePoint g;
    g.g0 = std::pow(rho, 0.25) / std::numbers::sqrt2 * diff;
    const double scale = std::abs(a_plus) + std::abs(a_minus);
    if (std::abs(sum) <= 1e-14 * scale) {
        g.g1 = 0;
    } else {
        if (rho == 0) throw SingularAmplitudeError("kl_amplitudes: rho = 0 with A+ + iA- nonzero");
        g.g1 = std::pow(rho, -0.25) / std::numbers::sqrt2 * sum;
    }
    return g;
}

KlCoordinates kl_coordinates(std::function<double(double)> s_plus, std::function<double(double)> s_minus) {
    KlCoordinates c;
    c.phi = [s_plus, s_minus](double x) { return kl_point(s_plus(x), s_minus(x)).phi; };
    c.rho = [s_plus, s_minus](double x) { return kl_point(s_plus(x), s_minus(x)).rho; };
    return c;
}

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// cubic extrapolation to x from four finite samples on whichever side is available
template <class F>
cplx limit_at(const F& f, double x) {
    const double d = 1e-2 * std::max(1.0, std::abs(x));
    for (double s : {1.0, -1.0}) {
        try {
            cplx v[4];
            bool ok = true;
            for (int i = 0; i < 4; ++i) ok = ok && finite(v[i] = f(x + (i + 1) * s * d));
            if (ok) return 4.0 * v[0] - 6.0 * v[1] + 4.0 * v[2] - v[3];
        } catch (const DomainError&) {
        }
    }
    throw SingularAmplitudeError("kl_amplitudes: no finite one-sided limit");
}

}  // namespace

KlAmplitudes kl_amplitudes(std::function<cplx(double)> a_plus, std::function<cplx(double)> a_minus,
                           std::function<double(double)> rho) {
    auto point = [a_plus, a_minus, rho](double x) {
        const cplx ap = a_plus(x), am = a_minus(x);
        if (!finite(ap) || !finite(am)) return KlAmplitudePoint{cplx(NAN), cplx(NAN)};
        return kl_amplitude_point(ap, am, rho(x));
    };
    KlAmplitudes g;
    g.g0 = [point](double x) {
        const cplx v = point(x).g0;
        return finite(v) ? v : limit_at([&](double y) { return point(y).g0; }, x);
    };
    g.g1 = [point](double x) {
        const cplx v = point(x).g1;
        return finite(v) ? v : limit_at([&](double y) { return point(y).g1; }, x);
    };
    return g;
}

KlData airy_kl_data(double x0) {
    if (!(x0 > 0) || !std::isfinite(x0)) throw DomainError("airy_kl_data: x0 must be positive");
    const double phi = 2.0 / 3.0 * x0 * std::sqrt(x0);
    const cplx g0 = -std::exp(1i * (std::numbers::pi / 4)) * std::pow(x0, -0.25) / std::numbers::sqrt2;
    KlData d;
    d.coords.phi = [phi](double) { return phi; };
    d.coords.rho = [](double x) { return x; };
    d.amps.g0 = [g0](double) { return g0; };
    d.amps.g1 = [](double) { return cplx(0.0); };
    return d;
}

cplx kl_field_point(double phi, double rho, cplx g0, cplx g1, double epsilon) {
    if (!(epsilon > 0)) throw DomainError("kl_field: epsilon must be positive");
    const auto a = specfun::airy_all(-std::pow(epsilon, -2.0 / 3.0) * rho);
    const cplx pre = std::sqrt(2 * std::numbers::pi) * std::pow(epsilon, -1.0 / 6.0) *
                     std::exp(1i * (std::numbers::pi / 4)) * std::exp(1i * (phi / epsilon));
    return pre * (g0 * a.ai + 1i * std::cbrt(epsilon) * g1 * a.aip);
}

cplx kl_field(const KlCoordinates& coords, const KlAmplitudes& amps, double epsilon, double x) {
    return kl_field_point(coords.phi(x), coords.rho(x), amps.g0(x), amps.g1(x), epsilon);
}

std::vector<std::pair<double, double>> kl_phase_residual(const KlCoordinates& coords,
                                                         const rays::RefractionProfile1D& profile,
                                                         const std::vector<double>& xs) {
    std::vector<std::pair<double, double>> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const double h = numdiff::step(x);
        const double dphi = numdiff::d1(coords.phi, x, h);
        const double drho = numdiff::d1(coords.rho, x, h);
        out.emplace_back(dphi * dphi + coords.rho(x) * drho * drho - profile.eta_squared(x), dphi * drho);
    }
    return out;
}

std::vector<std::pair<double, double>> kl_phase_residual_2d(const std::function<double(double, double)>& phi,
                                                            const std::function<double(double, double)>& rho,
                                                            const std::function<double(double, double)>& eta_squared,
                                                            const std::vector<std::pair<double, double>>& pts) {
    std::vector<std::pair<double, double>> out;
    out.reserve(pts.size());
    for (auto [y, z] : pts) {
        const double hy = numdiff::step(y), hz = numdiff::step(z);
        const double py = numdiff::d1([&](double v) { return phi(v, z); }, y, hy);
        const double pz = numdiff::d1([&](double v) { return phi(y, v); }, z, hz);
        const double ry = numdiff::d1([&](double v) { return rho(v, z); }, y, hy);
        const double rz = numdiff::d1([&](double v) { return rho(y, v); }, z, hz);
        const double r = rho(y, z);
        out.emplace_back(py * py + pz * pz + r * (ry * ry + rz * rz) - eta_squared(y, z), py * ry + pz * rz);
    }
    return out;
}

void write_kl_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<double>& rho,
                  const std::vector<cplx>& u_kl, const std::vector<cplx>& u_wkb) {
    if (xs.size() != rho.size() || xs.size() != u_kl.size() || xs.size() != u_wkb.size())
        throw PreconditionError("write_kl_csv: size mismatch");
    char buf[256];
    os << "x,rho,re_u_kl,im_u_kl,abs_u_kl2,abs_u_wkb2\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", xs[i], rho[i], u_kl[i].real(),
                      u_kl[i].imag(), std::norm(u_kl[i]), std::norm(u_wkb[i]));
        os << buf;
    }
}

}  // namespace caustic::kl
