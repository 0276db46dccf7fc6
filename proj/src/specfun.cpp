#include "caustic/specfun.hpp"

#include <cmath>
#include <numbers>

#include "caustic/errors.hpp"

namespace caustic::specfun {

namespace {

// Ai(0) and -Ai'(0) split into double-double pairs
constexpr double kC1Hi = 0.3550280538878172;
constexpr double kC1Lo = 2.05233632436212e-17;
constexpr double kC2Hi = 0.2588194037928068;
constexpr double kC2Lo = -2.522243111610832e-17;

template <class T>
AiryValues maclaurin(double zd, T tol) {
    const T z = zd;
    const T z3 = z * z * z;
    const T c1 = T(kC1Hi) + T(kC1Lo);
    const T c2 = T(kC2Hi) + T(kC2Lo);

    // f, g and their derivatives; see the standard power-series solution of w'' = z w
    T f = 1, g = z, fp = 0, gp = 1;
    T tf = 1, tg = z, tfp = z * z / 2, tgp = 1;
    fp = tfp;
    T scale = 1;
    for (int k = 0; k < 400; ++k) {
        const T a = 3 * k;
        tf *= z3 / ((a + 2) * (a + 3));
        tg *= z3 / ((a + 3) * (a + 4));
        tgp *= z3 / ((a + 1) * (a + 3));
        if (k > 0) tfp *= z3 / (a * (a + 2));
        f += tf;
        g += tg;
        gp += tgp;
        if (k > 0) fp += tfp;
        auto mag = [](T v) { return v < 0 ? -v : v; };
        T big = mag(tf);
        if (mag(tg) > big) big = mag(tg);
        if (mag(tfp) > big) big = mag(tfp);
        if (mag(tgp) > big) big = mag(tgp);
        if (big > scale) scale = big;
        if (k > 2 && big < tol * scale) break;
    }
    const T s3 = T(1.7320508075688772) + T(1.0035084221806903e-16);
    AiryValues out;
    out.ai = static_cast<double>(c1 * f - c2 * g);
    out.aip = static_cast<double>(c1 * fp - c2 * gp);
    out.bi = static_cast<double>(s3 * (c1 * f + c2 * g));
    out.bip = static_cast<double>(s3 * (c1 * fp + c2 * gp));
    return out;
}

struct AsymSums {
    double u_even = 0, u_odd = 0, v_even = 0, v_odd = 0;  // alternating, for z < 0
    double u_plus = 0, u_minus = 0, v_plus = 0, v_minus = 0;  // z > 0
};

AsymSums asymptotic_sums(double zeta, double rel_tol) {
    AsymSums s;
    double u = 1.0, v = 1.0;
    double zpow = 1.0;
    double last = INFINITY;
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            const double kk = k;
            u *= (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216.0 * kk);
            v = -(6 * kk + 1) / (6 * kk - 1) * u;
            zpow *= zeta;
        }
        const double tu = u / zpow;
        const double tv = v / zpow;
        const double mag = std::max(std::abs(tu), std::abs(tv));
        if (k > 1 && mag > last) break;
        last = mag;
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        s.u_plus += tu;
        s.v_plus += tv;
        s.u_minus += sgn * tu;
        s.v_minus += sgn * tv;
        const double alt = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            s.u_even += alt * tu;
            s.v_even += alt * tv;
        } else {
            s.u_odd += alt * tu;
            s.v_odd += alt * tv;
        }
        if (mag < 0.1 * rel_tol * 1e-3) break;
    }
    return s;
}

AiryValues asymptotic(double z, double rel_tol) {
    const double sqpi = std::sqrt(std::numbers::pi);
    AiryValues out;
    if (z > 0) {
        const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
        const double q = std::sqrt(std::sqrt(z));
        const AsymSums s = asymptotic_sums(zeta, rel_tol);
        const double em = std::exp(-zeta), ep = std::exp(zeta);
        out.ai = em / (2 * sqpi * q) * s.u_minus;
        out.aip = -q * em / (2 * sqpi) * s.v_minus;
        out.bi = ep / (sqpi * q) * s.u_plus;
        out.bip = q * ep / sqpi * s.v_plus;
    } else {
        const double x = -z;
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        const double q = std::sqrt(std::sqrt(x));
        const AsymSums s = asymptotic_sums(zeta, rel_tol);
        const double sz = std::sin(zeta), cz = std::cos(zeta);
        const double r2 = std::numbers::sqrt2 / 2;
        const double cm = (cz + sz) * r2;  // cos(zeta - pi/4)
        const double sm = (sz - cz) * r2;  // sin(zeta - pi/4)
        out.ai = (cm * s.u_even + sm * s.u_odd) / (sqpi * q);
        out.bi = (-sm * s.u_even + cm * s.u_odd) / (sqpi * q);
        out.aip = q / sqpi * (sm * s.v_even - cm * s.v_odd);
        out.bip = q / sqpi * (cm * s.v_even + sm * s.v_odd);
    }
    return out;
}

}  // namespace

AiryValues airy_all(double z, const AccuracyPolicy& policy) {
    if (!std::isfinite(z)) throw DomainError("airy: non-finite argument");
    if (!(policy.series_asymptotic_switch > 0) || !(policy.rel_tol > 0) || !(policy.abs_tol > 0))
        throw PreconditionError("airy: accuracy policy must be positive");
    if (std::abs(z) > policy.series_asymptotic_switch) return asymptotic(z, policy.rel_tol);
    if (z >= -6.0 && z <= 2.0) return maclaurin<long double>(z, 1e-21L);
    return maclaurin<__float128>(z, __float128(1e-34));
}

double airy(const AiryRequest& req, const AccuracyPolicy& policy) {
    const AiryValues v = airy_all(req.argument, policy);
    if (req.kind == AiryKind::Ai) return req.order == AiryOrder::value ? v.ai : v.aip;
    return req.order == AiryOrder::value ? v.bi : v.bip;
}

double ai(double z) { return airy_all(z).ai; }
double aip(double z) { return airy_all(z).aip; }
double bi(double z) { return airy_all(z).bi; }
double bip(double z) { return airy_all(z).bip; }

double airy_modulus(double z) {
    const AiryValues v = airy_all(z);
    return std::hypot(v.ai, v.bi);
}

double airy_square_integral(double r1, double r2, double r3) {
    if (!(r1 > 0) || !std::isfinite(r1)) throw DomainError("airy_square_integral: r1 must be positive");
    const double arg = -(r2 * r2 - 4 * r1 * r3) / (std::pow(4.0, 4.0 / 3.0) * r1);
    const double a = ai(arg);
    return 2 * std::numbers::pi / std::sqrt(r1) * std::pow(2.0, -1.0 / 3.0) * a * a;
}

std::complex<double> fourier_power_integral(double gamma, double nu, int p) {
    if (!(gamma > -1)) throw DomainError("fourier_power_integral: gamma must exceed -1");
    if (nu == 0 || !std::isfinite(nu)) throw DomainError("fourier_power_integral: nu must be nonzero");
    if (p < 1) throw DomainError("fourier_power_integral: p must be a positive integer");
    const double s = (gamma + 1) / p;
    const double mag = std::pow(std::abs(nu), -s) * std::tgamma(s) / p;
    const double phase = std::numbers::pi * (gamma + 1) * (nu > 0 ? 1.0 : -1.0) / (2.0 * p);
    return std::polar(mag, phase);
}

}  // namespace caustic::specfun
