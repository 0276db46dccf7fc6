#include "oracles/oracles.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

Airy airy_series_mp(double zd) {
    const mp z = zd;
    const mp z3 = z * z * z;
    const mp third = mp(1) / 3;
    const mp c1 = 1 / (pow(mp(3), 2 * third) * boost::math::tgamma(2 * third));
    const mp c2 = 1 / (pow(mp(3), third) * boost::math::tgamma(third));
    // f = sum z^{3n} 3^n (1/3)_n/(3n)!, g = sum z^{3n+1} 3^n (2/3)_n/(3n+1)!
    mp f = 0, g = 0, fp = 0, gp = 0;
    mp a = 1, b = z;  // current f and g terms
    for (int n = 0; n < 300; ++n) {
        f += a;
        g += b;
        if (n > 0) fp += a * (3 * n) / z;
        gp += b * (3 * n + 1) / z;
        const mp na = a * z3 / ((3 * n + 2) * (3 * n + 3));
        const mp nb = b * z3 / ((3 * n + 3) * (3 * n + 4));
        a = na;
        b = nb;
        if (n > 10 && abs(a) < mp(1e-45) && abs(b) < mp(1e-45)) break;
    }
    if (zd == 0) {
        fp = 0;
        gp = 1;
    }
    const mp s3 = sqrt(mp(3));
    return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp),
            static_cast<double>(s3 * (c1 * f + c2 * g)), static_cast<double>(s3 * (c1 * fp + c2 * gp))};
}

Airy airy_bessel(double z) {
    return {boost::math::airy_ai(z), boost::math::airy_ai_prime(z), boost::math::airy_bi(z),
            boost::math::airy_bi_prime(z)};
}

std::complex<double> integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                               double tol) {
    using boost::math::quadrature::gauss_kronrod;
    auto re = [&](double t) { return f(t).real(); };
    auto im = [&](double t) { return f(t).imag(); };
    const double r = gauss_kronrod<double, 61>::integrate(re, a, b, 12, tol);
    const double i = gauss_kronrod<double, 61>::integrate(im, a, b, 12, tol);
    return {r, i};
}

double airy_quadratic_integral(double r1, double r2, double r3) {
    // vertex and the half-width beyond which the argument exceeds 40 (Ai < 1e-70)
    const double kv = -r2 / (2 * r1);
    const double vmin = r3 - r2 * r2 / (4 * r1);
    const double half = std::sqrt(std::max(0.0, (40.0 - vmin) / r1));
    auto fn = [&](double k) { return boost::math::airy_ai(r1 * k * k + r2 * k + r3); };
    // split into panels no wider than a few oscillations
    const int panels = 64;
    double sum = 0;
    using boost::math::quadrature::gauss_kronrod;
    for (int p = 0; p < panels; ++p) {
        const double a = kv - half + 2 * half * p / panels;
        const double b = kv - half + 2 * half * (p + 1) / panels;
        sum += gauss_kronrod<double, 61>::integrate(fn, a, b, 8, 1e-11);
    }
    return sum;
}

std::complex<double> cubic_integral_windowed(double xi, double lambda) {
    const double T = 8 * std::sqrt(xi) + 20 * std::cbrt(1 / lambda);
    const double s = T / 12;
    const double tmax = T + 8 * s;
    // even integrand: 2 * int_0^inf cos(lambda (t^3/3 - xi t)) w(t) dt
    auto fn = [&](double t) {
        const double w = 0.5 * std::erfc((t - T) / s);
        return std::cos(lambda * (t * t * t / 3 - xi * t)) * w;
    };
    using boost::math::quadrature::gauss;
    double sum = 0;
    double t = 0;
    while (t < tmax) {
        // panel width ~ one local wavelength; 30-point Gauss is exact to rounding on one period
        auto rate = [&](double u) { return std::max(lambda * std::abs(u * u - xi), std::cbrt(lambda)); };
        double h = std::min(tmax - t, 2 * std::numbers::pi / rate(t));
        while (h * rate(t + h) > 3 * std::numbers::pi) h /= 2;
        sum += gauss<double, 30>::integrate(fn, t, t + h);
        t += h;
    }
    return {2 * sum, 0.0};
}

}  // namespace oracle
