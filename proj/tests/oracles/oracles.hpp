#pragma once

#include <complex>
#include <functional>

// Independent reference computations used only by tests and the validation suite.
namespace oracle {

struct Airy {
    double ai, aip, bi, bip;
};

// Maclaurin series carried in 50-digit binary floating point.
Airy airy_series_mp(double z);

// Boost's Bessel-function based Airy functions.
Airy airy_bessel(double z);

// Adaptive Gauss-Kronrod integral of Ai(r1 k^2 + r2 k + r3) over the real line,
// with Ai taken from Boost's Bessel-function based implementation.
double airy_quadratic_integral(double r1, double r2, double r3);

// Integral of exp(i lambda (t^3/3 - xi t)) with a smooth erfc cutoff at
// |t| = 8 sqrt(xi) + 20 lambda^{-1/3}.
std::complex<double> cubic_integral_windowed(double xi, double lambda);

// Adaptive Gauss-Kronrod on [a, b] for a complex integrand.
std::complex<double> integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                               double tol = 1e-12);

}  // namespace oracle
