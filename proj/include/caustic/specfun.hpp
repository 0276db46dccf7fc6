#pragma once

#include <complex>

namespace caustic::specfun {

enum class AiryKind { Ai, Bi };
enum class AiryOrder { value, first_derivative };

struct AiryRequest {
    AiryKind kind = AiryKind::Ai;
    AiryOrder order = AiryOrder::value;
    double argument = 0.0;
};

struct AccuracyPolicy {
    double abs_tol = 1e-15;
    double rel_tol = 1e-13;
    // |z| above which the asymptotic expansions replace the Maclaurin series
    double series_asymptotic_switch = 8.0;
};

struct AiryValues {
    double ai = 0.0;
    double aip = 0.0;
    double bi = 0.0;
    double bip = 0.0;
};

double airy(const AiryRequest& req, const AccuracyPolicy& policy = {});

// All four functions at once; cheaper than four separate calls.
AiryValues airy_all(double z, const AccuracyPolicy& policy = {});

double ai(double z);
double aip(double z);
double bi(double z);
double bip(double z);

// sqrt(Ai^2 + Bi^2), the oscillation envelope on z < 0
double airy_modulus(double z);

// Closed form of the integral of Ai(r1 k^2 + r2 k + r3) over the real k-line.
double airy_square_integral(double r1, double r2, double r3);

// Half-line integral of t^gamma exp(i nu t^p).
std::complex<double> fourier_power_integral(double gamma, double nu, int p);

inline constexpr double kAi0 = 0.3550280538878172;
inline constexpr double kAip0 = -0.2588194037928068;
inline constexpr double kGamma13 = 2.6789385347077476337;
inline constexpr double kGamma23 = 1.3541179394264004169;

}  // namespace caustic::specfun
