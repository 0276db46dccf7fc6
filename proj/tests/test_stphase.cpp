#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "caustic/errors.hpp"
#include "caustic/specfun.hpp"
#include "caustic/stphase.hpp"
#include "oracles/oracles.hpp"

using namespace caustic;
using namespace caustic::stphase;
using namespace std::complex_literals;
using std::numbers::pi;

namespace {

// scale of the uniform formula: Ai and Ai' replaced by their moduli
double cfu_envelope(const CfuCoefficients& c, double lambda) {
    const double z = -std::pow(lambda, 2.0 / 3.0) * c.xi;
    const auto a = specfun::airy_all(z);
    return 2 * pi *
           (std::abs(c.A0) * std::pow(lambda, -1.0 / 3.0) * std::hypot(a.ai, a.bi) +
            std::abs(c.B0) * std::pow(lambda, -2.0 / 3.0) * std::hypot(a.aip, a.bip));
}

}  // namespace

TEST_CASE("standard stationary phase") {
    // Fresnel integral by rotating the contour onto a real Gaussian
    const cplx quad = std::exp(1i * (pi / 4)) * oracle::integrate([](double s) { return cplx(std::exp(-10 * s * s)); }, -10, 10);
    const cplx spa = standard_spa(1.0, 0.0, 2.0, 10.0);
    CHECK(std::abs(spa - std::sqrt(pi / 10) * std::exp(1i * (pi / 4))) < 1e-15);
    CHECK(std::abs(spa - quad) < 1e-2 * std::abs(quad));
    CHECK(std::abs(standard_spa(1.0, 0.0, -2.0, 10.0) - std::conj(spa)) < 1e-15);
    CHECK_THROWS_AS(standard_spa(1.0, 0.0, 0.0, 10.0), DegeneratePointError);
    CHECK_THROWS_AS(standard_spa(1.0, 0.0, 1.0, 0.0), PreconditionError);

    // two points of tau^3/3 - xi tau reproduce the oscillatory form of 2 pi lambda^{-1/3} Ai
    const double xi = 1.0, lambda = 200.0;
    const double r = std::sqrt(xi);
    const cplx two = standard_spa(1.0, 2.0 / 3.0 * xi * r, -2 * r, lambda) + standard_spa(1.0, -2.0 / 3.0 * xi * r, 2 * r, lambda);
    const double z = std::pow(lambda, 2.0 / 3.0) * xi, zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    const double osc = 2 * pi * std::pow(lambda, -1.0 / 3.0) * std::pow(z, -0.25) / std::sqrt(pi) * std::sin(zeta + pi / 4);
    CHECK(std::abs(two - osc) < 1e-12);
}

TEST_CASE("CFU matching") {
    const CfuCoefficients c = cfu_match(1.3, 0.4, 0.7 + 0.2i, -0.1 + 0.5i, -1.7, 0.9);
    CHECK(c.phi0 + 2.0 / 3.0 * std::pow(c.xi, 1.5) == doctest::Approx(1.3).epsilon(1e-14));
    CHECK(c.phi0 - 2.0 / 3.0 * std::pow(c.xi, 1.5) == doctest::Approx(0.4).epsilon(1e-14));
    // the 2x2 matching system
    const double q = std::pow(c.xi, 0.25);
    CHECK(std::abs(c.A0 / q + c.B0 * q - std::numbers::sqrt2 * (-0.1 + 0.5i) / std::sqrt(0.9)) < 1e-14);
    CHECK(std::abs(c.A0 / q - c.B0 * q - std::numbers::sqrt2 * (0.7 + 0.2i) / std::sqrt(1.7)) < 1e-14);

    const auto sym = cfu_match(1.0, -1.0, 2.0, 2.0, -3.0, 3.0);
    CHECK(std::abs(sym.B0) == 0.0);

    CHECK_THROWS_AS(cfu_match(0.4, 1.3, 1.0, 1.0, -1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(cfu_match(1.3, 0.4, 1.0, 1.0, 1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(cfu_match(1.3, 0.4, 1.0, 1.0, -1.0, -1.0), PreconditionError);
    CHECK_THROWS_AS(cfu_match(0.5, 0.5, 1.0, 1.0, -1.0, 1.0), CoalescenceError);

    // Wigner phase of the plus branch: F(s) = S(x+s) - S(x-s) - 2ks, S = (2/3) x^{3/2}
    for (auto [x, k] : {std::pair{1.0, 0.8}, {1.5, 0.9}, {0.8, 0.7}}) {
        auto S = [](double v) { return 2.0 / 3.0 * v * std::sqrt(v); };
        auto F = [&](double s) { return S(x + s) - S(x - s) - 2 * k * s; };
        auto Fss = [&](double s) { return 0.5 / std::sqrt(x + s) - 0.5 / std::sqrt(x - s); };
        const double s0 = 2 * std::abs(k) * std::sqrt(x - k * k);
        const double smax = Fss(s0) < 0 ? s0 : -s0;
        const auto m = cfu_match(F(smax), F(-smax), 1.0, 1.0, Fss(smax), Fss(-smax));
        CHECK(m.xi == doctest::Approx(std::cbrt(4.0) * (x - k * k)).epsilon(1e-12));
    }
}

TEST_CASE("CFU evaluation") {
    const double lambda = 50.0;
    CfuCoefficients c{0.0, 0.0, 1.0, 0.0};
    CHECK(std::abs(cfu_eval(c, lambda) - 2 * pi * std::pow(lambda, -1.0 / 3.0) * specfun::kAi0) < 1e-14);
    c.B0 = 0.5;
    CHECK(std::abs(cfu_eval(c, lambda) -
                   (2 * pi * std::pow(lambda, -1.0 / 3.0) * specfun::kAi0 -
                    2i * pi * 0.5 * std::pow(lambda, -2.0 / 3.0) * specfun::kAip0)) < 1e-14);
    CHECK_THROWS_AS(cfu_eval(c, 0.0), PreconditionError);

    // large xi reduces to the two-point sum, within the Airy asymptotic remainder
    for (double lam : {20.0, 300.0}) {
        for (double zeta : {10.0, 25.0, 50.0, 100.0}) {
            const double xi = zeta / std::pow(lam, 2.0 / 3.0);
            const double phi0 = 0.3, d = 2.0 / 3.0 * std::pow(xi, 1.5);
            const cplx f1 = 1.0 + 0.3i, f2 = 0.6 - 0.2i;
            const double p1 = -1.4, p2 = 0.8;
            const auto m = cfu_match(phi0 + d, phi0 - d, f1, f2, p1, p2);
            const cplx two = standard_spa(f1, phi0 + d, p1, lam) + standard_spa(f2, phi0 - d, p2, lam);
            CHECK(std::abs(cfu_eval(m, lam) - two) / cfu_envelope(m, lam) <= 5 * std::pow(zeta, -1.5));
        }
    }
}

TEST_CASE("CFU against brute-force cubic integral") {
    for (double lambda : {10.0, 100.0}) {
        for (double xi = 0.0; xi <= 4.0; xi += 0.25) {
            const CfuCoefficients c{0.0, xi, 1.0, 0.0};
            const cplx ref = oracle::cubic_integral_windowed(xi, lambda);
            CHECK(std::abs(cfu_eval(c, lambda) - ref) <= 1e-6 * cfu_envelope(c, lambda));
        }
    }
}

TEST_CASE("small-alpha stationary points") {
    const auto z = cfu_small_alpha(1.5, -2.0, 0.0);
    CHECK(z.x1 == 0.0);
    CHECK(z.x2 == 0.0);
    CHECK(z.xi == 0.0);
    CHECK_FALSE(z.imaginary);
    CHECK_THROWS_AS(cfu_small_alpha(0.0, 1.0, 1.0), DegeneratePointError);

    // Wigner identification phi_xa = -2, phi_xxx = 2 S''' for S = (2/3) x^{3/2}
    const double x = 1.0;
    const double s1 = std::sqrt(x), s3 = -0.25 * std::pow(x, -1.5);
    for (double k : {0.97, 0.99, 1.01}) {
        const auto p = cfu_small_alpha(2 * s3, -2.0, k - s1);
        CHECK(p.xi == doctest::Approx(2 * (k - s1) / std::cbrt(s3)).epsilon(1e-14));
        if (k < s1) {
            CHECK_FALSE(p.imaginary);
            const double approx = std::sqrt(2 * (k - s1) / s3);
            CHECK(std::abs(p.x2.real()) == doctest::Approx(approx).epsilon(1e-14));
            CHECK(p.x1 == -p.x2);
            // against the exact chord half-length 2k sqrt(x - k^2)
            CHECK(approx == doctest::Approx(2 * k * std::sqrt(x - k * k)).epsilon(5e-2));
        } else {
            CHECK(p.imaginary);
            CHECK(p.x1.real() == 0.0);
            CHECK(p.x1 == -p.x2);
        }
    }
}
