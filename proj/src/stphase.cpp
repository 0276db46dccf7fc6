#include "caustic/stphase.hpp"

#include <cmath>
#include <numbers>

#include "caustic/errors.hpp"
#include "caustic/specfun.hpp"

namespace caustic::stphase {

using namespace std::complex_literals;
using std::numbers::pi;

cplx standard_spa(cplx f_at, double phi_at, double phi_xx, double lambda) {
    if (!(lambda > 0)) throw PreconditionError("standard_spa: lambda must be positive");
    if (phi_xx == 0) throw DegeneratePointError("standard_spa: phi'' = 0, use the uniform formula");
    const double mu = phi_xx > 0 ? 1.0 : -1.0;
    return std::exp(1i * (lambda * phi_at + mu * pi / 4)) * f_at * std::sqrt(2 * pi / (lambda * std::abs(phi_xx)));
}

CfuCoefficients cfu_match(double phi_1, double phi_2, cplx f_1, cplx f_2, double phi_xx_1, double phi_xx_2) {
    if (phi_1 < phi_2) throw PreconditionError("cfu_match: requires phi_1 >= phi_2");
    if (!(phi_xx_1 < 0 && phi_xx_2 > 0)) throw PreconditionError("cfu_match: requires phi_xx_1 < 0 < phi_xx_2");
    if (phi_1 == phi_2) throw CoalescenceError("cfu_match: coalescing points, use cfu_small_alpha");
    CfuCoefficients c;
    c.phi0 = 0.5 * (phi_1 + phi_2);
    c.xi = std::pow(0.75 * (phi_1 - phi_2), 2.0 / 3.0);
    const cplx a = f_2 / std::sqrt(phi_xx_2);
    const cplx b = f_1 / std::sqrt(-phi_xx_1);
    const double q = std::pow(c.xi, 0.25);
    c.A0 = q / std::numbers::sqrt2 * (a + b);
    c.B0 = (a - b) / (q * std::numbers::sqrt2);
    return c;
}

cplx cfu_eval(const CfuCoefficients& c, double lambda) {
    if (!(lambda > 0)) throw PreconditionError("cfu_eval: lambda must be positive");
    const auto a = specfun::airy_all(-std::pow(lambda, 2.0 / 3.0) * c.xi);
    return std::exp(1i * (lambda * c.phi0)) *
           (2 * pi * c.A0 * std::pow(lambda, -1.0 / 3.0) * a.ai - 2i * pi * c.B0 * std::pow(lambda, -2.0 / 3.0) * a.aip);
}

SmallAlphaPoints cfu_small_alpha(double phi_xxx, double phi_x_alpha, double alpha) {
    if (phi_xxx == 0) throw DegeneratePointError("cfu_small_alpha: phi_xxx = 0");
    SmallAlphaPoints p;
    const double r = -2 * phi_xxx * phi_x_alpha * alpha;
    const cplx root = r >= 0 ? cplx(std::sqrt(r)) : cplx(0, std::sqrt(-r));
    p.imaginary = r < 0;
    p.x1 = -root / phi_xxx;
    p.x2 = root / phi_xxx;
    p.xi = -std::cbrt(2.0) * phi_x_alpha / std::cbrt(phi_xxx) * alpha;
    return p;
}

}  // namespace caustic::stphase
