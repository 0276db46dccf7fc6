#pragma once

#include <complex>

namespace caustic::stphase {

using cplx = std::complex<double>;

enum class Multiplicity { Simple, Double };

struct StationaryPoint {
    cplx location;
    Multiplicity multiplicity = Multiplicity::Simple;
    double second_derivative = 0;
};

struct CfuCoefficients {
    double phi0 = 0;
    double xi = 0;
    cplx A0, B0;
};

// e^{i lambda phi + i mu pi/4} f sqrt(2 pi / (lambda |phi''|)), mu = sgn phi''
cplx standard_spa(cplx f_at, double phi_at, double phi_xx, double lambda);

// point 1 is the maximum (phi_xx_1 < 0), point 2 the minimum
CfuCoefficients cfu_match(double phi_1, double phi_2, cplx f_1, cplx f_2, double phi_xx_1, double phi_xx_2);

cplx cfu_eval(const CfuCoefficients& c, double lambda);

struct SmallAlphaPoints {
    cplx x1, x2;
    double xi = 0;
    bool imaginary = false;
};

SmallAlphaPoints cfu_small_alpha(double phi_xxx, double phi_x_alpha, double alpha);

}  // namespace caustic::stphase
