#pragma once

#include <complex>
#include <functional>
#include <ostream>
#include <utility>
#include <vector>

#include "caustic/rays.hpp"

namespace caustic::kl {

using cplx = std::complex<double>;

struct KlCoordinates {
    std::function<double(double)> phi;
    std::function<double(double)> rho;
};

struct KlAmplitudes {
    std::function<cplx(double)> g0;
    std::function<cplx(double)> g1;
};

struct KlPoint {
    double phi, rho;
};

struct KlAmplitudePoint {
    cplx g0, g1;
};

// phi = (S+ + S-)/2, rho = (3/4 (S+ - S-))^{2/3}
KlPoint kl_point(double s_plus, double s_minus);
KlAmplitudePoint kl_amplitude_point(cplx a_plus, cplx a_minus, double rho);

KlCoordinates kl_coordinates(std::function<double(double)> s_plus, std::function<double(double)> s_minus);
// At points where the branch amplitudes blow up (rho = 0) the smooth limit is taken from the finite side.
KlAmplitudes kl_amplitudes(std::function<cplx(double)> a_plus, std::function<cplx(double)> a_minus,
                           std::function<double(double)> rho);

struct KlData {
    KlCoordinates coords;
    KlAmplitudes amps;
};

// closed-form Airy coordinates, continued analytically to x < 0 (rho = x)
KlData airy_kl_data(double x0);

cplx kl_field(const KlCoordinates& coords, const KlAmplitudes& amps, double epsilon, double x);
cplx kl_field_point(double phi, double rho, cplx g0, cplx g1, double epsilon);

// (r1, r2) = ((phi')^2 + rho (rho')^2 - eta^2, phi' rho')
std::vector<std::pair<double, double>> kl_phase_residual(const KlCoordinates& coords,
                                                         const rays::RefractionProfile1D& profile,
                                                         const std::vector<double>& xs);
std::vector<std::pair<double, double>> kl_phase_residual_2d(const std::function<double(double, double)>& phi,
                                                            const std::function<double(double, double)>& rho,
                                                            const std::function<double(double, double)>& eta_squared,
                                                            const std::vector<std::pair<double, double>>& pts);

void write_kl_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<double>& rho,
                  const std::vector<cplx>& u_kl, const std::vector<cplx>& u_wkb);

}  // namespace caustic::kl
