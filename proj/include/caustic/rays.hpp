#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "caustic/common.hpp"

namespace caustic::rays {

struct RefractionProfile1D {
    std::function<double(double)> eta_squared;
    std::function<double(double)> eta_squared_prime;
    std::string name;
    Interval domain;
};

// eta^2 = x on [0, inf)
RefractionProfile1D airy_profile();
RefractionProfile1D constant_profile(double c2);
// eta^2 = a + b x + c x^2
RefractionProfile1D quadratic_profile(double a, double b, double c, Interval domain = {});

// Checks positivity and derivative consistency (central differences, rel 1e-5) on n points.
bool profile_consistent(const RefractionProfile1D& p, double lo, double hi, int n = 64);

struct StepPolicy {
    double abs_tol = 1e-10;  // local error per unit t
    double rel_tol = 1e-10;
    double initial_step = 1e-3;
    double max_step = 0.0;  // 0: t_end / 64
    int max_steps = 200000;
};

struct RaySample {
    double t = 0, x = 0, k = 0, J = 1, S = 0;
    double dJ = 0;  // dJ/dt, kept for Hermite interpolation
};

struct RayPath {
    std::vector<RaySample> samples;
    double x0 = 0, k0 = 0;
    std::string profile;
    bool truncated = false;

    // Cubic Hermite interpolation between stored samples.
    RaySample at(double t, const RefractionProfile1D& profile) const;
    double max_energy_error(const RefractionProfile1D& profile) const;
};

double hamiltonian(const RefractionProfile1D& p, double x, double k);

RayPath integrate_hamiltonian(const RefractionProfile1D& profile, double x0, double k0, double t_end,
                              const StepPolicy& policy = {}, double S0 = 0.0);

std::pair<double, double> airy_ray_closed(double t, double x0, double k0);

struct AiryArrivalData {
    double t_minus, t_plus;
    double J_minus, J_plus;
};

AiryArrivalData airy_arrivals(double x, double x0);

struct LinearLayerParams {
    double mu0 = 0;
    double mu1 = 1;  // depth gradient of eta^2
    double h = 0;    // boundary depth
    double eta0 = 1;
    double psi = 0.5;  // incidence angle
    double kappa0 = 1;
};

// mu0 is fixed by eta0^2 = mu0 + mu1 h.
LinearLayerParams make_linear_layer(double mu1, double h, double eta0, double psi, double kappa0);
void validate(const LinearLayerParams& p);

std::pair<double, double> linear_layer_ray(double t, double xi, const LinearLayerParams& p);
double linear_layer_jacobian(double t, const LinearLayerParams& p);
double linear_layer_caustic_depth(const LinearLayerParams& p);
double linear_layer_caustic_time(const LinearLayerParams& p);
// (t-, t+) reaching depth z; domain error below the caustic
std::pair<double, double> linear_layer_arrivals(double z, const LinearLayerParams& p);

struct CausticPoint {
    double t, x;
};

std::vector<CausticPoint> find_caustic(const RefractionProfile1D& profile, double x0, double k0, double t_end,
                                       const StepPolicy& policy = {});

void write_ray_fan_csv(std::ostream& os, const std::vector<RayPath>& fan);
void write_layer_fan_csv(std::ostream& os, const LinearLayerParams& p, const std::vector<double>& xis,
                         const std::vector<double>& ts);

}  // namespace caustic::rays
