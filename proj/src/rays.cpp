#include "caustic/rays.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "caustic/errors.hpp"

namespace caustic::rays {

RefractionProfile1D airy_profile() {
    return {[](double x) { return x; }, [](double) { return 1.0; }, "airy", Interval{0.0, INFINITY}};
}

RefractionProfile1D constant_profile(double c2) {
    if (!(c2 > 0)) throw DomainError("constant_profile: eta^2 must be positive");
    return {[c2](double) { return c2; }, [](double) { return 0.0; }, "constant", Interval{}};
}

RefractionProfile1D quadratic_profile(double a, double b, double c, Interval domain) {
    return {[=](double x) { return a + b * x + c * x * x; }, [=](double x) { return b + 2 * c * x; }, "quadratic",
            domain};
}

bool profile_consistent(const RefractionProfile1D& p, double lo, double hi, int n) {
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / n;
        const double e = p.eta_squared(x);
        if (!(e > 0)) return false;
        const double h = 1e-4 * std::max(1.0, std::abs(x));
        const double fd = (p.eta_squared(x + h) - p.eta_squared(x - h)) / (2 * h);
        const double d = p.eta_squared_prime(x);
        if (std::abs(fd - d) > 1e-5 * std::max({std::abs(d), std::abs(fd), 1e-8})) return false;
    }
    return true;
}

double hamiltonian(const RefractionProfile1D& p, double x, double k) { return 0.5 * (k * k - p.eta_squared(x)); }

namespace {

// Three rays launched from x0 - h, x0, x0 + h on the energy shell, advanced with one step sequence.
constexpr int kDim = 9;
using State = std::array<double, kDim>;

struct Node {
    double t;
    State y;
};

State rhs(const RefractionProfile1D& p, const State& y) {
    State d{};
    for (int r = 0; r < 3; ++r) {
        const double x = y[3 * r], k = y[3 * r + 1];
        d[3 * r] = k;
        d[3 * r + 1] = 0.5 * p.eta_squared_prime(x);
        d[3 * r + 2] = p.eta_squared(x);
    }
    return d;
}

// Dormand-Prince 5(4) tableau
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
    State y;
    State err;
};

StepResult dp_step(const RefractionProfile1D& p, const State& y, double h) {
    auto axpy = [&](std::initializer_list<std::pair<double, const State*>> terms) {
        State out = y;
        for (auto [c, k] : terms)
            for (int i = 0; i < kDim; ++i) out[i] += h * c * (*k)[i];
        return out;
    };
    const State k1 = rhs(p, y);
    const State k2 = rhs(p, axpy({{a21, &k1}}));
    const State k3 = rhs(p, axpy({{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(p, axpy({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs(p, axpy({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs(p, axpy({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    StepResult r;
    r.y = axpy({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = rhs(p, r.y);
    for (int i = 0; i < kDim; ++i)
        r.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    return r;
}

struct Paired {
    std::vector<Node> nodes;
    double dx0 = 0;
    bool truncated = false;
};

double launch_k(const RefractionProfile1D& p, double x, double k0) {
    const double e = p.eta_squared(x);
    if (!(e >= 0)) throw DomainError("integrate_hamiltonian: eta^2 negative at launch point");
    return (k0 < 0 ? -1.0 : 1.0) * std::sqrt(e);
}

Paired integrate_paired(const RefractionProfile1D& p, double x0, double k0, double t_end, const StepPolicy& pol,
                        double S0) {
    if (!std::isfinite(x0) || !std::isfinite(k0) || !std::isfinite(t_end) || t_end < 0)
        throw PreconditionError("integrate_hamiltonian: invalid initial data");
    if (std::abs(hamiltonian(p, x0, k0)) > 1e-8)
        throw PreconditionError("integrate_hamiltonian: initial condition off the energy shell");
    if (!p.domain.contains(x0)) throw PreconditionError("integrate_hamiltonian: x0 outside profile domain");

    Paired out;
    out.dx0 = 1e-5 * std::max(std::abs(x0), 1e-3);
    double xm = x0 - out.dx0, xp = x0 + out.dx0;
    // keep both neighbours inside the domain by shifting the stencil if needed
    if (!p.domain.contains(xm)) xm = x0, xp = x0 + 2 * out.dx0;
    if (!p.domain.contains(xp)) xp = x0, xm = x0 - 2 * out.dx0;
    State y{x0, k0, S0, xm, launch_k(p, xm, k0), S0, xp, launch_k(p, xp, k0), S0};
    out.nodes.push_back({0.0, y});

    const double hmax = pol.max_step > 0 ? pol.max_step : std::max(t_end / 64, 1e-6);
    const double dom_tol = 1e-9 * std::max(1.0, std::abs(x0));
    double t = 0, h = std::min(pol.initial_step, hmax);
    int steps = 0;
    while (t < t_end) {
        if (++steps > pol.max_steps) throw DomainError("integrate_hamiltonian: step budget exhausted");
        h = std::min(h, t_end - t);
        const StepResult r = dp_step(p, y, h);
        double err = 0;
        for (int i = 0; i < kDim; ++i) {
            const double sc = (pol.abs_tol + pol.rel_tol * std::max(std::abs(y[i]), std::abs(r.y[i]))) * std::max(h, 1e-6);
            err = std::max(err, std::abs(r.err[i]) / sc);
        }
        if (!std::isfinite(err)) throw DomainError("integrate_hamiltonian: non-finite state");
        if (err <= 1.0) {
            bool inside = true;
            for (int rr = 0; rr < 3; ++rr) {
                const double x = r.y[3 * rr];
                if (x < p.domain.lo - dom_tol || x > p.domain.hi + dom_tol) inside = false;
            }
            if (!inside) {
                out.truncated = true;
                break;
            }
            t = (t_end - t - h < 1e-14 * std::max(1.0, t_end)) ? t_end : t + h;
            y = r.y;
            out.nodes.push_back({t, y});
        }
        const double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h = std::min(hmax, h * std::clamp(fac, 0.2, 5.0));
        if (h < 1e-14 * std::max(1.0, t_end)) throw DomainError("integrate_hamiltonian: step size underflow");
    }
    return out;
}

RaySample sample_from(const Paired& pr, double t, const State& y) {
    RaySample s;
    s.t = t;
    s.x = y[0];
    s.k = y[1];
    s.S = y[2];
    const double span = pr.nodes.front().y[6] - pr.nodes.front().y[3];
    s.J = (y[6] - y[3]) / span;
    s.dJ = (y[7] - y[4]) / span;
    return s;
}

State state_at(const RefractionProfile1D& p, const Paired& pr, double t) {
    // single step from the last node at or before t
    std::size_t i = 0;
    while (i + 1 < pr.nodes.size() && pr.nodes[i + 1].t <= t) ++i;
    const double h = t - pr.nodes[i].t;
    if (h == 0) return pr.nodes[i].y;
    return dp_step(p, pr.nodes[i].y, h).y;
}

}  // namespace

RayPath integrate_hamiltonian(const RefractionProfile1D& profile, double x0, double k0, double t_end,
                              const StepPolicy& policy, double S0) {
    const Paired pr = integrate_paired(profile, x0, k0, t_end, policy, S0);
    RayPath path;
    path.x0 = x0;
    path.k0 = k0;
    path.profile = profile.name;
    path.truncated = pr.truncated;
    path.samples.reserve(pr.nodes.size());
    for (const Node& n : pr.nodes) path.samples.push_back(sample_from(pr, n.t, n.y));
    return path;
}

RaySample RayPath::at(double t, const RefractionProfile1D& p) const {
    if (samples.empty()) throw PreconditionError("RayPath::at: empty path");
    if (t < samples.front().t || t > samples.back().t) throw DomainError("RayPath::at: t outside the path");
    std::size_t i = 0;
    while (i + 2 < samples.size() && samples[i + 1].t <= t) ++i;
    const RaySample& a = samples[i];
    const RaySample& b = samples[std::min(i + 1, samples.size() - 1)];
    const double h = b.t - a.t;
    if (h <= 0) return a;
    const double s = (t - a.t) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    auto herm = [&](double ya, double da, double yb, double db) {
        return h00 * ya + h10 * h * da + h01 * yb + h11 * h * db;
    };
    RaySample r;
    r.t = t;
    r.x = herm(a.x, a.k, b.x, b.k);
    r.k = herm(a.k, 0.5 * p.eta_squared_prime(a.x), b.k, 0.5 * p.eta_squared_prime(b.x));
    r.S = herm(a.S, p.eta_squared(a.x), b.S, p.eta_squared(b.x));
    r.J = herm(a.J, a.dJ, b.J, b.dJ);
    r.dJ = a.dJ + s * (b.dJ - a.dJ);
    return r;
}

double RayPath::max_energy_error(const RefractionProfile1D& p) const {
    double m = 0;
    for (const RaySample& s : samples) m = std::max(m, std::abs(hamiltonian(p, s.x, s.k)));
    return m;
}

std::pair<double, double> airy_ray_closed(double t, double x0, double k0) {
    return {t * t / 4 + k0 * t + x0, t / 2 + k0};
}

AiryArrivalData airy_arrivals(double x, double x0) {
    if (!(x > 0) || !(x < x0)) throw DomainError("airy_arrivals: x must lie in (0, x0)");
    const double sx = std::sqrt(x), s0 = std::sqrt(x0);
    return {2 * (s0 - sx), 2 * (s0 + sx), sx / s0, -sx / s0};
}

LinearLayerParams make_linear_layer(double mu1, double h, double eta0, double psi, double kappa0) {
    LinearLayerParams p{eta0 * eta0 - mu1 * h, mu1, h, eta0, psi, kappa0};
    validate(p);
    return p;
}

void validate(const LinearLayerParams& p) {
    if (!(p.mu1 > 0)) throw PreconditionError("linear layer: mu1 must be positive");
    if (!(p.psi > 0 && p.psi < std::numbers::pi / 2)) throw PreconditionError("linear layer: psi must lie in (0, pi/2)");
    if (!(p.eta0 > 0)) throw PreconditionError("linear layer: eta0 must be positive");
    if (std::abs(p.mu0 + p.mu1 * p.h - p.eta0 * p.eta0) > 1e-12 * std::max(1.0, p.eta0 * p.eta0))
        throw PreconditionError("linear layer: eta0^2 must equal mu0 + mu1 h");
}

std::pair<double, double> linear_layer_ray(double t, double xi, const LinearLayerParams& p) {
    const double c = p.eta0 * std::cos(p.psi);
    return {xi + p.eta0 * t * std::sin(p.psi), p.mu1 / 4 * t * t - c * t + p.h};
}

double linear_layer_jacobian(double t, const LinearLayerParams& p) {
    const double c = p.eta0 * std::cos(p.psi);
    return (-p.mu1 / 2 * t + c) / c;
}

double linear_layer_caustic_depth(const LinearLayerParams& p) {
    const double c = p.eta0 * std::cos(p.psi);
    return p.h - c * c / p.mu1;
}

double linear_layer_caustic_time(const LinearLayerParams& p) { return 2 * p.eta0 * std::cos(p.psi) / p.mu1; }

std::pair<double, double> linear_layer_arrivals(double z, const LinearLayerParams& p) {
    const double c = p.eta0 * std::cos(p.psi);
    const double disc = c * c + p.mu1 * (z - p.h);
    if (disc < 0) throw DomainError("linear_layer_arrivals: depth below the caustic");
    const double r = std::sqrt(disc);
    return {2 / p.mu1 * (c - r), 2 / p.mu1 * (c + r)};
}

std::vector<CausticPoint> find_caustic(const RefractionProfile1D& profile, double x0, double k0, double t_end,
                                       const StepPolicy& policy) {
    const Paired pr = integrate_paired(profile, x0, k0, t_end, policy, 0.0);
    const double span = pr.nodes.front().y[6] - pr.nodes.front().y[3];
    auto J = [&](double t) {
        const State y = state_at(profile, pr, t);
        return (y[6] - y[3]) / span;
    };
    auto Jn = [&](std::size_t i) { return (pr.nodes[i].y[6] - pr.nodes[i].y[3]) / span; };

    std::vector<CausticPoint> out;
    for (std::size_t i = 0; i + 1 < pr.nodes.size(); ++i) {
        double ja = Jn(i), jb = Jn(i + 1);
        if (ja == 0 && i > 0) continue;  // handled as the right end of the previous bracket
        if (ja * jb > 0) continue;
        double a = pr.nodes[i].t, b = pr.nodes[i + 1].t;
        if (jb == 0 && i + 2 < pr.nodes.size() && ja * Jn(i + 2) > 0) continue;  // touch, no crossing
        while (b - a > 1e-8) {
            const double m = 0.5 * (a + b);
            const double jm = J(m);
            if (jm == 0) {
                a = b = m;
                break;
            }
            if ((jm > 0) == (ja > 0)) {
                a = m;
                ja = jm;
            } else {
                b = m;
            }
        }
        const double tc = 0.5 * (a + b);
        if (std::abs(J(tc)) < 1e-6) out.push_back({tc, state_at(profile, pr, tc)[0]});
    }
    return out;
}

void write_ray_fan_csv(std::ostream& os, const std::vector<RayPath>& fan) {
    char buf[256];
    os << "ray_id,t,x,k,J,S\n";
    for (std::size_t r = 0; r < fan.size(); ++r)
        for (const RaySample& s : fan[r].samples) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", r, s.t, s.x, s.k, s.J, s.S);
            os << buf;
        }
}

void write_layer_fan_csv(std::ostream& os, const LinearLayerParams& p, const std::vector<double>& xis,
                         const std::vector<double>& ts) {
    char buf[256];
    const double c = p.eta0 * std::cos(p.psi);
    os << "ray_id,t,y,z,k_y,k_z,J,S\n";
    for (std::size_t r = 0; r < xis.size(); ++r)
        for (double t : ts) {
            const auto [y, z] = linear_layer_ray(t, xis[r], p);
            const double ky = p.eta0 * std::sin(p.psi);
            const double kz = p.mu1 / 2 * t - c;
            // S = integral of eta^2 along the ray
            const double S = p.eta0 * std::sin(p.psi) * xis[r] +
                             (p.mu0 + p.mu1 * p.h) * t - p.mu1 * c * t * t / 2 + p.mu1 * p.mu1 * t * t * t / 12;
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r, t, y, z, ky, kz,
                          linear_layer_jacobian(t, p), S);
            os << buf;
        }
}

}  // namespace caustic::rays
