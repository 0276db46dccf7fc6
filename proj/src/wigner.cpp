#include "caustic/wigner.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "caustic/errors.hpp"
#include "caustic/numdiff.hpp"
#include "caustic/specfun.hpp"

namespace caustic::wigner {

using namespace std::complex_literals;
using std::numbers::pi;

namespace {

std::mutex fftw_planner_mutex;

double taper(double s, double L, double frac) {
    const double inner = (1 - frac) * L;
    if (s <= inner) return 1.0;
    if (s >= L) return 0.0;
    return 0.5 * (1 + std::cos(pi * (s - inner) / (L - inner)));
}

bool uniform_spacing(const std::vector<double>& v) {
    if (v.size() < 2) return false;
    const double d = (v.back() - v.front()) / (v.size() - 1);
    if (!(d > 0)) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i] - (v.front() + i * d)) > 1e-9 * d) return false;
    return true;
}

double half_window(const WaveFunctionSampler& psi, double x, const QuadraturePolicy& q) {
    const double d = std::min(x - psi.support.lo, psi.support.hi - x);
    if (!std::isfinite(d)) throw PreconditionError("wigner_numeric: unbounded sigma window, give a finite support");
    if (d <= 0) return 0;
    return q.truncation_rule == TruncationRule::domain_limited ? (1 - q.delta) * d : d;
}

// one x-row: W(k_m) = h/(pi eps) [g_0 + 2 Re sum_{j>=1} g_j w_j e^{-2 i k_m s_j / eps}]
void wigner_row(const WaveFunctionSampler& psi, double x, double L, const std::vector<double>& ks,
                const QuadraturePolicy& q, bool fast, double* out) {
    const double eps = psi.epsilon;
    const std::size_t nk = ks.size();
    if (L <= 0) {
        std::fill(out, out + nk, 0.0);
        return;
    }
    const double h_target = 2 * L / q.sigma_samples;
    auto sample = [&](double s) {
        return psi.value(x + s) * std::conj(psi.value(x - s)) * taper(s, L, q.taper_fraction);
    };

    if (!fast) {
        const std::size_t n = static_cast<std::size_t>(std::floor(L / h_target));
        std::vector<cplx> g(n + 1);
        for (std::size_t j = 0; j <= n; ++j) g[j] = sample(j * h_target);
        g[0] = cplx(g[0].real(), 0.0) * 0.5;
        for (std::size_t m = 0; m < nk; ++m) {
            double acc = 0;
            for (std::size_t j = 0; j <= n; ++j) acc += (g[j] * std::exp(-2i * (ks[m] * j * h_target / eps))).real();
            out[m] = 2 * acc * h_target / (pi * eps);
        }
        return;
    }

    // conjugate grid: 2 dk' h / eps = 2 pi / M, dk' = dk / r
    const double dk = (ks.back() - ks.front()) / (nk - 1);
    const std::size_t r = static_cast<std::size_t>(std::ceil((L + h_target) * dk / (pi * eps)));
    const double dkp = dk / r;
    const std::size_t M = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(pi * eps / (dkp * h_target))),
                                                (nk - 1) * r + 1);
    const double h = pi * eps / (dkp * M);
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::floor(L / h)), M - 1);

    fftw_complex* buf = fftw_alloc_complex(M);
    std::fill(reinterpret_cast<double*>(buf), reinterpret_cast<double*>(buf) + 2 * M, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        const double s = j * h;
        cplx v = sample(s) * std::exp(-2i * (ks.front() * s / eps));
        if (j == 0) v = 0.5 * v.real();
        buf[j][0] = v.real();
        buf[j][1] = v.imag();
    }
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(M), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    for (std::size_t m = 0; m < nk; ++m) out[m] = 2 * buf[m * r][0] * h / (pi * eps);
    {
        std::lock_guard lock(fftw_planner_mutex);
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
}

}  // namespace

PhaseSpaceGrid wigner_numeric(const WaveFunctionSampler& psi, const std::vector<double>& xs,
                              const std::vector<double>& ks, const QuadraturePolicy& q) {
    if (!(psi.epsilon > 0)) throw DomainError("wigner_numeric: epsilon must be positive");
    if (!psi.value) throw PreconditionError("wigner_numeric: empty wave function");
    if (ks.empty() || xs.empty()) throw PreconditionError("wigner_numeric: empty grid");
    if (!(q.taper_fraction > 0 && q.taper_fraction < 0.5)) throw PreconditionError("wigner_numeric: taper_fraction outside (0, 0.5)");
    if (!(q.delta >= 0 && q.delta < 1)) throw PreconditionError("wigner_numeric: delta outside [0, 1)");

    PhaseSpaceGrid g{xs, ks, std::vector<double>(xs.size() * ks.size()), psi.epsilon};
    std::vector<double> L(xs.size());
    double kmax = 0;
    for (double k : ks) kmax = std::max(kmax, std::abs(k));
    double Lmax = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) Lmax = std::max(Lmax, L[i] = half_window(psi, xs[i], q));
    const auto required = static_cast<std::size_t>(std::ceil(4 * kmax * Lmax / (pi * psi.epsilon)));
    if (q.sigma_samples < std::max<std::size_t>(required, 2))
        throw UndersampledError("wigner_numeric: sigma_samples below 2 per oscillation; need " +
                                    std::to_string(std::max<std::size_t>(required, 2)),
                                std::max<std::size_t>(required, 2));

    const bool fast = uniform_spacing(ks);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < xs.size(); i = next++) {
            try {
                wigner_row(psi, xs[i], L[i], ks, q, fast, &g.values[i * ks.size()]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const std::size_t nthreads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, xs.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return g;
}

double wigner_exact_airy(double x, double k, double epsilon, double x0) {
    if (!(epsilon > 0)) throw DomainError("wigner_exact_airy: epsilon must be positive");
    if (!(x0 > 0)) throw DomainError("wigner_exact_airy: x0 must be positive");
    const double s = std::cbrt(4.0) * std::pow(epsilon, -2.0 / 3.0);
    return std::pow(epsilon, -2.0 / 3.0) / (std::cbrt(2.0) * std::sqrt(x0)) * specfun::ai(s * (k * k - x));
}

std::optional<double> chord_points(const std::function<double(double)>& S_prime, double x, double k,
                                   Interval bracket) {
    auto G = [&](double s) { return S_prime(x + s) + S_prime(x - s) - 2 * k; };
    const double lo = std::max(0.0, bracket.lo), hi = bracket.hi;
    if (!(hi >= lo) || !std::isfinite(hi)) return std::nullopt;
    const double g0 = G(lo);
    if (lo == 0 && std::abs(g0) <= 1e-14 * std::max(1.0, std::abs(k))) return 0.0;

    // first sign change on a coarse scan, then bisection and Newton polish
    const int n = 64;
    double a = lo, ga = g0;
    for (int i = 1; i <= n; ++i) {
        double b = lo + (hi - lo) * i / n;
        const double gb = G(b);
        if (!std::isfinite(gb)) break;
        if (gb == 0) return b;
        if ((ga < 0) != (gb < 0)) {
            for (int it = 0; it < 200 && b - a > 1e-9 * std::max(1.0, b); ++it) {
                const double m = 0.5 * (a + b);
                const double gm = G(m);
                if ((gm < 0) == (ga < 0)) a = m, ga = gm;
                else b = m;
            }
            double s = 0.5 * (a + b);
            const double lo_b = a, hi_b = b;
            for (int it = 0; it < 8; ++it) {
                const double hs = numdiff::step(s, 1e-7);
                const double d = numdiff::d1(G, s, hs);
                if (d == 0) break;
                const double next = s - G(s) / d;
                if (!(next >= lo_b - 1e-9 && next <= hi_b + 1e-9)) break;
                if (std::abs(next - s) < 1e-15) {
                    s = next;
                    break;
                }
                s = next;
            }
            return s;
        }
        a = b;
        ga = gb;
    }
    return std::nullopt;
}

namespace {

void require_derivatives(const wkb::BranchField& b) {
    if (!b.S || !b.dS || !b.d2S || !b.d3S || !b.A)
        throw PreconditionError("semiclassical Wigner: branch needs S, S', S'', S''' and A");
}

double D(const wkb::BranchField& b, double x, double s) { return (b.A(x + s) * std::conj(b.A(x - s))).real(); }

// the phase continues analytically past the far end of the branch domain; the caustic end bounds |sigma|
double sigma_bracket(const wkb::BranchField& b, double x) {
    return std::isfinite(b.domain.lo) ? x - b.domain.lo : b.domain.hi - x;
}

}  // namespace

double semiclassical_wigner_local(const wkb::BranchField& b, double x, double k, double epsilon) {
    require_derivatives(b);
    if (!(epsilon > 0)) throw DomainError("semiclassical_wigner_local: epsilon must be positive");
    const double s3 = b.d3S(x);
    if (s3 == 0) throw DegeneratePointError("semiclassical_wigner_local: S''' = 0");
    const auto s0 = chord_points(b.dS, x, k, {0.0, sigma_bracket(b, x)});
    const double d = D(b, x, s0.value_or(0.0));
    const double c = std::cbrt(4.0) * std::pow(epsilon, -2.0 / 3.0);
    return c * std::cbrt(2 / std::abs(s3)) * d * specfun::ai(-c * std::cbrt(2 / s3) * (k - b.dS(x)));
}

double semiclassical_wigner_uniform(const wkb::BranchField& b, double x, double k, double epsilon) {
    require_derivatives(b);
    if (!(epsilon > 0)) throw DomainError("semiclassical_wigner_uniform: epsilon must be positive");
    const double s3 = b.d3S(x);
    if (s3 == 0) throw DegeneratePointError("semiclassical_wigner_uniform: S''' = 0");
    const double alpha = k - b.dS(x);
    double A0, xi;
    if (std::abs(alpha) <= 1e-12 * std::max(1.0, std::abs(k))) {
        xi = 0;
        A0 = D(b, x, 0.0) / std::cbrt(std::abs(s3));
    } else {
        const auto s0 = chord_points(b.dS, x, k, {0.0, sigma_bracket(b, x)});
        if (!s0) throw DomainError("semiclassical_wigner_uniform: no real chord through (x, k)");
        const double s = *s0;
        const double F = b.S(x + s) - b.S(x - s) - 2 * k * s;
        const double Fss = b.d2S(x + s) - b.d2S(x - s);
        xi = std::pow(1.5 * std::abs(F), 2.0 / 3.0);
        if (s < 1e-6 * std::max(1.0, x) || Fss == 0) {
            A0 = D(b, x, s) / std::cbrt(std::abs(s3));
        } else {
            A0 = std::numbers::sqrt2 * std::pow(xi, 0.25) * D(b, x, s) / std::sqrt(std::abs(Fss));
        }
    }
    return 2 * A0 * std::pow(epsilon, -2.0 / 3.0) * specfun::ai(-std::pow(epsilon, -2.0 / 3.0) * xi);
}

namespace {

std::vector<double> k_moment(const PhaseSpaceGrid& g, int power, bool* truncated) {
    const std::size_t nk = g.ks.size();
    if (nk < 2) throw PreconditionError("wigner moments: need at least two k samples");
    double vmax = 0;
    for (double v : g.values) vmax = std::max(vmax, std::abs(v));
    bool trunc = false;
    std::vector<double> out(g.xs.size());
    for (std::size_t i = 0; i < g.xs.size(); ++i) {
        if (std::abs(g.at(i, 0)) > 1e-8 * vmax || std::abs(g.at(i, nk - 1)) > 1e-8 * vmax) trunc = true;
        double acc = 0;
        for (std::size_t j = 0; j + 1 < nk; ++j) {
            const double f0 = g.at(i, j) * std::pow(g.ks[j], power);
            const double f1 = g.at(i, j + 1) * std::pow(g.ks[j + 1], power);
            acc += 0.5 * (f0 + f1) * (g.ks[j + 1] - g.ks[j]);
        }
        out[i] = acc;
    }
    if (truncated) *truncated = trunc;
    return out;
}

}  // namespace

std::vector<double> wigner_moment0(const PhaseSpaceGrid& g, bool* truncated) { return k_moment(g, 0, truncated); }
std::vector<double> wigner_moment1(const PhaseSpaceGrid& g, bool* truncated) { return k_moment(g, 1, truncated); }

double wigner_via_fourier(const std::function<cplx(double)>& psi_hat, double x, double k, double epsilon,
                          double q_cut) {
    if (!(epsilon > 0)) throw DomainError("wigner_via_fourier: epsilon must be positive");
    if (!(q_cut > 0) || !std::isfinite(q_cut)) throw PreconditionError("wigner_via_fourier: q_cut must be finite and positive");
    const double kk = k / epsilon;
    const double half = q_cut - std::abs(kk);
    if (half <= 0) return 0.0;
    const double plo = -2 * half, phi = 2 * half;
    // trapezoid on a smooth integrand vanishing at both ends
    const double h = std::min((phi - plo) / 2048, pi / (8 * std::abs(x) + 1e-300));
    const auto n = static_cast<std::size_t>(std::ceil((phi - plo) / h));
    const double hp = (phi - plo) / n;
    cplx acc = 0;
    for (std::size_t j = 0; j <= n; ++j) {
        const double p = plo + j * hp;
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        acc += w * std::exp(1i * (p * x)) * psi_hat(-kk - p / 2) * std::conj(psi_hat(-kk + p / 2));
    }
    return (acc * hp).real() / epsilon;
}

double weak_limit_pairing(const PhaseSpaceGrid& g, const std::function<double(double, double)>& Q) {
    const std::size_t nx = g.xs.size(), nk = g.ks.size();
    if (nx < 2 || nk < 2) throw PreconditionError("weak_limit_pairing: grid too small");
    double qmax = 0, qedge = 0;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nk; ++j) {
            const double v = std::abs(Q(g.xs[i], g.ks[j]));
            qmax = std::max(qmax, v);
            if (i == 0 || j == 0 || i + 1 == nx || j + 1 == nk) qedge = std::max(qedge, v);
        }
    if (qedge > 1e-10 * qmax) throw DomainError("weak_limit_pairing: test function support escapes the grid");
    auto wx = [&](std::size_t i) {
        return 0.5 * ((i > 0 ? g.xs[i] - g.xs[i - 1] : 0.0) + (i + 1 < nx ? g.xs[i + 1] - g.xs[i] : 0.0));
    };
    auto wk = [&](std::size_t j) {
        return 0.5 * ((j > 0 ? g.ks[j] - g.ks[j - 1] : 0.0) + (j + 1 < nk ? g.ks[j + 1] - g.ks[j] : 0.0));
    };
    double acc = 0;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nk; ++j) acc += wx(i) * wk(j) * Q(g.xs[i], g.ks[j]) * g.at(i, j);
    return acc;
}

void write_wigner_csv(std::ostream& os, const PhaseSpaceGrid& g) {
    char buf[96];
    os << "x,k,W\n";
    for (std::size_t i = 0; i < g.xs.size(); ++i)
        for (std::size_t j = 0; j < g.ks.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.xs[i], g.ks[j], g.at(i, j));
            os << buf;
        }
}

void write_wigner_manifest(std::ostream& os, const PhaseSpaceGrid& g, const GridManifestInfo& info) {
    nlohmann::ordered_json j;
    j["epsilon"] = g.epsilon;
    j["x0"] = info.x0;
    j["grid"] = {{"x_min", g.xs.empty() ? 0.0 : g.xs.front()},
                 {"x_max", g.xs.empty() ? 0.0 : g.xs.back()},
                 {"nx", g.xs.size()},
                 {"k_min", g.ks.empty() ? 0.0 : g.ks.front()},
                 {"k_max", g.ks.empty() ? 0.0 : g.ks.back()},
                 {"nk", g.ks.size()}};
    j["sigma_samples"] = info.sigma_samples;
    j["taper_fraction"] = info.taper_fraction;
    j["code_version"] = info.code_version;
    os << j.dump(2) << "\n";
}

}  // namespace caustic::wigner
