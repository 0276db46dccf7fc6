#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "caustic/errors.hpp"
#include "caustic/rays.hpp"

using namespace caustic;
using namespace caustic::rays;

TEST_CASE("Airy ray integration follows the parabola") {
    const auto prof = airy_profile();
    const RayPath path = integrate_hamiltonian(prof, 1.0, -1.0, 4.0);
    CHECK_FALSE(path.truncated);
    CHECK(path.samples.back().t == doctest::Approx(4.0));
    for (const auto& s : path.samples) {
        CHECK(std::abs(s.x - (s.t * s.t / 4 - s.t + 1)) < 1e-9);
        CHECK(std::abs(s.k - (s.t / 2 - 1)) < 1e-9);
    }
    CHECK(path.max_energy_error(prof) < 1e-9);
    CHECK(path.samples.front().J == 1.0);
}

TEST_CASE("free motion in a constant medium") {
    const auto prof = constant_profile(4.0);
    const RayPath path = integrate_hamiltonian(prof, 0.3, 2.0, 3.0);
    for (const auto& s : path.samples) {
        CHECK(s.x == doctest::Approx(0.3 + 2.0 * s.t).epsilon(1e-12));
        CHECK(s.k == doctest::Approx(2.0));
        CHECK(s.J == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(s.S == doctest::Approx(4.0 * s.t).epsilon(1e-12));
    }
}

TEST_CASE("energy conservation in a curved profile") {
    const auto prof = quadratic_profile(1.0, 0.3, -0.05, Interval{-20.0, 20.0});
    const double x0 = 0.5;
    const double k0 = std::sqrt(prof.eta_squared(x0));
    const RayPath path = integrate_hamiltonian(prof, x0, k0, 6.0);
    CHECK(path.max_energy_error(prof) <= 1e-9);
    // phase along a ray equals the integral of k dx on the shell
    const auto& last = path.samples.back();
    CHECK(last.S > 0);
}

TEST_CASE("closed-form and integrated Airy rays agree on random launches") {
    const auto prof = airy_profile();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(0.5, 4.0), uu(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double x0 = ux(rng);
        const double k0 = (i % 2 ? 1.0 : -1.0) * std::sqrt(x0);
        const double t_end = 4 * std::sqrt(x0);
        const RayPath path = integrate_hamiltonian(prof, x0, k0, t_end);
        REQUIRE_FALSE(path.truncated);
        const double t = uu(rng) * t_end;
        const RaySample s = path.at(t, prof);
        const auto [xc, kc] = airy_ray_closed(t, x0, k0);
        CHECK(std::abs(s.x - xc) < 1e-8);
        CHECK(std::abs(s.k - kc) < 1e-8);
        CHECK(path.max_energy_error(prof) <= 1e-9);
        // jacobians: 1 -+ t/(2 sqrt x0)
        const double jc = 1 + k0 / std::abs(k0) * t / (2 * std::sqrt(x0));
        if (std::abs(jc) > 0.05) CHECK(std::abs(s.J - jc) / std::abs(jc) < 1e-4);
    }
}

TEST_CASE("airy_ray_closed") {
    auto [x, k] = airy_ray_closed(0.0, 1.7, -0.4);
    CHECK(x == 1.7);
    CHECK(k == -0.4);
    std::tie(x, k) = airy_ray_closed(2.0, 1.0, -1.0);
    CHECK(x == 0.0);
    CHECK(k == 0.0);
    for (double t : {0.3, 1.1, 2.5, 5.0}) {
        for (double k0 : {-std::sqrt(2.0), std::sqrt(2.0)}) {
            std::tie(x, k) = airy_ray_closed(t, 2.0, k0);
            CHECK(x == doctest::Approx(k * k).epsilon(1e-14));
        }
    }
}

TEST_CASE("airy_arrivals") {
    const auto a = airy_arrivals(1.0, 4.0);
    CHECK(a.t_minus == doctest::Approx(2.0));
    CHECK(a.t_plus == doctest::Approx(6.0));
    CHECK(a.J_minus == doctest::Approx(0.5));
    CHECK(a.J_plus == doctest::Approx(-0.5));
    const auto b = airy_arrivals(4.0 - 1e-12, 4.0);
    CHECK(b.t_minus == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(b.J_minus == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(airy_arrivals(5.0, 4.0), DomainError);
    CHECK_THROWS_AS(airy_arrivals(0.0, 4.0), DomainError);
    // arrivals reproduce the requested point on the closed-form rays
    for (double x : {0.2, 1.0, 3.5}) {
        const auto d = airy_arrivals(x, 4.0);
        CHECK(airy_ray_closed(d.t_minus, 4.0, -2.0).first == doctest::Approx(x));
        CHECK(airy_ray_closed(d.t_plus, 4.0, -2.0).first == doctest::Approx(x));
    }
}

TEST_CASE("linear layer rays and caustic") {
    const auto p = make_linear_layer(0.8, 1.5, 1.3, 0.6, 20.0);
    auto [y, z] = linear_layer_ray(0.0, 0.25, p);
    CHECK(y == 0.25);
    CHECK(z == p.h);
    CHECK(linear_layer_jacobian(0.0, p) == 1.0);

    const double zc = linear_layer_caustic_depth(p);
    const double c = p.eta0 * std::cos(p.psi);
    CHECK(zc == p.h - c * c / p.mu1);
    const double tc = linear_layer_caustic_time(p);
    CHECK(std::abs(linear_layer_jacobian(tc, p)) < 1e-15);
    CHECK(linear_layer_ray(tc, 0.0, p).second == doctest::Approx(zc).epsilon(1e-14));
    CHECK(linear_layer_jacobian(tc - 0.1, p) > 0);
    CHECK(linear_layer_jacobian(tc + 0.1, p) < 0);

    // dense scan: minimum depth is the caustic depth
    double zmin = INFINITY;
    for (int i = 0; i <= 20000; ++i) zmin = std::min(zmin, linear_layer_ray(2 * tc * i / 20000.0, 0.0, p).second);
    CHECK(zmin == doctest::Approx(zc).epsilon(1e-12));

    for (double zz : {zc + 0.01, 0.5 * (zc + p.h), p.h}) {
        const auto [tm, tp] = linear_layer_arrivals(zz, p);
        CHECK(linear_layer_ray(tm, 0.0, p).second == doctest::Approx(zz).epsilon(1e-12));
        CHECK(linear_layer_ray(tp, 0.0, p).second == doctest::Approx(zz).epsilon(1e-12));
        CHECK(tm <= tp);
    }
    CHECK_THROWS_AS(linear_layer_arrivals(zc - 0.1, p), DomainError);
    CHECK_THROWS_AS(make_linear_layer(-1.0, 1.0, 1.0, 0.5, 1.0), PreconditionError);
    CHECK_THROWS_AS(make_linear_layer(1.0, 1.0, 1.0, 2.0, 1.0), PreconditionError);
}

TEST_CASE("find_caustic") {
    const auto prof = airy_profile();
    const auto c = find_caustic(prof, 1.0, -1.0, 4.0);
    REQUIRE(c.size() == 1);
    CHECK(std::abs(c[0].t - 2.0) < 1e-6);
    CHECK(std::abs(c[0].x) < 1e-6);
    CHECK(find_caustic(prof, 1.0, 1.0, 4.0).empty());
    CHECK(find_caustic(constant_profile(2.0), 0.0, std::sqrt(2.0), 5.0).empty());
    for (double x0 : {0.5, 2.0, 3.3}) {
        const auto cc = find_caustic(prof, x0, -std::sqrt(x0), 4 * std::sqrt(x0));
        REQUIRE(cc.size() == 1);
        CHECK(std::abs(cc[0].t - 2 * std::sqrt(x0)) < 1e-6);
        CHECK(std::abs(cc[0].x) < 1e-6);
    }
}

TEST_CASE("integration preconditions and truncation") {
    const auto prof = airy_profile();
    CHECK_THROWS_AS(integrate_hamiltonian(prof, 1.0, 0.5, 1.0), PreconditionError);
    auto cut = airy_profile();
    cut.domain = Interval{0.5, INFINITY};
    const RayPath path = integrate_hamiltonian(cut, 1.0, -1.0, 4.0);
    CHECK(path.truncated);
    CHECK(path.samples.back().t < 4.0);
    CHECK(profile_consistent(prof, 0.1, 5.0));
    auto broken = prof;
    broken.eta_squared_prime = [](double) { return 2.0; };
    CHECK_FALSE(profile_consistent(broken, 0.1, 5.0));
}

TEST_CASE("ray fan CSV") {
    const auto prof = airy_profile();
    std::vector<RayPath> fan{integrate_hamiltonian(prof, 1.0, -1.0, 1.0), integrate_hamiltonian(prof, 2.0, std::sqrt(2.0), 1.0)};
    std::ostringstream os;
    write_ray_fan_csv(os, fan);
    const std::string s = os.str();
    CHECK(s.rfind("ray_id,t,x,k,J,S\n", 0) == 0);
    CHECK(s.find('\r') == std::string::npos);
    const auto lines = std::count(s.begin(), s.end(), '\n');
    CHECK(lines == 1 + static_cast<long>(fan[0].samples.size() + fan[1].samples.size()));
}
