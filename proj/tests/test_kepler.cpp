#include "hillmono/kepler.hpp"

#include <cmath>

#include "doctest.h"
#include "hillmono/random.hpp"

using namespace hillmono;

TEST_CASE("potential_to_orbit: closed-form orbits") {
    auto circle = potential_to_orbit(Potential::constant(-1.0));
    CHECK(circle.theta_max() == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK((circle.rho_samples().array() - 1.0).abs().maxCoeff() < 1e-10);

    auto flat = potential_to_orbit(Potential::constant(0.0));
    CHECK(flat.theta_max() == doctest::Approx(std::atan(kTwoPi)).epsilon(1e-10));
    // rho(theta) = sec^2(theta); the equal-area integral is tan(theta_max) = 2 pi
    for (double th : {0.2, 0.7, 1.3}) {
        double sec = 1.0 / std::cos(th);
        CHECK(flat.rho(th) == doctest::Approx(sec * sec).epsilon(1e-8));
    }

    auto two = potential_to_orbit(Potential::constant(-4.0));
    CHECK(two.theta_max() == doctest::Approx(2 * kTwoPi).epsilon(1e-12));
    for (double th : {0.4, 2.0, 9.0}) {
        double c = std::cos(th), s = std::sin(th);
        CHECK(two.rho(th) == doctest::Approx(1.0 / (c * c + 4 * s * s)).epsilon(1e-8));
    }
}

TEST_CASE("orbit invariants are enforced") {
    // rho == 2 has integral 4 pi over [0, 2 pi]
    CHECK_THROWS_AS(Orbit::from_samples(kTwoPi, Eigen::VectorXd::Constant(257, 2.0)),
                    std::domain_error);
    Eigen::VectorXd drift(257);
    for (int i = 0; i < 257; ++i) drift(i) = 1.0 + 0.5 * i / 256.0;  // rho'(0) != 0
    CHECK_THROWS_AS(Orbit::from_samples(kTwoPi, drift), std::domain_error);
    CHECK_THROWS_AS(Orbit::from_samples(kTwoPi, Eigen::VectorXd::Zero(257)), std::domain_error);
}

TEST_CASE("orbit_to_potential: unit circle gives q = -1") {
    auto o = Orbit::from_samples(kTwoPi, Eigen::VectorXd::Constant(2049, 1.0));
    auto q = orbit_to_potential(o);
    CHECK((q.values().array() + 1.0).abs().maxCoeff() < 1e-9);
}

TEST_CASE("orbit_to_potential: sec^2 orbit gives q = 0") {
    const int k = 2048;
    const double theta_max = std::atan(kTwoPi);
    Eigen::VectorXd rho(k + 1);
    for (int j = 0; j <= k; ++j) {
        double th = theta_max * j / k;
        rho(j) = 1.0 / (std::cos(th) * std::cos(th));
    }
    auto q = orbit_to_potential(Orbit::from_samples(theta_max, rho));
    CHECK(q.values().cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("kepler round trips on smooth potentials") {
    auto check_round_trip = [](const Potential& q) {
        KeplerDiagnostics diag;
        auto back = orbit_to_potential(potential_to_orbit(q), q.size(), default_config(), &diag);
        CHECK((back.values() - q.values()).cwiseAbs().maxCoeff() < 1e-5);
        CHECK(!diag.conditioning_warning);
        CHECK(diag.theta_end_error < 1e-6);
    };
    check_round_trip(Potential::from_function([](double t) { return std::sin(t); }, 4096, Interp::Trig));
    check_round_trip(Potential::from_function([](double t) { return -1.0 + 0.5 * std::cos(t); }, 4096,
                                              Interp::Trig));
    check_round_trip(
        Potential::from_function([](double t) { return 0.3 * std::sin(2 * t); }, 4096, Interp::Trig));
}

TEST_CASE("kepler inverse then forward reproduces the orbit") {
    Rng rng(51);
    auto q = random_trig_potential(rng, 1.0);
    auto orbit = potential_to_orbit(q);
    auto orbit2 = potential_to_orbit(orbit_to_potential(orbit));
    CHECK(orbit2.theta_max() == doctest::Approx(orbit.theta_max()).epsilon(1e-7));
    double worst = 0;
    for (int j = 0; j <= 64; ++j) {
        double th = orbit.theta_max() * j / 64.0 * 0.999;
        worst = std::max(worst, std::abs(orbit2.rho(th) - orbit.rho(th)));
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("areal speed of the reconstructed curve") {
    // reconstruct v(t) = sqrt(rho(theta(t))) (cos, sin)(theta(t)) on the
    // output grid and check v ^ v' = 1 via an independent finite
    // difference of the samples
    auto q = Potential::from_function([](double t) { return std::sin(t); }, 4096, Interp::Trig);
    auto orbit = potential_to_orbit(q);
    auto back = orbit_to_potential(orbit);
    auto path = integrate(back, default_config());
    const int m = static_cast<int>(path.times.size()) - 1;
    Eigen::VectorXd v1(m + 1), v2(m + 1);
    for (int k = 0; k <= m; ++k) {
        v1(k) = path.v1(k);
        v2(k) = path.v2(k);
    }
    double h = path.times(1) - path.times(0);
    Eigen::VectorXd d1 = fd_derivative(v1, h), d2 = fd_derivative(v2, h);
    double worst = 0;
    for (int k = 0; k <= m; ++k)
        worst = std::max(worst, std::abs(v1(k) * d2(k) - v2(k) * d1(k) - 1.0));
    CHECK(worst < 1e-7);
}
