#include "hillmono/kepler.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hillmono/monodromy.hpp"

namespace hillmono {

namespace {

// Quintic Hermite with values, first and second derivatives at both ends
// of [x0, x0+L], evaluated at s = (x - x0)/L.
double quintic(double s, double L, double y0, double m0, double c0, double y1, double m1,
               double c1) {
    double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    double a0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    double a1 = s - 6 * s3 + 8 * s4 - 3 * s5;
    double a2 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
    double b0 = 10 * s3 - 15 * s4 + 6 * s5;
    double b1 = -4 * s3 + 7 * s4 - 3 * s5;
    double b2 = 0.5 * (s3 - 2 * s4 + s5);
    return y0 * a0 + m0 * L * a1 + c0 * L * L * a2 + y1 * b0 + m1 * L * b1 + c1 * L * L * b2;
}

}  // namespace

Orbit Orbit::from_samples(double theta_max, Eigen::VectorXd rho_samples) {
    if (!(theta_max > 0)) throw std::domain_error("orbit: theta_max must be positive");
    if (rho_samples.size() < 8) throw std::domain_error("orbit: too few samples");
    if (!(rho_samples.minCoeff() > 0)) throw std::domain_error("orbit: rho must stay positive");
    const int k = static_cast<int>(rho_samples.size()) - 1;
    Orbit o;
    o.theta_max_ = theta_max;
    o.rho_ = std::move(rho_samples);
    o.spline_ = CubicSpline::with_estimated_slopes(0.0, theta_max / k, o.rho_);

    if (std::abs(o.rho_(0) - 1.0) > 1e-6) throw std::domain_error("orbit: rho(0) must be 1");
    if (std::abs(o.spline_.derivative(0.0)) > 1e-6)
        throw std::domain_error("orbit: rho'(0) must vanish");
    double area = o.spline_.integral();
    if (std::abs(area - kTwoPi) > 1e-6) {
        std::ostringstream os;
        os << "orbit: equal-area normalization violated, integral = " << area;
        throw std::domain_error(os.str());
    }
    return o;
}

Orbit potential_to_orbit(const Potential& q, const RunConfig& cfg) {
    // 4x the advance-bound step count: orbit accuracy needs more than
    // branch tracking, especially where the solution curve passes close
    // to the origin and theta moves fast.
    auto path = integrate(q, 4 * required_steps(q, cfg));
    const int m = static_cast<int>(path.times.size()) - 1;
    const double theta_max = path.theta_max();

    for (int i = 0; i < m; ++i)
        if (!(path.theta(i + 1) > path.theta(i)))
            throw std::runtime_error("potential_to_orbit: theta grid stalls, orbit ill-conditioned");

    // Work on w = 1/rho as a function of theta: w stays smooth on O(1)
    // angular scales with moderate derivatives, unlike rho itself.  At the
    // nodes w, dw/dtheta and d2w/dtheta2 are exact in terms of the
    // fundamental solutions and q.
    Eigen::VectorXd w(m + 1), w1(m + 1), w2(m + 1);
    for (int i = 0; i <= m; ++i) {
        double rho = path.rho(i);
        double rdot = 2.0 * (path.v1(i) * path.v1p(i) + path.v2(i) * path.v2p(i));
        double speed2 = path.v1p(i) * path.v1p(i) + path.v2p(i) * path.v2p(i);
        double rddot = 2.0 * q(path.times(i)) * rho + 2.0 * speed2;
        w(i) = 1.0 / rho;
        w1(i) = -rdot / rho;
        w2(i) = -rddot + rdot * rdot / rho;
    }

    // The radial profile varies on the angular scale 1/|d rho/dt| (spikes
    // of rho(theta) are narrow in theta); the uniform grid must resolve
    // the sharpest one well enough for the inverse transform to
    // differentiate through it.
    double max_rdot = 0.0;
    for (int i = 0; i <= m; ++i)
        max_rdot = std::max(max_rdot,
                            std::abs(2.0 * (path.v1(i) * path.v1p(i) + path.v2(i) * path.v2p(i))));
    int k = cfg.orbit_samples;
    while (k < (1 << 17) && k < 64.0 * theta_max * max_rdot) k *= 2;
    Eigen::VectorXd rho(k + 1);
    rho(0) = 1.0;
    int cell = 0;
    for (int j = 1; j <= k; ++j) {
        double target = theta_max * j / k;
        while (cell < m - 1 && path.theta(cell + 1) < target) ++cell;
        double dth = path.theta(cell + 1) - path.theta(cell);
        double s = (target - path.theta(cell)) / dth;
        double wj = quintic(s, dth, w(cell), w1(cell), w2(cell), w(cell + 1), w1(cell + 1),
                            w2(cell + 1));
        rho(j) = 1.0 / wj;
    }
    return Orbit::from_samples(theta_max, std::move(rho));
}

Potential orbit_to_potential(const Orbit& o, int out_grid, const RunConfig& cfg,
                             KeplerDiagnostics* diag) {
    (void)cfg;
    const int k = static_cast<int>(o.rho_samples().size()) - 1;
    const double htheta = o.theta_max() / k;

    // Differentiate w = 1/rho rather than rho: the recovered potential is
    // polynomial in (w, w', w''),
    //   q = (w'^2 - 2 w w'' - 4 w^2) / 4,
    // so no cancellation-prone divisions by small rho powers appear.
    Eigen::VectorXd w = o.rho_samples().cwiseInverse();
    CubicSpline w_spline = CubicSpline::with_estimated_slopes(0.0, htheta, w);
    CubicSpline w1 = CubicSpline::with_estimated_slopes(0.0, htheta, fd_derivative(w, htheta));
    CubicSpline w2 =
        CubicSpline::with_estimated_slopes(0.0, htheta, fd_second_derivative(w, htheta));

    // theta' = w(theta), theta(0) = 0, by RK4 with substeps
    const int substeps = 4;
    const double h = kTwoPi / out_grid / substeps;
    Eigen::VectorXd qsamp(out_grid);
    double theta = 0.0;
    double max_q = 0.0;
    for (int j = 0; j < out_grid; ++j) {
        double wv = w_spline(theta), d1 = w1(theta), d2 = w2(theta);
        double q = 0.25 * (d1 * d1 - 2.0 * wv * d2 - 4.0 * wv * wv);
        qsamp(j) = q;
        max_q = std::max(max_q, std::abs(q));
        for (int s = 0; s < substeps; ++s) {
            double k1 = w_spline(theta);
            double k2 = w_spline(theta + 0.5 * h * k1);
            double k3 = w_spline(theta + 0.5 * h * k2);
            double k4 = w_spline(theta + h * k3);
            theta += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        }
    }
    double end_error = std::abs(theta - o.theta_max());
    if (diag) {
        diag->theta_end_error = end_error;
        diag->max_abs_q = max_q;
        diag->conditioning_warning = max_q > 1e4;
    }
    if (end_error > 1e-6) {
        std::ostringstream os;
        os << "orbit_to_potential: equal-area reparametrization missed theta_max by " << end_error;
        throw std::runtime_error(os.str());
    }
    return Potential::from_samples(std::move(qsamp), Interp::Trig);
}

}  // namespace hillmono
