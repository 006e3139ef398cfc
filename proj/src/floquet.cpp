#include "hillmono/floquet.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hillmono {

namespace {

// Closed-form exponential of a traceless 2x2 matrix.
Matrix2d exp_traceless(const Matrix2d& v) {
    double disc = v(0, 0) * v(0, 0) + v(0, 1) * v(1, 0);
    double cw, sw;
    if (disc > 0) {
        double s = std::sqrt(disc);
        cw = std::cosh(s);
        sw = std::sinh(s) / s;
    } else if (disc < 0) {
        double w = std::sqrt(-disc);
        cw = std::cos(w);
        sw = std::sin(w) / w;
    } else {
        cw = 1.0;
        sw = 1.0;
    }
    return cw * Matrix2d::Identity() + sw * v;
}

struct StepState {
    Matrix2d y = Matrix2d::Identity();
    double theta = 0.0;
    double theta_comp = 0.0;  // Kahan carry for the theta sum

    // One CF4 step over [t, t+h]; returns the theta advance.
    double advance(const Potential& q, double t, double h) {
        static const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
        static const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
        static const double w1 = 0.25 - std::sqrt(3.0) / 6.0;
        static const double w2 = 0.25 + std::sqrt(3.0) / 6.0;
        double q1 = q(t + c1 * h), q2 = q(t + c2 * h);
        Matrix2d b_first, b_second;
        b_first << 0, h * (w2 + w1), h * (w2 * q1 + w1 * q2), 0;
        b_second << 0, h * (w1 + w2), h * (w1 * q1 + w2 * q2), 0;
        Matrix2d e = exp_traceless(b_second) * exp_traceless(b_first);
        e /= std::sqrt(e.determinant());

        // theta advance from the step matrix alone: with u the first row of
        // y and u' the second, u ^ (e11 u + e12 u') = e12 det(y) = e12, so
        // the wedge has no cancellation even when ||u|| is huge.
        double rho = y(0, 0) * y(0, 0) + y(0, 1) * y(0, 1);
        double dot = y(0, 0) * y(1, 0) + y(0, 1) * y(1, 1);
        double dtheta = std::atan2(e(0, 1), e(0, 0) * rho + e(0, 1) * dot);

        // det(y) stays at 1 + O(eps) structurally since each factor is
        // renormalized while still near the identity; rescaling y itself
        // would only add det-measurement noise at large amplitudes.
        y = e * y;

        double add = dtheta - theta_comp;
        double next = theta + add;
        theta_comp = (next - theta) - add;
        theta = next;
        return dtheta;
    }
};

int steps_for_interval(const Potential& q, double length, const RunConfig& cfg) {
    double sup = q.sup_norm();
    int steps = std::max(2, static_cast<int>(std::lround(
                                 std::ceil(cfg.steps * length / kTwoPi / 2.0) * 2)));
    if (sup > 0) {
        double hmax = 0.25 / std::sqrt(sup);
        while (length / steps >= hmax) steps *= 2;
    }
    return steps;
}

}  // namespace

double FloquetPath::theta_at(double t) const {
    const int m = static_cast<int>(times.size()) - 1;
    double h = times(1) - times(0);
    int i = std::clamp(static_cast<int>(std::floor((t - times(0)) / h)), 0, m - 1);
    double s = (t - times(i)) / h;
    double s2 = s * s, s3 = s2 * s;
    double d0 = 1.0 / rho(i), d1 = 1.0 / rho(i + 1);
    return theta(i) * (2 * s3 - 3 * s2 + 1) + theta(i + 1) * (-2 * s3 + 3 * s2) +
           h * d0 * (s3 - 2 * s2 + s) + h * d1 * (s3 - s2);
}

double FloquetPath::rho_at(double t) const {
    const int m = static_cast<int>(times.size()) - 1;
    double h = times(1) - times(0);
    int i = std::clamp(static_cast<int>(std::floor((t - times(0)) / h)), 0, m - 1);
    double s = (t - times(i)) / h;
    double s2 = s * s, s3 = s2 * s;
    auto drho = [this](int k) { return 2.0 * (v1(k) * v1p(k) + v2(k) * v2p(k)); };
    return rho(i) * (2 * s3 - 3 * s2 + 1) + rho(i + 1) * (-2 * s3 + 3 * s2) +
           h * drho(i) * (s3 - 2 * s2 + s) + h * drho(i + 1) * (s3 - s2);
}

int required_steps(const Potential& q, const RunConfig& cfg) {
    return steps_for_interval(q, kTwoPi, cfg);
}

FloquetPath integrate(const Potential& q, int steps) {
    double sup = q.sup_norm();
    if (sup > 0 && kTwoPi / steps >= 0.25 / std::sqrt(sup)) {
        std::ostringstream os;
        os << "integrate: " << steps << " steps violate h < (1/4)|q|^{-1/2}; need >= "
           << steps_for_interval(q, kTwoPi, default_config());
        throw std::invalid_argument(os.str());
    }
    FloquetPath path;
    path.times.resize(steps + 1);
    path.theta.resize(steps + 1);
    path.rho.resize(steps + 1);
    path.mats.reserve(steps + 1);
    path.mats.push_back(LiftedMatrix::identity());
    path.times(0) = 0.0;
    path.theta(0) = 0.0;
    path.rho(0) = 1.0;

    StepState st;
    const double h = kTwoPi / steps;
    for (int k = 0; k < steps; ++k) {
        double dtheta = st.advance(q, h * k, h);
        if (!(dtheta < kPi))
            throw std::runtime_error("integrate: theta advance reached pi within one step");
        path.times(k + 1) = h * (k + 1);
        path.theta(k + 1) = st.theta;
        path.rho(k + 1) = st.y(0, 0) * st.y(0, 0) + st.y(0, 1) * st.y(0, 1);
        path.mats.push_back(LiftedMatrix::from_matrix(st.y, st.theta));
    }
    return path;
}

LiftedMatrix t_variation(const Potential& q, double t_minus, double t_plus, const RunConfig& cfg) {
    if (t_minus > t_plus || t_minus < 0.0 || t_plus > kTwoPi)
        throw std::domain_error("t_variation: need 0 <= t_minus <= t_plus <= 2 pi");
    if (t_minus == t_plus) return LiftedMatrix::identity();
    const double length = t_plus - t_minus;
    const int steps = steps_for_interval(q, length, cfg);
    const double h = length / steps;
    StepState st;
    for (int k = 0; k < steps; ++k) st.advance(q, t_minus + h * k, h);
    return LiftedMatrix::from_matrix(st.y, st.theta);
}

bool argument_advance_bound_check(const Potential& q, double t_minus, double t_plus,
                                  const RunConfig& cfg) {
    FloquetPath path = integrate(q, cfg);
    double advance = path.theta_at(t_plus) - path.theta_at(t_minus);
    return advance > 0.0 && advance < kPi;
}

}  // namespace hillmono
