#include "hillmono/cover.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hillmono {

namespace {

double frob(const Matrix2d& a) { return std::sqrt((a.array() * a.array()).sum()); }

Matrix2d renormalized(const Matrix2d& m) {
    double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (!(det > 0.0)) throw std::domain_error("lifted matrix: determinant must be positive");
    // The evaluated det of a matrix with entries of size s carries
    // cancellation noise ~ s^2 eps; rescaling by sqrt(det) inside that
    // noise floor would corrupt large elements instead of cleaning them.
    double s = m.cwiseAbs().maxCoeff();
    double noise = 64.0 * 2.3e-16 * std::max(1.0, s * s);
    if (std::abs(det - 1.0) <= noise) return m;
    return m / std::sqrt(det);
}

// Winding of the rewrite r(alpha) b = b' r(psi) for b in the Borel factor:
// psi is the increasing lift with psi(0) = 0, computed branch-exactly from
// the first row (cos a, sin a) * b.
double crossing_theta(double alpha, const Matrix2d& b) {
    double k = std::floor(alpha / kTwoPi);
    double phi = alpha - kTwoPi * k;
    double ux = std::cos(phi) * b(0, 0) + std::sin(phi) * b(1, 0);
    double uy = std::sin(phi) * b(1, 1);
    double psi = std::atan2(uy, ux);
    if (psi < 0) psi += kTwoPi;
    return kTwoPi * k + psi;
}

}  // namespace

double TangentVector::frobenius_norm() const {
    return std::sqrt(2 * a11_ * a11_ + a12_ * a12_ + a21_ * a21_);
}

Matrix2d borel(double rho, double nu) {
    double s = std::sqrt(rho);
    Matrix2d b;
    b << s, 0.0, nu / (2.0 * s), 1.0 / s;
    return b;
}

Matrix2d rotation(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    Matrix2d r;
    r << c, s, -s, c;
    return r;
}

LiftedMatrix LiftedMatrix::identity() {
    return LiftedMatrix(Matrix2d::Identity(), 0.0, 1.0, 0.0);
}

LiftedMatrix LiftedMatrix::from_iwasawa(double theta, double rho, double nu) {
    if (!(rho > 0.0)) throw std::domain_error("iwasawa_compose: rho must be positive");
    Matrix2d m = borel(rho, nu) * rotation(theta);
    return LiftedMatrix(m, theta, rho, nu);
}

LiftedMatrix LiftedMatrix::from_matrix(const Matrix2d& m_in, double winding_hint) {
    Matrix2d m = renormalized(m_in);
    double rho = m(0, 0) * m(0, 0) + m(0, 1) * m(0, 1);
    double theta0 = std::atan2(m(0, 1), m(0, 0));
    double theta = theta0 + kTwoPi * std::round((winding_hint - theta0) / kTwoPi);
    if (std::abs(theta - winding_hint) > kPi / 2 + 1e-9) {
        std::ostringstream os;
        os << "iwasawa_decompose: winding hint " << winding_hint
           << " is ambiguous (nearest branch " << theta << ")";
        throw std::domain_error(os.str());
    }
    double c = std::cos(theta), s = std::sin(theta);
    double nu = 2.0 * std::sqrt(rho) * (m(1, 0) * c + m(1, 1) * s);
    return LiftedMatrix(m, theta, rho, nu);
}

LiftedMatrix iwasawa_compose(double theta, double rho, double nu) {
    return LiftedMatrix::from_iwasawa(theta, rho, nu);
}

LiftedMatrix iwasawa_decompose(const Matrix2d& m, double winding_hint) {
    return LiftedMatrix::from_matrix(m, winding_hint);
}

LiftedMatrix compose(const LiftedMatrix& g, const LiftedMatrix& h) {
    double theta_cross = crossing_theta(g.theta(), borel(h.rho(), h.nu()));
    double theta = theta_cross + h.theta();
    return LiftedMatrix::from_matrix(g.matrix() * h.matrix(), theta);
}

LiftedMatrix inverse(const LiftedMatrix& g) {
    const Matrix2d& m = g.matrix();
    Matrix2d minv;
    minv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    Matrix2d binv = borel(g.rho(), g.nu()).inverse();
    double theta = crossing_theta(-g.theta(), binv);
    return LiftedMatrix::from_matrix(minv, theta);
}

Matrix2d n_omega(double omega) {
    double s = std::sin(omega), c = std::cos(omega);
    Matrix2d n;
    n << -s * c, -s * s, c * c, s * c;
    return n;
}

LiftedMatrix exp_lifted(const Matrix2d& v) {
    double a = v(0, 0), b = v(0, 1), c = v(1, 0);
    double disc = a * a + b * c;  // -det(v)
    Matrix2d body;
    body << a, b, c, -a;
    double cw, sw;  // cos-like and sinc-like factors
    double w = 0.0;
    if (disc > 0) {
        double s = std::sqrt(disc);
        cw = std::cosh(s);
        sw = std::sinh(s) / s;
    } else if (disc < 0) {
        w = std::sqrt(-disc);
        cw = std::cos(w);
        sw = std::sin(w) / w;
    } else {
        cw = 1.0;
        sw = 1.0;
    }
    Matrix2d m = cw * Matrix2d::Identity() + sw * body;
    // Winding along s -> exp(s v): the first row is
    // (cw(s) + a sw(s), b sw(s)); its second component vanishes only at
    // w s in pi Z, so the argument crosses the axis floor(w/pi) times,
    // each crossing contributing pi with the sign of b.
    double theta;
    if (disc < 0 && w >= kPi) {
        double sign = (b > 0) ? 1.0 : -1.0;
        double base = sign * kPi * std::floor(w / kPi);
        theta = base + std::remainder(std::atan2(m(0, 1), m(0, 0)) - base, kTwoPi);
    } else {
        theta = std::atan2(m(0, 1), m(0, 0));
    }
    return LiftedMatrix::from_matrix(m, theta);
}

Matrix2d log_lifted(const LiftedMatrix& g, double eps_lie) {
    if (!(std::abs(g.theta()) < kPi))
        throw std::range_error("log_lifted: winding outside (-pi, pi)");
    const Matrix2d& m = g.matrix();
    double tau = 0.5 * g.trace();
    Matrix2d dev = m - tau * Matrix2d::Identity();
    Matrix2d v;
    if (tau > 1.0) {
        double s = std::acosh(tau);
        v = dev * (s / std::sinh(s));
    } else if (tau < 1.0) {
        if (tau <= -1.0) throw std::range_error("log_lifted: trace <= -2, outside exp image");
        double w = std::acos(tau);
        double sw = std::sin(w);
        if (sw < 1e-300) throw std::range_error("log_lifted: conjugate to -I, no principal log");
        v = dev * (w / sw);
    } else {
        v = dev;
    }
    double norm = std::sqrt(2 * v(0, 0) * v(0, 0) + v(0, 1) * v(0, 1) + v(1, 0) * v(1, 0));
    if (!(norm < eps_lie)) throw std::range_error("log_lifted: element outside B_eps");
    v(1, 1) = -v(0, 0);
    return v;
}

bool in_ball(const LiftedMatrix& g, double eps_lie) {
    try {
        (void)log_lifted(g, eps_lie);
        return true;
    } catch (const std::range_error&) {
        return false;
    }
}

double group_distance(const LiftedMatrix& g, const LiftedMatrix& h, double eps_lie) {
    try {
        Matrix2d v = log_lifted(compose(g, inverse(h)), eps_lie);
        return frob(v);
    } catch (const std::range_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

MembershipFlags membership(const LiftedMatrix& g, const RunConfig& cfg) {
    MembershipFlags f;
    f.in_G0 = g.theta() > 0.0 && g.rho() > 0.0;
    double tr = g.trace();
    f.in_T2 = std::abs(tr - 2.0) <= cfg.tol_trace * std::max(1.0, std::abs(tr));
    double dev = (g.matrix() - Matrix2d::Identity()).cwiseAbs().maxCoeff();
    if (dev <= cfg.tol_vertex) {
        double n = std::round(g.theta() / kTwoPi);
        if (n >= 1.0 && std::abs(g.theta() - kTwoPi * n) <= cfg.tol_vertex_theta) {
            f.in_Z2 = true;
            f.vertex_index = static_cast<int>(n);
        }
    }
    return f;
}

}  // namespace hillmono
