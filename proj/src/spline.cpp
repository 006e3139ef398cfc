#include "hillmono/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace hillmono {

namespace {

// Node derivatives of the C^2 spline: tridiagonal system
// d_{i-1} + 4 d_i + d_{i+1} = 3 (y_{i+1} - y_{i-1}) / h with clamped ends.
Eigen::VectorXd solve_clamped(const Eigen::VectorXd& y, double h, double d0, double dm) {
    const int m = static_cast<int>(y.size()) - 1;
    Eigen::VectorXd d(m + 1), c(m + 1), rhs(m + 1);
    d(0) = d0;
    d(m) = dm;
    if (m < 2) return d;
    // Thomas sweep over the interior unknowns
    c(1) = 0.0;
    rhs(1) = 3.0 * (y(2) - y(0)) / h - d0;
    double diag = 4.0;
    c(1) = 1.0 / diag;
    rhs(1) /= diag;
    for (int i = 2; i <= m - 1; ++i) {
        double r = 3.0 * (y(i + 1) - y(i - 1)) / h;
        if (i == m - 1) r -= dm;
        double denom = 4.0 - c(i - 1);
        c(i) = 1.0 / denom;
        rhs(i) = (r - rhs(i - 1)) / denom;
    }
    d(m - 1) = rhs(m - 1);
    for (int i = m - 2; i >= 1; --i) d(i) = rhs(i) - c(i) * d(i + 1);
    return d;
}

}  // namespace

CubicSpline CubicSpline::clamped(double x0, double h, const Eigen::VectorXd& y,
                                 double slope_left, double slope_right) {
    if (y.size() < 2) throw std::invalid_argument("spline: need at least two nodes");
    CubicSpline s;
    s.x0_ = x0;
    s.h_ = h;
    s.y_ = y;
    s.d_ = solve_clamped(y, h, slope_left, slope_right);
    return s;
}

CubicSpline CubicSpline::with_estimated_slopes(double x0, double h, const Eigen::VectorXd& y) {
    const int m = static_cast<int>(y.size()) - 1;
    if (m < 4) throw std::invalid_argument("spline: need at least five nodes for slope estimates");
    double d0 = (-25 * y(0) + 48 * y(1) - 36 * y(2) + 16 * y(3) - 3 * y(4)) / (12 * h);
    double dm = (25 * y(m) - 48 * y(m - 1) + 36 * y(m - 2) - 16 * y(m - 3) + 3 * y(m - 4)) / (12 * h);
    return clamped(x0, h, y, d0, dm);
}

CubicSpline CubicSpline::hermite(double x0, double h, Eigen::VectorXd y, Eigen::VectorXd d) {
    if (y.size() != d.size() || y.size() < 2)
        throw std::invalid_argument("spline: mismatched Hermite data");
    CubicSpline s;
    s.x0_ = x0;
    s.h_ = h;
    s.y_ = std::move(y);
    s.d_ = std::move(d);
    return s;
}

int CubicSpline::cell(double x) const {
    int i = static_cast<int>(std::floor((x - x0_) / h_));
    return std::clamp(i, 0, static_cast<int>(y_.size()) - 2);
}

double CubicSpline::operator()(double x) const {
    int i = cell(x);
    double s = (x - x0_) / h_ - i;
    double s2 = s * s, s3 = s2 * s;
    return y_(i) * (2 * s3 - 3 * s2 + 1) + y_(i + 1) * (-2 * s3 + 3 * s2) +
           h_ * d_(i) * (s3 - 2 * s2 + s) + h_ * d_(i + 1) * (s3 - s2);
}

double CubicSpline::derivative(double x) const {
    int i = cell(x);
    double s = (x - x0_) / h_ - i;
    double s2 = s * s;
    return (y_(i) * (6 * s2 - 6 * s) + y_(i + 1) * (-6 * s2 + 6 * s)) / h_ +
           d_(i) * (3 * s2 - 4 * s + 1) + d_(i + 1) * (3 * s2 - 2 * s);
}

double CubicSpline::second_derivative(double x) const {
    int i = cell(x);
    double s = (x - x0_) / h_ - i;
    return (y_(i) * (12 * s - 6) + y_(i + 1) * (-12 * s + 6)) / (h_ * h_) +
           (d_(i) * (6 * s - 4) + d_(i + 1) * (6 * s - 2)) / h_;
}

double CubicSpline::integral() const {
    const int m = static_cast<int>(y_.size()) - 1;
    double acc = 0.0;
    for (int i = 0; i < m; ++i)
        acc += 0.5 * (y_(i) + y_(i + 1)) + h_ * (d_(i) - d_(i + 1)) / 12.0;
    return acc * h_;
}

Eigen::VectorXd fd_derivative(const Eigen::VectorXd& y, double h) {
    const int m = static_cast<int>(y.size()) - 1;
    if (m < 5) throw std::invalid_argument("fd_derivative: need at least six nodes");
    Eigen::VectorXd d(m + 1);
    d(0) = (-25 * y(0) + 48 * y(1) - 36 * y(2) + 16 * y(3) - 3 * y(4)) / (12 * h);
    d(1) = (-3 * y(0) - 10 * y(1) + 18 * y(2) - 6 * y(3) + y(4)) / (12 * h);
    for (int i = 2; i <= m - 2; ++i)
        d(i) = (y(i - 2) - 8 * y(i - 1) + 8 * y(i + 1) - y(i + 2)) / (12 * h);
    d(m - 1) = (3 * y(m) + 10 * y(m - 1) - 18 * y(m - 2) + 6 * y(m - 3) - y(m - 4)) / (12 * h);
    d(m) = (25 * y(m) - 48 * y(m - 1) + 36 * y(m - 2) - 16 * y(m - 3) + 3 * y(m - 4)) / (12 * h);
    return d;
}

Eigen::VectorXd fd_second_derivative(const Eigen::VectorXd& y, double h) {
    const int m = static_cast<int>(y.size()) - 1;
    if (m < 5) throw std::invalid_argument("fd_second_derivative: need at least six nodes");
    Eigen::VectorXd d(m + 1);
    const double h2 = h * h;
    d(0) = (45 * y(0) - 154 * y(1) + 214 * y(2) - 156 * y(3) + 61 * y(4) - 10 * y(5)) / (12 * h2);
    d(1) = (10 * y(0) - 15 * y(1) - 4 * y(2) + 14 * y(3) - 6 * y(4) + y(5)) / (12 * h2);
    for (int i = 2; i <= m - 2; ++i)
        d(i) = (-y(i - 2) + 16 * y(i - 1) - 30 * y(i) + 16 * y(i + 1) - y(i + 2)) / (12 * h2);
    d(m - 1) =
        (10 * y(m) - 15 * y(m - 1) - 4 * y(m - 2) + 14 * y(m - 3) - 6 * y(m - 4) + y(m - 5)) / (12 * h2);
    d(m) = (45 * y(m) - 154 * y(m - 1) + 214 * y(m - 2) - 156 * y(m - 3) + 61 * y(m - 4) -
            10 * y(m - 5)) /
           (12 * h2);
    return d;
}

}  // namespace hillmono
