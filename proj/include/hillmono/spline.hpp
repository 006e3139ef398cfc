#pragma once

#include <Eigen/Dense>

namespace hillmono {

// C^2 cubic spline on a uniform grid x0 + i*h, i = 0..m, stored in Hermite
// form (values + node derivatives).  Evaluation outside the grid continues
// the boundary cubics.
class CubicSpline {
  public:
    CubicSpline() = default;

    // Clamped spline with prescribed end slopes.
    static CubicSpline clamped(double x0, double h, const Eigen::VectorXd& y,
                               double slope_left, double slope_right);
    // Clamped spline with 4th-order one-sided end-slope estimates.
    static CubicSpline with_estimated_slopes(double x0, double h, const Eigen::VectorXd& y);
    // Hermite interpolant through prescribed node derivatives (no solve).
    static CubicSpline hermite(double x0, double h, Eigen::VectorXd y, Eigen::VectorXd d);

    double operator()(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
    double integral() const;  // over the full grid

    double x_min() const { return x0_; }
    double x_max() const { return x0_ + h_ * static_cast<double>(y_.size() - 1); }

  private:
    int cell(double x) const;

    double x0_ = 0.0, h_ = 1.0;
    Eigen::VectorXd y_, d_;
};

// 4th-order finite-difference derivative tables on a uniform grid
// (centered stencils inside, one-sided at the edges).
Eigen::VectorXd fd_derivative(const Eigen::VectorXd& y, double h);
Eigen::VectorXd fd_second_derivative(const Eigen::VectorXd& y, double h);

}  // namespace hillmono
