#pragma once

#include "hillmono/floquet.hpp"
#include "hillmono/spline.hpp"

namespace hillmono {

// Kepler-side representation of a potential: the total winding theta_max
// and the radial function rho on a uniform grid over [0, theta_max].
// Invariants: rho > 0, rho(0) = 1, rho'(0) = 0, and the equal-area
// normalization  \int_0^{theta_max} rho = 2 pi  (all within 1e-6).
class Orbit {
  public:
    static Orbit from_samples(double theta_max, Eigen::VectorXd rho_samples);

    double theta_max() const { return theta_max_; }
    const Eigen::VectorXd& rho_samples() const { return rho_; }
    double rho(double theta) const { return spline_(theta); }
    const CubicSpline& spline() const { return spline_; }

  private:
    Orbit() = default;
    double theta_max_ = 0.0;
    Eigen::VectorXd rho_;
    CubicSpline spline_;
};

// Forward transform: sample rho(theta) = v1^2 + v2^2 on a uniform theta
// grid by inverting the monotone argument map of the Floquet path.
Orbit potential_to_orbit(const Potential& q, const RunConfig& cfg = default_config());

struct KeplerDiagnostics {
    double theta_end_error = 0.0;  // |theta(2 pi) - theta_max|
    double max_abs_q = 0.0;
    bool conditioning_warning = false;
};

// Inverse transform: reparametrize sqrt(rho) (cos theta, sin theta) at unit
// areal speed (theta' = 1/rho) and recover
//   q = rho''/(2 rho^3) - (3/4) rho'^2 / rho^4 - 1/rho^2
// from spline-differentiated rho, evaluated along theta(t).
Potential orbit_to_potential(const Orbit& o, int out_grid = 4096,
                             const RunConfig& cfg = default_config(),
                             KeplerDiagnostics* diag = nullptr);

}  // namespace hillmono
