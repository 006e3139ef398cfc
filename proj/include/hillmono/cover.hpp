#pragma once

#include <Eigen/Dense>

#include "hillmono/config.hpp"

namespace hillmono {

using Matrix2d = Eigen::Matrix2d;
using Vector2d = Eigen::Vector2d;
using Vector3d = Eigen::Vector3d;

// Element of G, the universal cover of SL(2,R).  Stores the projected
// matrix together with the global Iwasawa coordinates (theta, rho, nu):
//
//   Pi(g) = [ sqrt(rho)         0       ] [  cos th  sin th ]
//           [ nu/(2 sqrt(rho))  1/sqrt(rho) ] [ -sin th  cos th ]
//
// so the first row of Pi(g) is sqrt(rho) * (cos theta, sin theta) and
// theta carries the winding of the lift.  For the lifted fundamental
// matrix of v'' = q v this makes theta the continuous argument of the
// solution curve (v1, v2) and rho = v1^2 + v2^2.
class LiftedMatrix {
  public:
    LiftedMatrix() : LiftedMatrix(identity()) {}

    static LiftedMatrix identity();
    // Build from Iwasawa coordinates; rho must be positive.
    static LiftedMatrix from_iwasawa(double theta, double rho, double nu);
    // Build from a det-1 matrix (renormalized), picking the theta branch
    // nearest to winding_hint.  Throws if the hint is ambiguous (nearest
    // branch farther than pi/2 away).
    static LiftedMatrix from_matrix(const Matrix2d& m, double winding_hint);

    const Matrix2d& matrix() const { return m_; }
    double theta() const { return theta_; }
    double rho() const { return rho_; }
    double nu() const { return nu_; }
    double trace() const { return m_(0, 0) + m_(1, 1); }

  private:
    LiftedMatrix(const Matrix2d& m, double theta, double rho, double nu)
        : m_(m), theta_(theta), rho_(rho), nu_(nu) {}

    Matrix2d m_;
    double theta_;
    double rho_;
    double nu_;
};

// Left-trivialized tangent vector g*M with M in sl(2,R).  The traceless
// body is stored as three parameters so trace(M) = 0 holds exactly.
class TangentVector {
  public:
    TangentVector() : a11_(0), a12_(0), a21_(0) {}
    TangentVector(double a11, double a12, double a21, LiftedMatrix base)
        : a11_(a11), a12_(a12), a21_(a21), base_(std::move(base)) {}
    // Drops the trace of m (callers pass traceless matrices).
    TangentVector(const Matrix2d& m, LiftedMatrix base)
        : a11_(m(0, 0)), a12_(m(0, 1)), a21_(m(1, 0)), base_(std::move(base)) {}

    Matrix2d body() const {
        Matrix2d a;
        a << a11_, a12_, a21_, -a11_;
        return a;
    }
    const LiftedMatrix& base() const { return base_; }
    // Coordinates in the sl(2) basis {N_0 shear, symmetric diag, rotation}:
    // M = x*[[0,0],[1,0]] + y*[[1,0],[0,-1]] + z*[[0,1],[-1,0]].
    Vector3d coords() const { return Vector3d(a21_ + a12_, a11_, a12_); }
    double frobenius_norm() const;

  private:
    double a11_, a12_, a21_;
    LiftedMatrix base_;
};

// Iwasawa coordinate maps.  borel(rho, nu) is the lower-triangular factor.
Matrix2d borel(double rho, double nu);
Matrix2d rotation(double theta);
LiftedMatrix iwasawa_compose(double theta, double rho, double nu);
LiftedMatrix iwasawa_decompose(const Matrix2d& m, double winding_hint);

// Group law on the cover.  Windings are tracked exactly through the
// commutation identity r(th) b = b' r(th') on the Borel factor; no path
// subdivision is needed.
LiftedMatrix compose(const LiftedMatrix& g, const LiftedMatrix& h);
LiftedMatrix inverse(const LiftedMatrix& g);

// N_omega = [[-sin w cos w, -sin^2 w], [cos^2 w, sin w cos w]]; the family
// traces out the circle a21 - a12 = 1 of nilpotent directions.
Matrix2d n_omega(double omega);

// Closed-form sl(2) exponential with winding, and its inverse on the ball
// B_eps (Frobenius radius eps_lie, |theta| < pi).  log_lifted throws
// std::range_error outside the ball.
LiftedMatrix exp_lifted(const Matrix2d& v);
Matrix2d log_lifted(const LiftedMatrix& g, double eps_lie = default_config().eps_lie);

bool in_ball(const LiftedMatrix& g, double eps_lie = default_config().eps_lie);

// Frobenius distance in the Lie algebra between g and h, i.e.
// ||log(g h^-1)||_F; +infinity when the quotient leaves B_eps.
double group_distance(const LiftedMatrix& g, const LiftedMatrix& h,
                      double eps_lie = default_config().eps_lie);

struct MembershipFlags {
    bool in_G0 = false;  // theta > 0: image of the monodromy map
    bool in_T2 = false;  // trace(Pi(g)) = 2
    bool in_Z2 = false;  // Pi(g) = I with theta = 2 pi n, n >= 1
    int vertex_index = 0;
};

MembershipFlags membership(const LiftedMatrix& g,
                           const RunConfig& cfg = default_config());

}  // namespace hillmono
