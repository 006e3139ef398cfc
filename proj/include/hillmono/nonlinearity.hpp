#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hillmono/config.hpp"

namespace hillmono {

// Dense polynomial, coefficients in ascending degree.
class Polynomial {
  public:
    Polynomial() : coeffs_(Eigen::VectorXd::Zero(1)) {}
    explicit Polynomial(Eigen::VectorXd coeffs);

    double operator()(double x) const;  // Horner
    Polynomial derivative() const;
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    // Sum |c_k| |x|^k, the natural magnitude scale at x.
    double magnitude(double x) const;

  private:
    Eigen::VectorXd coeffs_;
};

// All real roots, found by recursing on the derivative and bisecting the
// monotone pieces; even-order touch roots are picked up at critical
// points where |p| falls below the evaluation noise scale.
std::vector<double> real_roots(const Polynomial& p);

// Polynomial nonlinearity f with exact derivative coefficient arrays.
class Nonlinearity {
  public:
    explicit Nonlinearity(Eigen::VectorXd f_coeffs);
    static Nonlinearity linear_case() {  // f(x) = x^2/2, so f'(x) = x
        Eigen::Vector3d c(0.0, 0.0, 0.5);
        return Nonlinearity(c);
    }
    static Nonlinearity from_fprime(const Eigen::VectorXd& fprime_coeffs);

    double f(double x) const { return f_(x); }
    double fprime(double x) const { return d1_(x); }
    double fsecond(double x) const { return d2_(x); }
    double fthird(double x) const { return d3_(x); }

    const Polynomial& poly() const { return f_; }
    const Polynomial& fprime_poly() const { return d1_; }
    const Polynomial& fsecond_poly() const { return d2_; }
    const Polynomial& fthird_poly() const { return d3_; }

  private:
    Polynomial f_, d1_, d2_, d3_;
};

struct Witness {
    double x0;
    int n;
    double fsecond;
    double fthird;
};

struct AdmissibilityReport {
    bool surjective_fprime = false;
    bool nowhere_flat = false;
    bool admissible = false;
    bool good = false;
    std::vector<Witness> witnesses;  // all real solutions of f'(x0) = -n^2
};

// Decides the genericity conditions exactly for polynomials: f' surjective
// iff its degree is odd, nowhere flat iff nonconstant, and each witness
// x0 with f'(x0) = -n^2, 0 <= n <= n_max, must have (f'', f''') != (0, 0);
// good additionally needs f'' != 0 there.
AdmissibilityReport check_admissible(const Nonlinearity& f, int n_max);

enum class BranchSelection { Smallest, NearestTo };

// Piecewise smooth right inverse of f': for every y, f'(apply(y)) = y.
// The branch table is deterministic; discontinuities sit among the
// critical values of f' (the breakpoints).
class RightInverse {
  public:
    struct Branch {
        double lo, hi;  // domain interval of a monotone piece (+-inf at ends)
        bool increasing;
    };

    double operator()(double y) const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<Branch>& branches() const { return branches_; }

  private:
    friend RightInverse right_inverse(const Nonlinearity&, BranchSelection, double);

    double solve_on_branch(const Branch& br, double y) const;

    Polynomial fprime_, fsecond_;
    std::vector<double> breakpoints_;
    std::vector<Branch> branches_;
    BranchSelection selection_ = BranchSelection::Smallest;
    double x_ref_ = 0.0;
};

RightInverse right_inverse(const Nonlinearity& f,
                           BranchSelection sel = BranchSelection::Smallest,
                           double x_ref = 0.0);

}  // namespace hillmono
