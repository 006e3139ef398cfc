#include "hillmono/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hillmono {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Safeguarded Newton inside a sign-changing bracket.
double polish_root(const Polynomial& p, const Polynomial& dp, double a, double b) {
    double fa = p(a), fb = p(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double x = 0.5 * (a + b);
    for (int it = 0; it < 120; ++it) {
        double fx = p(x);
        if (fx == 0.0) return x;
        if ((fx > 0) == (fa > 0)) {
            a = x;
        } else {
            b = x;
        }
        double d = dp(x);
        double step = d != 0.0 ? fx / d : 0.0;
        double xn = x - step;
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
        if (std::abs(xn - x) < 1e-15 * (1.0 + std::abs(x))) return xn;
        x = xn;
    }
    return x;
}

}  // namespace

Polynomial::Polynomial(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) {
    int d = static_cast<int>(coeffs_.size()) - 1;
    while (d > 0 && coeffs_(d) == 0.0) --d;
    coeffs_.conservativeResize(d + 1);
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) acc = acc * x + coeffs_(k);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial(Eigen::VectorXd::Zero(1));
    Eigen::VectorXd d(degree());
    for (int k = 1; k <= degree(); ++k) d(k - 1) = k * coeffs_(k);
    return Polynomial(std::move(d));
}

double Polynomial::magnitude(double x) const {
    double acc = 0.0, p = 1.0, ax = std::abs(x);
    for (int k = 0; k < coeffs_.size(); ++k) {
        acc += std::abs(coeffs_(k)) * p;
        p *= ax;
    }
    return acc;
}

std::vector<double> real_roots(const Polynomial& p) {
    const int d = p.degree();
    std::vector<double> roots;
    if (d == 0) return roots;
    if (d == 1) {
        roots.push_back(-p.coeffs()(0) / p.coeffs()(1));
        return roots;
    }
    if (d == 2) {
        double a = p.coeffs()(2), b = p.coeffs()(1), c = p.coeffs()(0);
        double disc = b * b - 4 * a * c;
        double noise = 1e-14 * (b * b + 4 * std::abs(a * c));
        if (disc < -noise) return roots;
        if (disc <= noise) {
            roots.push_back(-b / (2 * a));
            return roots;
        }
        double s = std::sqrt(disc);
        double q = -0.5 * (b + (b >= 0 ? s : -s));
        roots.push_back(q / a);
        roots.push_back(c / q);
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    Polynomial dp = p.derivative();
    std::vector<double> crit = real_roots(dp);
    double bound = 1.0;
    for (int k = 0; k < d; ++k)
        bound = std::max(bound, 2.0 * std::abs(p.coeffs()(k) / p.coeffs()(d)));
    bound += 1.0;

    std::vector<double> nodes;
    nodes.push_back(-bound);
    for (double c : crit)
        if (c > -bound && c < bound) nodes.push_back(c);
    nodes.push_back(bound);

    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        double a = nodes[i], b = nodes[i + 1];
        double fa = p(a), fb = p(b);
        if ((fa > 0 && fb < 0) || (fa < 0 && fb > 0)) {
            roots.push_back(polish_root(p, dp, a, b));
        }
    }
    // even-order roots: the polynomial touches zero at a critical point
    for (double c : crit) {
        if (std::abs(p(c)) <= 1e-11 * (1.0 + p.magnitude(c))) roots.push_back(c);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) {
                                return std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a));
                            }),
                roots.end());
    return roots;
}

Nonlinearity::Nonlinearity(Eigen::VectorXd f_coeffs) : f_(std::move(f_coeffs)) {
    d1_ = f_.derivative();
    d2_ = d1_.derivative();
    d3_ = d2_.derivative();
}

Nonlinearity Nonlinearity::from_fprime(const Eigen::VectorXd& fprime_coeffs) {
    Eigen::VectorXd f(fprime_coeffs.size() + 1);
    f(0) = 0.0;
    for (int k = 0; k < fprime_coeffs.size(); ++k) f(k + 1) = fprime_coeffs(k) / (k + 1);
    return Nonlinearity(std::move(f));
}

AdmissibilityReport check_admissible(const Nonlinearity& f, int n_max) {
    if (n_max < 1) throw std::domain_error("check_admissible: n_max must be >= 1");
    AdmissibilityReport rep;
    const Polynomial& fp = f.fprime_poly();
    rep.surjective_fprime = fp.degree() >= 1 && fp.degree() % 2 == 1;
    rep.nowhere_flat = fp.degree() >= 1;

    bool witnesses_ok = true, witnesses_good = true;
    for (int n = 0; n <= n_max; ++n) {
        Eigen::VectorXd shifted = fp.coeffs();
        shifted(0) += static_cast<double>(n) * n;
        for (double x0 : real_roots(Polynomial(shifted))) {
            Witness w{x0, n, f.fsecond(x0), f.fthird(x0)};
            rep.witnesses.push_back(w);
            double tol2 = 1e-9 * (1.0 + f.fsecond_poly().magnitude(x0));
            double tol3 = 1e-9 * (1.0 + f.fthird_poly().magnitude(x0));
            bool second_zero = std::abs(w.fsecond) <= tol2;
            bool third_zero = std::abs(w.fthird) <= tol3;
            if (second_zero && third_zero) witnesses_ok = false;
            if (second_zero) witnesses_good = false;
        }
    }
    rep.admissible = rep.surjective_fprime && rep.nowhere_flat && witnesses_ok;
    rep.good = rep.admissible && witnesses_good;
    return rep;
}

double RightInverse::solve_on_branch(const Branch& br, double y) const {
    // bracket [a, b] with f' attaining y between them
    double a = br.lo, b = br.hi;
    bool want_above_right = br.increasing;
    if (!std::isfinite(a)) {
        double anchor = std::isfinite(b) ? b : 0.0;
        double step = 1.0 + std::abs(anchor);
        a = anchor - step;
        while ((want_above_right ? fprime_(a) > y : fprime_(a) < y)) {
            step *= 2;
            a = anchor - step;
        }
    }
    if (!std::isfinite(b)) {
        double anchor = std::isfinite(br.lo) ? br.lo : 0.0;
        double step = 1.0 + std::abs(anchor);
        b = anchor + step;
        while ((want_above_right ? fprime_(b) < y : fprime_(b) > y)) {
            step *= 2;
            b = anchor + step;
        }
    }
    // safeguarded Newton on f'(x) - y
    double fa = fprime_(a) - y;
    double x = 0.5 * (a + b);
    for (int it = 0; it < 120; ++it) {
        double fx = fprime_(x) - y;
        if (fx == 0.0) return x;
        if ((fx > 0) == (fa > 0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        double d = fsecond_(x);
        double xn = d != 0.0 ? x - fx / d : 0.5 * (a + b);
        if (!(xn >= std::min(a, b) && xn <= std::max(a, b))) xn = 0.5 * (a + b);
        if (std::abs(xn - x) < 1e-15 * (1.0 + std::abs(x))) return xn;
        x = xn;
    }
    return x;
}

double RightInverse::operator()(double y) const {
    // branches are in domain order, so under Smallest the first branch
    // whose value range covers y yields the smallest preimage
    double best = 0.0;
    bool found = false;
    for (const auto& br : branches_) {
        double vlo = std::isfinite(br.lo) ? fprime_(br.lo) : (br.increasing ? -kInf : kInf);
        double vhi = std::isfinite(br.hi) ? fprime_(br.hi) : (br.increasing ? kInf : -kInf);
        double lo = std::min(vlo, vhi), hi = std::max(vlo, vhi);
        double pad = 1e-12 * (1.0 + std::abs(y));
        if (y < lo - pad || y > hi + pad) continue;
        double x = solve_on_branch(br, std::clamp(y, lo, hi));
        if (selection_ == BranchSelection::Smallest) return x;
        if (!found || std::abs(x - x_ref_) < std::abs(best - x_ref_)) {
            best = x;
            found = true;
        }
    }
    if (selection_ == BranchSelection::NearestTo && found) return best;
    throw std::domain_error("right_inverse: no branch covers the requested value");
}

RightInverse right_inverse(const Nonlinearity& f, BranchSelection sel, double x_ref) {
    const Polynomial& fp = f.fprime_poly();
    if (fp.degree() < 1 || fp.degree() % 2 == 0)
        throw std::domain_error("right_inverse: f' must be surjective (odd degree)");
    RightInverse inv;
    inv.fprime_ = fp;
    inv.fsecond_ = f.fsecond_poly();
    inv.selection_ = sel;
    inv.x_ref_ = x_ref;

    std::vector<double> crit = real_roots(f.fsecond_poly());
    for (double c : crit) inv.breakpoints_.push_back(fp(c));
    std::sort(inv.breakpoints_.begin(), inv.breakpoints_.end());
    inv.breakpoints_.erase(std::unique(inv.breakpoints_.begin(), inv.breakpoints_.end()),
                           inv.breakpoints_.end());

    if (crit.empty()) {
        inv.branches_.push_back({-kInf, kInf, fp.coeffs()(fp.degree()) > 0});
        return inv;
    }
    auto rising_at = [&](double a, double b) {
        double mid;
        if (!std::isfinite(a))
            mid = b - 1.0;
        else if (!std::isfinite(b))
            mid = a + 1.0;
        else
            mid = 0.5 * (a + b);
        return f.fsecond(mid) >= 0.0;
    };
    double prev = -kInf;
    for (double c : crit) {
        inv.branches_.push_back({prev, c, rising_at(prev, c)});
        prev = c;
    }
    inv.branches_.push_back({prev, kInf, rising_at(prev, kInf)});
    return inv;
}

}  // namespace hillmono
