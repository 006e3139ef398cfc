#pragma once

#include <vector>

#include "hillmono/cover.hpp"
#include "hillmono/potential.hpp"

namespace hillmono {

// Trajectory t -> lifted fundamental matrix of v'' = q(t) v, with the
// continuous argument lift theta and the orbit radius rho = v1^2 + v2^2
// at the nodes.  mats[0] is the lifted identity and theta is increasing
// with per-step advance below pi.
struct FloquetPath {
    Eigen::VectorXd times;
    std::vector<LiftedMatrix> mats;
    Eigen::VectorXd theta;
    Eigen::VectorXd rho;

    const LiftedMatrix& monodromy() const { return mats.back(); }
    double theta_max() const { return theta(theta.size() - 1); }

    double v1(int k) const { return mats[k].matrix()(0, 0); }
    double v2(int k) const { return mats[k].matrix()(0, 1); }
    double v1p(int k) const { return mats[k].matrix()(1, 0); }
    double v2p(int k) const { return mats[k].matrix()(1, 1); }

    // Hermite interpolation between nodes; theta' = 1/rho and
    // rho' = 2 (v1 v1' + v2 v2') are exact at the nodes.
    double theta_at(double t) const;
    double rho_at(double t) const;
};

// Smallest valid power-of-two step count: h < (1/4) |q|_inf^{-1/2} and
// at least cfg.steps.
int required_steps(const Potential& q, const RunConfig& cfg = default_config());

// Integrate over [0, 2 pi] with a 4th-order commutator-free Lie-group
// stepper (two Gauss-point exponentials per step), renormalizing the
// determinant at every node.  Throws std::invalid_argument when the step
// bound is violated, naming the required step count.
FloquetPath integrate(const Potential& q, int steps);
inline FloquetPath integrate(const Potential& q, const RunConfig& cfg = default_config()) {
    return integrate(q, required_steps(q, cfg));
}

// Lifted solution over [t_minus, t_plus] starting at the identity.
// Variations juxtapose: the composite over adjacent intervals matches the
// full-interval variation (order matters; later interval on the left).
LiftedMatrix t_variation(const Potential& q, double t_minus, double t_plus,
                         const RunConfig& cfg = default_config());

// Self-check of the argument-advance estimate: the global theta advance
// over [t_minus, t_plus] must stay below pi whenever the interval is
// shorter than |q|_inf^{-1/2}.
bool argument_advance_bound_check(const Potential& q, double t_minus, double t_plus,
                                  const RunConfig& cfg = default_config());

}  // namespace hillmono
