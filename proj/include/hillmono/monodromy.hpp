#pragma once

#include <functional>
#include <memory>

#include "hillmono/floquet.hpp"
#include "hillmono/nonlinearity.hpp"

namespace hillmono {

// Read-through cache of integrated paths keyed by potential content and
// step count (targeting iterates call mu and d_mu on the same potential
// repeatedly).  Thread safe; concurrent writers of the same key agree.
std::shared_ptr<const FloquetPath> cached_path(const Potential& q,
                                               const RunConfig& cfg = default_config());

// Lifted monodromy mu(q) = lifted fundamental matrix at 2 pi.
LiftedMatrix mu(const Potential& q, const RunConfig& cfg = default_config());

// Linearization potential f' o u on the same grid.
Potential linearized_potential(const Potential& u, const Nonlinearity& f);

// Nonlinear monodromy mu_f(u) = mu(f' o u).
LiftedMatrix mu_f(const Potential& u, const Nonlinearity& f,
                  const RunConfig& cfg = default_config());

// Left-trivialized body of the monodromy derivative:
//   mu(q)^{-1} (D mu(q)) w = \int_0^{2pi} w(t) rho(theta(t)) N_theta(t) dt,
// integrated by composite Simpson on the path nodes using the exact node
// identity rho N_theta = [[-v1 v2, -v2^2], [v1^2, v1 v2]].
Matrix2d d_mu_body(const FloquetPath& path, const std::function<double(double)>& weight);

TangentVector d_mu(const Potential& q, const Potential& w,
                   const RunConfig& cfg = default_config());

// D mu_f(u) v = mu_f(u) \int f''(u) v rho N_theta dt.
TangentVector d_mu_f(const Potential& u, const Nonlinearity& f, const Potential& v,
                     const RunConfig& cfg = default_config());

// Exact monodromy of the Dirac-delta perturbed potential:
//   mu(q + a delta_{t0}) = mu(q) Phi(t0)^{-1} [[1,0],[a,1]] Phi(t0).
LiftedMatrix delta_update(const Potential& q, double t0, double a,
                          const RunConfig& cfg = default_config());

struct MeasureContinuityResult {
    double measure_diff;    // lambda{t : u1 != u2}, grid fraction * 2 pi
    double group_distance;  // ||log(mu_f(u2) mu_f(u1)^{-1})||, +inf outside B_eps
};

MeasureContinuityResult measure_continuity_probe(const Potential& u1, const Potential& u2,
                                                 const Nonlinearity& f,
                                                 const RunConfig& cfg = default_config());

}  // namespace hillmono
