#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "hillmono/config.hpp"

namespace hillmono {

enum class Interp { Trig, Cubic };

// Optional bookkeeping tag for potentials with a known closed form.
struct ClosedForm {
    enum class Kind { None, Constant, Expr };
    Kind kind = Kind::None;
    double value = 0.0;
    std::string id;

    static ClosedForm none() { return {}; }
    static ClosedForm constant(double c) { return {Kind::Constant, c, {}}; }
    static ClosedForm expr(std::string name) { return {Kind::Expr, 0.0, std::move(name)}; }
};

// Real-valued function on [0, 2 pi] stored as n uniform samples at
// t_k = 2 pi k / n plus an interpolation rule.  Trig interpolation treats
// the data as periodic (spectral); cubic is a clamped spline for
// interval-only data.  Immutable after construction.
class Potential {
  public:
    static Potential from_samples(Eigen::VectorXd values, Interp interp,
                                  ClosedForm tag = ClosedForm::none());
    static Potential constant(double c, int n = 256);
    static Potential from_function(const std::function<double(double)>& f, int n,
                                   Interp interp, ClosedForm tag = ClosedForm::none());

    int size() const { return static_cast<int>(values_.size()); }
    const Eigen::VectorXd& values() const { return values_; }
    Interp interp() const { return interp_; }
    const ClosedForm& closed_form() const { return closed_form_; }

    double operator()(double t) const;
    double sup_norm() const { return values_.cwiseAbs().maxCoeff(); }
    double node(int k) const { return kTwoPi * k / size(); }

    // Pointwise transform of the samples on the same grid (drops the tag).
    Potential map(const std::function<double(double)>& f) const;
    Potential with_added_samples(const Eigen::VectorXd& delta) const;

    // FNV-1a over the sample bytes and interpolation rule.
    std::uint64_t content_hash() const;

  private:
    Potential() = default;

    Eigen::VectorXd values_;
    Interp interp_ = Interp::Trig;
    ClosedForm closed_form_;
    std::shared_ptr<const class PotentialEvaluator> eval_;
};

}  // namespace hillmono
