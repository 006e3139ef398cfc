#pragma once

#include <cmath>
#include <random>

#include "hillmono/potential.hpp"

namespace hillmono {

// Deterministic random source.  Raw mt19937_64 output is mapped to
// doubles directly so sequences are reproducible across standard
// libraries (std distributions are not pinned by the standard).
class Rng {
  public:
    explicit Rng(unsigned long long seed) : eng_(seed) {}

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int integer(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(eng_() % static_cast<unsigned long long>(hi - lo + 1));
    }

  private:
    std::mt19937_64 eng_;
};

// Random mean-`offset` trigonometric polynomial rescaled so that
// max |samples| equals sup exactly.
inline Potential random_trig_potential(Rng& rng, double sup, int harmonics = 4, int n = 4096,
                                       double offset = 0.0, Interp interp = Interp::Trig) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int k = 1; k <= harmonics; ++k) {
        double a = rng.uniform(-1.0, 1.0), b = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < n; ++i) {
            double t = kTwoPi * i / n;
            v(i) += a * std::cos(k * t) + b * std::sin(k * t);
        }
    }
    double m = v.cwiseAbs().maxCoeff();
    if (m == 0.0) m = 1.0;
    v = offset + ((sup - std::abs(offset)) / m) * v.array();
    return Potential::from_samples(std::move(v), interp);
}

}  // namespace hillmono
