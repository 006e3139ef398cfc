#include "hillmono/potential.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "hillmono/spline.hpp"

namespace hillmono {

class PotentialEvaluator {
  public:
    virtual ~PotentialEvaluator() = default;
    virtual double eval(double t) const = 0;
};

namespace {

bool power_of_two(int n) {
    while (n % 2 == 0) n /= 2;
    return n == 1;
}

// Truncated real Fourier series of the trigonometric interpolant.
class TrigEvaluator final : public PotentialEvaluator {
  public:
    explicit TrigEvaluator(const Eigen::VectorXd& v) {
        const int n = static_cast<int>(v.size());
        std::vector<double> time(v.data(), v.data() + n);
        std::vector<std::complex<double>> spec;
        Eigen::FFT<double> fft;
        fft.fwd(spec, time);
        const int half = n / 2;
        a0_ = spec[0].real() / n;
        nyquist_ = spec[half].real() / n;
        double thresh = 1e-15 * std::max(1e-300, v.cwiseAbs().maxCoeff());
        int band = 0;
        a_.assign(half, 0.0);
        b_.assign(half, 0.0);
        for (int j = 1; j < half; ++j) {
            a_[j] = 2.0 * spec[j].real() / n;
            b_[j] = -2.0 * spec[j].imag() / n;
            if (std::abs(a_[j]) + std::abs(b_[j]) > thresh) band = j;
        }
        use_nyquist_ = std::abs(nyquist_) > thresh;
        bandwidth_ = band;
        half_ = half;
    }

    double eval(double t) const override {
        double acc = a0_;
        double c = std::cos(t), s = std::sin(t);
        double cj = c, sj = s;
        for (int j = 1; j <= bandwidth_; ++j) {
            acc += a_[j] * cj + b_[j] * sj;
            double cn = cj * c - sj * s;
            sj = sj * c + cj * s;
            cj = cn;
        }
        if (use_nyquist_) acc += nyquist_ * std::cos(half_ * t);
        return acc;
    }

  private:
    double a0_ = 0.0, nyquist_ = 0.0;
    std::vector<double> a_, b_;
    int bandwidth_ = 0, half_ = 0;
    bool use_nyquist_ = false;
};

class CubicEvaluator final : public PotentialEvaluator {
  public:
    explicit CubicEvaluator(const Eigen::VectorXd& v)
        : spline_(CubicSpline::with_estimated_slopes(0.0, kTwoPi / v.size(), v)) {}

    double eval(double t) const override { return spline_(t); }

  private:
    CubicSpline spline_;
};

}  // namespace

Potential Potential::from_samples(Eigen::VectorXd values, Interp interp, ClosedForm tag) {
    const int n = static_cast<int>(values.size());
    if (n < 256 || !power_of_two(n))
        throw std::invalid_argument("potential: grid size must be a power of two >= 256");
    if (!values.allFinite()) throw std::invalid_argument("potential: samples must be finite");
    Potential p;
    p.values_ = std::move(values);
    p.interp_ = interp;
    p.closed_form_ = std::move(tag);
    if (interp == Interp::Trig)
        p.eval_ = std::make_shared<TrigEvaluator>(p.values_);
    else
        p.eval_ = std::make_shared<CubicEvaluator>(p.values_);
    return p;
}

Potential Potential::constant(double c, int n) {
    return from_samples(Eigen::VectorXd::Constant(n, c), Interp::Trig, ClosedForm::constant(c));
}

Potential Potential::from_function(const std::function<double(double)>& f, int n, Interp interp,
                                   ClosedForm tag) {
    Eigen::VectorXd v(n);
    for (int k = 0; k < n; ++k) v(k) = f(kTwoPi * k / n);
    return from_samples(std::move(v), interp, std::move(tag));
}

double Potential::operator()(double t) const { return eval_->eval(t); }

Potential Potential::map(const std::function<double(double)>& f) const {
    Eigen::VectorXd v(values_.size());
    for (int k = 0; k < values_.size(); ++k) v(k) = f(values_(k));
    return from_samples(std::move(v), interp_);
}

Potential Potential::with_added_samples(const Eigen::VectorXd& delta) const {
    if (delta.size() != values_.size())
        throw std::invalid_argument("potential: sample count mismatch");
    return from_samples(values_ + delta, interp_);
}

std::uint64_t Potential::content_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* data, size_t len) {
        const unsigned char* p = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 1099511628211ULL;
        }
    };
    mix(values_.data(), sizeof(double) * values_.size());
    int tag = static_cast<int>(interp_);
    mix(&tag, sizeof(tag));
    return h;
}

}  // namespace hillmono
