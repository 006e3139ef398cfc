#pragma once

#include <string>

namespace hillmono {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Run-wide knobs.  All tolerances are pinned here; nothing is recalibrated
// at runtime.
struct RunConfig {
    int steps = 4096;       // default integration steps, power of two >= 256
    int min_steps = 256;
    int orbit_samples = 2048;
    int n_max = 8;          // witness scan bound for f'(x0) = -n^2
    unsigned long long seed = 0;
    std::string output_dir = ".";

    // tolerances
    double tol_trace = 1e-9;        // |tr-2| <= tol_trace * max(1,|tr|)
    double tol_vertex = 1e-8;       // ||Pi(g) - I||_inf at cone vertices
    double tol_vertex_theta = 1e-6; // |theta - 2 pi n| at cone vertices
    double eps_lie = 1.0;           // Frobenius radius of B_eps in sl(2,R)
    double newton_residual = 1e-8;  // bump-correction stopping residual
    double preimage_residual = 1e-6;
    double tol_gram = 1e-8;         // normalized Gram determinant cutoff
    double band_slack = 0.2;        // cone-band width slack around 2 pi n
    double a_max = 50.0;            // bump amplitude safety bound
    double eps1 = kTwoPi / 16.0;    // flat end-window width for preimages
    double eps2 = kTwoPi / 256.0;   // initial smoothing measure near jumps
    int newton_max_iter = 40;
    int preimage_max_retries = 12;

    bool valid_steps(int n) const {
        if (n < min_steps) return false;
        while (n % 2 == 0) n /= 2;
        return n == 1;
    }
};

inline const RunConfig& default_config() {
    static const RunConfig cfg{};
    return cfg;
}

}  // namespace hillmono
