#ifndef BKLAB_HEAT_MODEL_HPP
#define BKLAB_HEAT_MODEL_HPP

// Scaled heat-kernel model densities and synthetic spectral heat kernels.
//
// The model density is the per-factor product of alpha / (4 pi sinh(alpha t)),
// which reproduces the one-factor heat-trace normalization 1/(4 pi t) as
// t -> 0. The synthetic side works with explicit (eigenvalue, pointwise
// mass) lists: heat(t) = sum exp(-2 t lambda / k) * w dominates the zero-mode
// mass for every t and converges to it as t -> infinity. This module checks
// that inequality/limit structure, nothing more.

#include <stdexcept>
#include <vector>

namespace bklab {

struct SpectrumModel {
    std::vector<double> alphas;  // curvature eigenvalues, all > 0

    explicit SpectrumModel(std::vector<double> a) : alphas(std::move(a)) {
        if (alphas.empty()) throw std::invalid_argument("SpectrumModel: empty eigenvalue list");
        for (double alpha : alphas)
            if (!(alpha > 0.0))
                throw std::invalid_argument("SpectrumModel: eigenvalues must be positive");
    }
    int n() const { return static_cast<int>(alphas.size()); }
};

struct SyntheticSpectrum {
    struct Mode {
        double lambda = 0.0;  // eigenvalue, >= 0
        double mass = 0.0;    // pointwise eigenfunction mass, >= 0
    };
    std::vector<Mode> modes;  // lambda sorted ascending
    double k = 1.0;           // scaling weight in exp(-2 t lambda / k)

    SyntheticSpectrum(std::vector<Mode> m, double k_) : modes(std::move(m)), k(k_) {
        if (!(k > 0.0)) throw std::invalid_argument("SyntheticSpectrum: k must be positive");
        double prev = -1.0;
        for (const auto& mode : modes) {
            if (mode.lambda < 0.0 || mode.mass < 0.0)
                throw std::invalid_argument("SyntheticSpectrum: negative eigenvalue or mass");
            if (mode.lambda < prev)
                throw std::invalid_argument("SyntheticSpectrum: eigenvalues must be sorted");
            prev = mode.lambda;
        }
    }
};

struct BoucheDensity {
    double value = 0.0;
    bool underflow = false;  // set when sinh(alpha t) overflowed; value is an exact 0
};

// Product over factors of alpha / (4 pi sinh(alpha t)); t > 0.
BoucheDensity bouche_density(const SpectrumModel& model, double t);

// sum_m exp(-2 t lambda_m / k) * w_m.
double synthetic_heat(const SyntheticSpectrum& spec, double t);

// Zero-mode mass: sum of w_m over lambda_m == 0 (inputs are constructed,
// so the comparison is exact, no tolerance).
double bergman_from_spectrum(const SyntheticSpectrum& spec);

// exp(-2 t lambda_min+ / k) * sum w: analytic bound on heat(t) - bergman.
// Returns 0 when there is no positive eigenvalue (heat == bergman exactly).
double heat_tail_bound(const SyntheticSpectrum& spec, double t);

}  // namespace bklab

#endif  // BKLAB_HEAT_MODEL_HPP
