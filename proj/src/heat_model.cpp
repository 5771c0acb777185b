#include "bklab/heat_model.hpp"

#include <cmath>

#include "bklab/numerics.hpp"

namespace bklab {

BoucheDensity bouche_density(const SpectrumModel& model, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("bouche_density: t must be positive");
    BoucheDensity out;
    out.value = 1.0;
    for (double alpha : model.alphas) {
        const double arg = alpha * t;
        // sinh overflows just past 710; the factor is then an exact 0 in
        // double precision, which we flag rather than propagate an inf.
        if (arg > 700.0) {
            out.value = 0.0;
            out.underflow = true;
            return out;
        }
        out.value *= alpha / (4.0 * kPi * std::sinh(arg));
    }
    if (out.value == 0.0) out.underflow = true;
    return out;
}

double synthetic_heat(const SyntheticSpectrum& spec, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("synthetic_heat: t must be positive");
    KahanSum acc;
    for (const auto& mode : spec.modes) acc.add(std::exp(-2.0 * t * mode.lambda / spec.k) * mode.mass);
    return acc.value();
}

double bergman_from_spectrum(const SyntheticSpectrum& spec) {
    KahanSum acc;
    for (const auto& mode : spec.modes)
        if (mode.lambda == 0.0) acc.add(mode.mass);
    return acc.value();
}

double heat_tail_bound(const SyntheticSpectrum& spec, double t) {
    double lambda_min = 0.0;
    KahanSum total;
    for (const auto& mode : spec.modes) {
        total.add(mode.mass);
        if (mode.lambda > 0.0 && (lambda_min == 0.0 || mode.lambda < lambda_min))
            lambda_min = mode.lambda;
    }
    if (lambda_min == 0.0) return 0.0;
    return std::exp(-2.0 * t * lambda_min / spec.k) * total.value();
}

}  // namespace bklab
