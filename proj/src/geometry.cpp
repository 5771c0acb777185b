#include "bklab/geometry.hpp"

#include <cmath>
#include <limits>

#include "bklab/numerics.hpp"

namespace bklab {

double hyp_density(const HPoint& p) { return 1.0 / (p.y * p.y); }

double hypn_volume_density(const HnPoint& p) {
    double v = 1.0;
    for (const auto& z : p.coords) v *= hyp_density(z);
    return v;
}

std::vector<double> curvature_density(const CurvatureSpec& spec, const HnPoint& p) {
    if (spec.n != p.n())
        throw std::invalid_argument("curvature_density: point dimension does not match spec");
    const double c = to_double(spec.weight_per_factor) / (4.0 * kPi);
    return std::vector<double>(static_cast<std::size_t>(spec.n), c);
}

double det_curvature(const CurvatureSpec& spec) {
    return std::pow(to_double(spec.weight_per_factor) / (4.0 * kPi), spec.n);
}

namespace {

// 1D central second difference of f at x with step h.
template <typename F>
double second_difference(const F& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

std::vector<double> fd_curvature_check(const CurvatureSpec& spec, const HnPoint& p, double h,
                                       double tol_rel) {
    if (spec.n != p.n())
        throw std::invalid_argument("fd_curvature_check: point dimension does not match spec");
    for (const auto& z : p.coords)
        if (!(h > 0.0 && h < z.y / 10.0))
            throw std::invalid_argument("fd_curvature_check: need 0 < h < y/10 on every factor");

    const double w = to_double(spec.weight_per_factor);
    const double target_scale = std::max(std::abs(w) / (4.0 * kPi), 1e-12);

    std::vector<double> out;
    out.reserve(p.coords.size());
    for (const auto& z : p.coords) {
        auto phi_of_y = [&](double y) { return -w * std::log(y); };
        auto phi_of_x = [&](double) { return -w * std::log(z.y); };

        // Laplacian of the potential; the x-stencil is identically zero but is
        // evaluated anyway so the check runs on the full 2D definition.
        auto lap = [&](double step) {
            return second_difference(phi_of_x, z.x, step) + second_difference(phi_of_y, z.y, step);
        };
        const double coarse = lap(h);
        const double fine = lap(h / 2.0);
        const double extrapolated = (4.0 * fine - coarse) / 3.0;

        // Coefficient against mu_hyp: y^2 * (i/2pi d dbar phi) / mu_hyp.
        const double coeff = z.y * z.y * extrapolated / (4.0 * kPi);
        const double truncation = std::abs(fine - coarse) / 3.0 * z.y * z.y / (4.0 * kPi);

        // Roundoff in a second-difference stencil: ~ 4 eps |phi| / h^2.
        const double eps = std::numeric_limits<double>::epsilon();
        const double phi_mag = std::abs(w * std::log(z.y)) + std::abs(w);
        const double roundoff =
            4.0 * eps * phi_mag / (h * h / 4.0) * z.y * z.y / (4.0 * kPi);

        const double budget = tol_rel * target_scale;
        if (truncation > budget && truncation > roundoff)
            throw StepTooLarge("fd_curvature_check: truncation estimate above tolerance; reduce h");
        if (roundoff > budget && roundoff > truncation)
            throw StepTooSmall("fd_curvature_check: cancellation detected; increase h");
        out.push_back(coeff);
    }
    return out;
}

}  // namespace bklab
