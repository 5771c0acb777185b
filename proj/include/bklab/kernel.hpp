#ifndef BKLAB_KERNEL_HPP
#define BKLAB_KERNEL_HPP

// The weight-k Bergman density B_k(z) = sum_i y^k |f_i(z)|^2 over a
// Petersson-orthonormal cusp basis, computed two independent ways:
//
//  * bergman_point: the quadrature-Gram pipeline (orthonormalize the
//    echelon basis, sum the squared scaled values);
//  * bergman_series: the group-average representation
//      B_k(z) = (k-1)/(4 pi) * sum_gamma [ ((gamma z - zbar)/(2i))
//               * (c z + d) / y ]^{-k},
//    enumerated over coprime bottom rows (c, d) with the translation
//    family a -> a + t c summed to a certified tail.
//
// Plus grid scans with local refinement for suprema, log-log scaling fits,
// and the normalized equidistribution ratio B_k(z) * vol / dim.

#include <functional>
#include <optional>
#include <vector>

#include "bklab/petersson.hpp"

namespace bklab {

struct CutoffInsufficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonrealResult : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RegionEmpty : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateSamples : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature-Gram pipeline value; nonnegative.
double bergman_point(const OrthonormalBasis& onb, const HPoint& z);

struct SeriesResult {
    double value = 0.0;
    double tail_estimate = 0.0;   // translation tails + dropped (c,d) shells
    double imag_residual = 0.0;   // |Im| of the assembled sum, scale-relative
    long terms = 0;
};

// Group-average oracle; k >= 8 even, cutoff_M >= 1 bounds max(|c|, |d|).
SeriesResult bergman_series(int k, const HPoint& z, int cutoff_M, double tol_rel = 1e-9);

struct ScanRegion {
    double y_lo = 0.86602540378443864676;  // clipped to the domain floor
    double y_hi = 2.0;
};

// Proxy height for the full noncompact domain at weight k: the near-cusp
// maximum sits at y ~ k/(4 pi), well interior to max(4, k/2).
double scan_y_auto(int k);

struct ScanReport {
    int weight = 0;
    ScanRegion region;
    int nx = 0, ny = 0;
    double sup = 0.0;
    HPoint argmax;
    bool refined = false;
    long evaluations = 0;
};

// Coarse grid over {0 <= x <= 1/2} x [y_lo, y_hi] intersected with the
// fundamental domain (B is even and 1-periodic in x), followed by
// golden-section refinement around the top cells. The visitor, when given,
// sees every evaluated point.
ScanReport sup_scan(const OrthonormalBasis& onb, const ScanRegion& region, int nx, int ny,
                    bool refine = true,
                    const std::function<void(const HPoint&, double)>& visitor = nullptr);

struct FitReport {
    double exponent = 0.0;
    double constant = 0.0;   // intercept in log space
    double residual = 0.0;   // rms of log residuals
    double k_min = 0.0, k_max = 0.0;
    int samples = 0;
};

// Least squares of log(value) against log(k); needs >= 4 samples with
// distinct k and positive values.
FitReport scaling_fit(const std::vector<std::pair<double, double>>& samples);

struct EquidistRow {
    HPoint z;
    double value = 0.0;      // B_k(z)
    double ratio = 0.0;      // B_k(z) * (pi/3) / dim
    double deviation = 0.0;  // |ratio - 1|
};

// Normalized density against the equidistribution limit; vol(F) = pi/3.
std::vector<EquidistRow> equidist_check(const OrthonormalBasis& onb,
                                        const std::vector<HPoint>& points);

}  // namespace bklab

#endif  // BKLAB_KERNEL_HPP
