#ifndef BKLAB_GEOMETRY_HPP
#define BKLAB_GEOMETRY_HPP

// Hyperbolic geometry on products of upper half-planes and the curvature of
// the weight-w Petersson metric. All (1,1)-form densities are reported as
// scalar coefficients against mu_hyp per factor: every form handled here is
// a diagonal multiple of mu_hyp, so no tensor type is needed.
//
// Metric potential per factor: phi(x, y) = -w * log y. Its (i/2pi) d dbar
// equals (w / 4pi) * mu_hyp, so the determinant against mu_hyp^n is
// (w / 4pi)^n. For w = 1/2 the per-factor coefficient is 1/(8pi); for
// w = 2 it is 1/(2pi).

#include <stdexcept>
#include <vector>

#include "bklab/rational.hpp"

namespace bklab {

struct HPoint {
    double x = 0.0;
    double y = 1.0;

    HPoint() = default;
    HPoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0)) throw std::invalid_argument("HPoint: y must be positive");
    }
};

struct HnPoint {
    std::vector<HPoint> coords;

    HnPoint() = default;
    explicit HnPoint(std::vector<HPoint> c) : coords(std::move(c)) {
        if (coords.empty()) throw std::invalid_argument("HnPoint: needs at least one factor");
    }
    int n() const { return static_cast<int>(coords.size()); }
};

struct CurvatureSpec {
    Rational weight_per_factor;  // 1/2 for the half-integral bundle, 2 for the even one
    int n = 1;

    CurvatureSpec(Rational w, int n_) : weight_per_factor(std::move(w)), n(n_) {
        if (weight_per_factor < 0) throw std::invalid_argument("CurvatureSpec: weight must be >= 0");
        if (n < 1) throw std::invalid_argument("CurvatureSpec: n must be >= 1");
    }
};

struct StepTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar density of mu_hyp against (i/2) dz ^ dzbar, i.e. 1/y^2.
double hyp_density(const HPoint& p);

// Product of the factor densities.
double hypn_volume_density(const HnPoint& p);

// Per-factor coefficient of c_1 against mu_hyp(z_i); constant w/(4pi).
std::vector<double> curvature_density(const CurvatureSpec& spec, const HnPoint& p);

// det of c_1 against mu_hyp^n: (w/(4pi))^n.
double det_curvature(const CurvatureSpec& spec);

// Central second differences of the metric potential on each factor, with
// one Richardson extrapolation step. Converges at order h^2 (h^4 after
// extrapolation) to w/(4pi). Throws StepTooLarge when the extrapolation
// difference says truncation still dominates the requested tolerance, and
// StepTooSmall when roundoff in the stencil exceeds it.
std::vector<double> fd_curvature_check(const CurvatureSpec& spec, const HnPoint& p, double h,
                                       double tol_rel = 1e-6);

}  // namespace bklab

#endif  // BKLAB_GEOMETRY_HPP
