#ifndef BKLAB_MODFORMS_HPP
#define BKLAB_MODFORMS_HPP

// Exact arithmetic of level-one modular forms: Eisenstein series, the
// discriminant form, echelon cusp bases, dimension formulas, and pointwise
// evaluation with a certified truncation tail.
//
// All expansion arithmetic is over exact rationals; floating point enters
// only in evaluate(). Weights are even integers with trivial character.

#include <complex>
#include <stdexcept>
#include <vector>

#include "bklab/geometry.hpp"
#include "bklab/rational.hpp"

namespace bklab {

// Truncated Fourier expansion sum a_n q^n, n = 0..order, exact coefficients.
struct QExpansion {
    int weight = 0;
    int order = 0;
    std::vector<Rational> coeffs;  // size order + 1

    QExpansion() = default;
    QExpansion(int k, int n) : weight(k), order(n), coeffs(static_cast<std::size_t>(n) + 1) {}

    const Rational& a(int n) const { return coeffs.at(static_cast<std::size_t>(n)); }
    Rational& a(int n) { return coeffs.at(static_cast<std::size_t>(n)); }
};

struct CuspBasis {
    int weight = 0;
    std::vector<QExpansion> forms;  // a_i(f_j) = delta_ij for 1 <= i,j <= dim
    bool echelon = false;

    int dim() const { return static_cast<int>(forms.size()); }
};

struct InsufficientTruncation : std::runtime_error {
    int required_order;
    InsufficientTruncation(const std::string& what, int required)
        : std::runtime_error(what), required_order(required) {}
};

// Exact Bernoulli number B_m (recurrence over binomials, cached).
Rational bernoulli(int m);

// E_k = 1 - (2k / B_k) * sum sigma_{k-1}(n) q^n, exact to the given order.
QExpansion eisenstein(int k, int order);

// Discriminant cusp form (E_4^3 - E_6^2)/1728; a_0 = 0, a_1 = 1.
QExpansion delta(int order);

// dim S_k for the full modular group, even k >= 0.
int dim_cusp(int k);

// Truncated product/power/linear operations (order = min of operands).
QExpansion mul(const QExpansion& f, const QExpansion& g);
QExpansion pow(const QExpansion& f, int e);

// Echelon cusp basis from products of the discriminant form with the two
// Eisenstein generators, row-reduced so a_i(f_j) = delta_ij.
// Throws InsufficientTruncation when order < dim S_k.
CuspBasis miller_basis(int k, int order);

// Truncation order that certifies tails at height >= y_min for the weights
// and tolerances used across the library (see evaluate()).
int recommended_truncation(int k, double y_min = 0.8660254037844386);

// Empirical coefficient-growth constant: 10 * max_n |a_n| / n^(k-1).
// Certified a posteriori by extending the expansion and re-checking.
double coeff_growth_constant(const QExpansion& f);

// Upper bound on |sum_{n > order} a_n q^n| at height y, from the growth
// constant and a geometric-ratio tail estimate. +inf when terms are not yet
// decreasing at the truncation point.
double evaluation_tail_bound(const QExpansion& f, double y);

// sum a_n e^{2 pi i n (x + i y)} with certified absolute tail below
// tail_tol; throws InsufficientTruncation (with the order that would
// certify) when the point is below the evaluation floor.
std::complex<double> evaluate(const QExpansion& f, const HPoint& p, double tail_tol);

// y^{k/2} * f(z): the scale in which Petersson densities are formed;
// avoids under/overflow of the two factors separately.
std::complex<double> evaluate_scaled(const QExpansion& f, const HPoint& p, double tail_tol);

// JSON round trip; schema: {"weight": k, "N": order, "coeffs": ["p/q", ...]}.
std::string to_json(const QExpansion& f);
QExpansion qexpansion_from_json(const std::string& text);

// Evaluation-ready flattening of an expansion: coefficients as doubles with
// a log-magnitude fallback for anything outside double range. Quadrature
// and scan loops evaluate these; certification happens once per form via
// tail_bound_scaled rather than per node.
struct CompiledForm {
    int weight = 0;
    std::vector<double> coeff;      // to_double(a_n); may be +-inf when huge
    std::vector<double> log_coeff;  // log |a_n|; -inf for zero entries
    std::vector<double> sign;       // -1, 0, +1
    double log_growth = 0.0;        // log of the coefficient-growth constant

    static CompiledForm from(const QExpansion& f);

    int order() const { return static_cast<int>(coeff.size()) - 1; }

    // y^{k/2} f(z), no tail certification.
    std::complex<double> eval_scaled(const HPoint& p) const;

    // Bound on the dropped tail of y^{k/2} f(z) at height y.
    double tail_bound_scaled(double y) const;
};

}  // namespace bklab

#endif  // BKLAB_MODFORMS_HPP
