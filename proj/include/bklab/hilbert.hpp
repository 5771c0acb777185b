#ifndef BKLAB_HILBERT_HPP
#define BKLAB_HILBERT_HPP

// Hilbert modular forms of even parallel weight for PSL2(Z[phi]) over
// Q(sqrt 5): Eisenstein Fourier expansions indexed by totally positive
// elements of the inverse different, exact-rational ring arithmetic, cusp
// projection, dimension counts from the graded ring (generators in weights
// 2, 6, 10), pointwise evaluation with certified tails, and
// normalization-free Bergman ratios for one-dimensional cusp spaces.
//
// Eisenstein normalization: E_k = 1 + kappa_k * sum sigma_{k-1}((nu) d) q^nu
// with kappa_k = 4 / zeta_K(1 - k); the exact identity E_2^2 = E_4 is the
// internal consistency check for the constant (dim M_4 = 1 forces it).

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "bklab/geometry.hpp"
#include "bklab/qfield.hpp"

namespace bklab {

// zeta_K(1-k) for even k >= 2, exact: zeta(1-k) * L(1-k, chi_5) via
// Bernoulli and generalized Bernoulli numbers.
Rational zeta_K_neg(int k);

// Generalized Bernoulli number B_{n, chi_5} (conductor 5, even character).
Rational bernoulli_chi5(int n);

struct HilbertExpansion {
    int weight = 0;
    long trace_cutoff = 0;
    Rational constant_term;
    std::map<TotPosIndex, Rational, TotPosIndexLess> coeffs;

    const Rational& at(const TotPosIndex& nu) const;
    bool galois_symmetric() const;  // b_nu == b_{nu'} for every index
};

struct SpanDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DenominatorUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

HilbertExpansion eisenstein_hmf(int k, long trace_cutoff);

// Ring operations, truncated to the smaller cutoff.
HilbertExpansion mul(const HilbertExpansion& f, const HilbertExpansion& g);
HilbertExpansion pow(const HilbertExpansion& f, int e);
HilbertExpansion linear(const Rational& cf, const HilbertExpansion& f, const Rational& cg,
                        const HilbertExpansion& g);

// Basis of the kernel of the constant-term functional on the span,
// echelonized by the first enumerated indices (leading coefficient 1).
std::vector<HilbertExpansion> cusp_project(const std::vector<HilbertExpansion>& forms);

// (dim M_k, dim S_k): coefficient of t^k in 1/((1-t^2)(1-t^6)(1-t^10)),
// one Eisenstein class (class number 1).
std::pair<int, int> dim_hilbert_series(int k);

// Exact rank of the span over Q (coefficient vectors up to the cutoff).
int span_rank(const std::vector<HilbertExpansion>& forms);

// sum b_nu e^{2 pi i (sigma1(nu) z1 + sigma2(nu) z2)} + constant term, with
// certified absolute tail below tail_tol. Throws InsufficientTruncation
// (from modforms.hpp) with the trace cutoff that would certify.
std::complex<double> evaluate_hmf(const HilbertExpansion& f, const HnPoint& z, double tail_tol);

// Petersson density (y1 y2)^k |f(z)|^2.
double hmf_density(const HilbertExpansion& f, const HnPoint& z, double tail_tol = 1e-12);

// density(z1) / density(z2); the Petersson normalization cancels, so for a
// one-dimensional cusp space this is B(z1)/B(z2).
double bergman_ratio_1dim(const HilbertExpansion& f, const HnPoint& z1, const HnPoint& z2);

// JSON: {"weight", "T", "constant", "entries": [[a, b, "coeff"], ...]}.
std::string to_json(const HilbertExpansion& f);
HilbertExpansion hilbert_from_json(const std::string& text);

}  // namespace bklab

#endif  // BKLAB_HILBERT_HPP
