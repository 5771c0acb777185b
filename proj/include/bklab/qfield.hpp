#ifndef BKLAB_QFIELD_HPP
#define BKLAB_QFIELD_HPP

// Exact arithmetic in K = Q(sqrt 5) with ring of integers Z[phi],
// phi = (1 + sqrt 5)/2, phi^2 = phi + 1. The two real embeddings send phi
// to (1 +- sqrt 5)/2. The different is (sqrt 5) = (2 phi - 1); Fourier
// indices of the modular layer live in its inverse, nu = (a + b phi)/sqrt 5
// with integer a, b. For such nu: Tr(nu) = b, N(nu) = (b^2 - a^2 - a b)/5,
// and the index ideal (nu) * different = (a + b phi).
//
// Class number 1, fundamental unit phi. Rational primes behave as:
// 5 ramifies, p = +-1 mod 5 splits, p = +-2 mod 5 stays inert.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bklab/rational.hpp"

namespace bklab {

struct FieldElem {
    Rational a, b;  // a + b phi

    FieldElem() : a(0), b(0) {}
    FieldElem(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
    FieldElem(long a_, long b_) : a(a_), b(b_) {}

    bool operator==(const FieldElem& o) const { return a == o.a && b == o.b; }
};

FieldElem add(const FieldElem& x, const FieldElem& y);
FieldElem sub(const FieldElem& x, const FieldElem& y);
FieldElem mul(const FieldElem& x, const FieldElem& y);
FieldElem conj(const FieldElem& x);  // a + b phibar = (a + b) - b phi
Rational norm(const FieldElem& x);   // a^2 + a b - b^2
Rational trace(const FieldElem& x);  // 2 a + b

// Exact sign of sigma_i(x) using only rational comparisons; which is 1 or 2.
int embedding_sign(const FieldElem& x, int which);
bool is_totally_positive(const FieldElem& x);

double embed(const FieldElem& x, int which);  // double image under sigma_which

// Exact division in K; throws when y == 0.
FieldElem div_exact(const FieldElem& x, const FieldElem& y);

// Totally positive element of the inverse different, nu = (a + b phi)/sqrt 5.
struct TotPosIndex {
    long a = 0;
    long b = 0;  // = Tr(nu)

    long trace() const { return b; }
    // 5 N(nu) = b^2 - a^2 - a b, positive on totally positive indices.
    long norm5() const { return b * b - a * a - a * b; }
    TotPosIndex conjugate() const { return {-a - b, b}; }

    bool operator==(const TotPosIndex& o) const { return a == o.a && b == o.b; }
};

// Sort by (trace, norm, a): the deterministic enumeration order.
struct TotPosIndexLess {
    bool operator()(const TotPosIndex& u, const TotPosIndex& v) const {
        if (u.b != v.b) return u.b < v.b;
        if (u.norm5() != v.norm5()) return u.norm5() < v.norm5();
        return u.a < v.a;
    }
};

// All totally positive nu in the inverse different with Tr(nu) <= T,
// sorted, closed under conjugation. T <= 0 gives the empty list.
std::vector<TotPosIndex> enumerate_indices(long T);

// (sigma_1 nu) z1 + (sigma_2 nu) z2 uses these:
double embed_index(const TotPosIndex& nu, int which);

struct FactorizationOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One prime-ideal power in the factorization of an integral element.
struct IdealFactor {
    long residue_norm = 0;  // N(prime ideal)
    int exponent = 0;
};

// Prime-ideal factorization of the integral element a + b phi (not both
// zero). Throws FactorizationOverflow past the trial-division bound.
std::vector<IdealFactor> factor_ideal(long a, long b);

// sigma_{k-1} of the index ideal (nu) * different = (a + b phi):
// sum over integral ideal divisors of N(divisor)^{k-1}; exact.
Integer sigma_ideal(const TotPosIndex& nu, int k);

}  // namespace bklab

#endif  // BKLAB_QFIELD_HPP
