#include "bklab/qfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace bklab {

FieldElem add(const FieldElem& x, const FieldElem& y) { return {x.a + y.a, x.b + y.b}; }
FieldElem sub(const FieldElem& x, const FieldElem& y) { return {x.a - y.a, x.b - y.b}; }

FieldElem mul(const FieldElem& x, const FieldElem& y) {
    // (a + b phi)(c + d phi) with phi^2 = phi + 1
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
}

FieldElem conj(const FieldElem& x) { return {x.a + x.b, -x.b}; }

Rational norm(const FieldElem& x) {
    Rational n = x.a * x.a + x.a * x.b - x.b * x.b;
    n.canonicalize();
    return n;
}

Rational trace(const FieldElem& x) {
    Rational t = 2 * x.a + x.b;
    t.canonicalize();
    return t;
}

int embedding_sign(const FieldElem& x, int which) {
    // sigma(x) = (s + b sqrt5)/2 with s = 2a + b; which = 2 flips b.
    Rational s = 2 * x.a + x.b;
    Rational b = (which == 1) ? x.b : -x.b;
    if (b == 0) return sgn(s);
    if (b > 0) {
        if (s >= 0) return 1;
        return (s * s < 5 * b * b) ? 1 : -1;
    }
    if (s <= 0) return -1;
    return (s * s > 5 * b * b) ? 1 : -1;
}

bool is_totally_positive(const FieldElem& x) {
    return embedding_sign(x, 1) > 0 && embedding_sign(x, 2) > 0;
}

double embed(const FieldElem& x, int which) {
    static const double sqrt5 = std::sqrt(5.0);
    const double phi = (which == 1) ? (1.0 + sqrt5) / 2.0 : (1.0 - sqrt5) / 2.0;
    return to_double(x.a) + to_double(x.b) * phi;
}

FieldElem div_exact(const FieldElem& x, const FieldElem& y) {
    const Rational n = norm(y);
    if (n == 0) throw std::invalid_argument("div_exact: division by zero");
    FieldElem z = mul(x, conj(y));
    z.a /= n;
    z.b /= n;
    z.a.canonicalize();
    z.b.canonicalize();
    return z;
}

std::vector<TotPosIndex> enumerate_indices(long T) {
    std::vector<TotPosIndex> out;
    for (long b = 1; b <= T; ++b) {
        for (long a = -2 * b; a <= b; ++a) {
            // nu = (a + b phi)/sqrt5 totally positive <=> sigma_1(a + b phi) > 0
            // and sigma_2(a + b phi) < 0 (the second embedding of sqrt5 is
            // negative).
            const FieldElem xi(a, b);
            if (embedding_sign(xi, 1) > 0 && embedding_sign(xi, 2) < 0)
                out.push_back({a, b});
        }
    }
    std::sort(out.begin(), out.end(), [](const TotPosIndex& u, const TotPosIndex& v) {
        return TotPosIndexLess{}(u, v);
    });
    return out;
}

double embed_index(const TotPosIndex& nu, int which) {
    static const double sqrt5 = std::sqrt(5.0);
    const double v = embed(FieldElem(nu.a, nu.b), which);
    return (which == 1) ? v / sqrt5 : v / (-sqrt5);
}

namespace {

// Integral coordinates only; exact division by a prime element.
struct ZElem {
    long long a, b;
};

bool divide_by(ZElem& x, long long pa, long long pb, long long pnorm) {
    // x / (pa + pb phi) = x * conj / N; integral iff both coords divide.
    const long long ca = pa + pb, cb = -pb;  // conjugate
    const long long ra = x.a * ca + x.b * cb;
    const long long rb = x.a * cb + x.b * ca + x.b * cb;
    if (ra % pnorm != 0 || rb % pnorm != 0) return false;
    x = {ra / pnorm, rb / pnorm};
    return true;
}

// Element of norm +-p for a split prime; cached.
std::pair<long, long> split_generator(long p) {
    static std::map<long, std::pair<long, long>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    const long V = static_cast<long>(std::ceil(std::sqrt(5.0 * p))) + 2;
    for (long v = 0; v <= V; ++v) {
        for (long u = -V; u <= V; ++u) {
            const long long n = static_cast<long long>(u) * u +
                                static_cast<long long>(u) * v -
                                static_cast<long long>(v) * v;
            if (n == p || n == -p) {
                cache[p] = {u, v};
                return {u, v};
            }
        }
    }
    throw std::logic_error("split_generator: no element found (prime not split?)");
}

}  // namespace

std::vector<IdealFactor> factor_ideal(long a, long b) {
    if (a == 0 && b == 0) throw std::invalid_argument("factor_ideal: zero element");
    long long n = std::llabs(static_cast<long long>(a) * a + static_cast<long long>(a) * b -
                             static_cast<long long>(b) * b);
    if (n > 1'000'000'000'000'000LL)
        throw FactorizationOverflow("factor_ideal: norm beyond the configured bound");

    std::vector<IdealFactor> out;
    ZElem xi{a, b};
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        const long r = static_cast<long>(p % 5);
        if (p == 5) {
            out.push_back({5, e});  // ramified: (sqrt5)^e
        } else if (r == 2 || r == 3) {
            // inert: ordinal in the element is e/2
            out.push_back({static_cast<long>(p * p), e / 2});
        } else {
            const auto [u, v] = split_generator(static_cast<long>(p));
            int e1 = 0;
            ZElem probe = xi;
            while (divide_by(probe, u, v, p)) ++e1;
            if (e1 > 0) out.push_back({static_cast<long>(p), e1});
            if (e - e1 > 0) out.push_back({static_cast<long>(p), e - e1});
        }
    }
    if (n > 1) {
        const long long p = n;
        const long r = static_cast<long>(p % 5);
        if (p == 5) {
            out.push_back({5, 1});
        } else if (r == 2 || r == 3) {
            throw std::logic_error("factor_ideal: inert prime with odd norm valuation");
        } else {
            out.push_back({static_cast<long>(p), 1});
        }
    }
    return out;
}

Integer sigma_ideal(const TotPosIndex& nu, int k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("sigma_ideal: weight must be even, >= 2");
    const auto factors = factor_ideal(nu.a, nu.b);
    Integer result(1);
    for (const auto& f : factors) {
        if (f.exponent == 0) continue;
        Integer geo(0);
        const Integer q = pow_integer(Integer(f.residue_norm), static_cast<unsigned long>(k - 1));
        Integer term(1);
        for (int j = 0; j <= f.exponent; ++j) {
            geo += term;
            term *= q;
        }
        result *= geo;
    }
    return result;
}

}  // namespace bklab
