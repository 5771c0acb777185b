#include "bklab/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bklab/modforms.hpp"
#include "bklab/numerics.hpp"
#include "json.hpp"

namespace bklab {

Rational bernoulli_chi5(int n) {
    if (n < 1) throw std::invalid_argument("bernoulli_chi5: n must be >= 1");
    // B_{n,chi} = f^{n-1} sum_{a=1}^{f} chi(a) B_n(a/f), f = 5,
    // with B_n(x) = sum_j C(n,j) B_j x^{n-j}.
    static const int chi[5] = {0, 1, -1, -1, 1};
    Rational acc(0);
    for (int a = 1; a <= 4; ++a) {
        const Rational x(a, 5);
        std::vector<Rational> powers(static_cast<std::size_t>(n) + 1);
        powers[0] = 1;
        for (int i = 1; i <= n; ++i)
            powers[static_cast<std::size_t>(i)] = powers[static_cast<std::size_t>(i) - 1] * x;
        Rational bnx(0);
        for (int j = 0; j <= n; ++j)
            bnx += Rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(j))) *
                   bernoulli(j) * powers[static_cast<std::size_t>(n - j)];
        acc += chi[a] * bnx;
    }
    Rational out = acc * Rational(pow_integer(Integer(5), static_cast<unsigned long>(n - 1)));
    out.canonicalize();
    return out;
}

Rational zeta_K_neg(int k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("zeta_K_neg: weight must be even, >= 2");
    // zeta_K(1-k) = zeta(1-k) L(1-k, chi_5) = (-B_k/k)(-B_{k,chi}/k).
    Rational out = bernoulli(k) * bernoulli_chi5(k) / Rational(k) / Rational(k);
    out.canonicalize();
    return out;
}

const Rational& HilbertExpansion::at(const TotPosIndex& nu) const {
    static const Rational zero(0);
    auto it = coeffs.find(nu);
    return it == coeffs.end() ? zero : it->second;
}

bool HilbertExpansion::galois_symmetric() const {
    for (const auto& [nu, c] : coeffs)
        if (at(nu.conjugate()) != c) return false;
    return true;
}

HilbertExpansion eisenstein_hmf(int k, long trace_cutoff) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("eisenstein_hmf: weight must be even, >= 2");
    const Rational zk = zeta_K_neg(k);
    if (zk == 0) throw std::domain_error("eisenstein_hmf: zeta value vanished");
    const Rational kappa = Rational(4) / zk;

    HilbertExpansion f;
    f.weight = k;
    f.trace_cutoff = trace_cutoff;
    f.constant_term = 1;
    for (const auto& nu : enumerate_indices(trace_cutoff)) {
        Rational c = kappa * Rational(sigma_ideal(nu, k));
        c.canonicalize();
        f.coeffs.emplace(nu, std::move(c));
    }
    return f;
}

HilbertExpansion mul(const HilbertExpansion& f, const HilbertExpansion& g) {
    HilbertExpansion h;
    h.weight = f.weight + g.weight;
    h.trace_cutoff = std::min(f.trace_cutoff, g.trace_cutoff);
    h.constant_term = f.constant_term * g.constant_term;
    h.constant_term.canonicalize();

    auto bump = [&](const TotPosIndex& nu, const Rational& v) {
        if (nu.b > h.trace_cutoff) return;
        auto [it, inserted] = h.coeffs.emplace(nu, v);
        if (!inserted) it->second += v;
    };
    if (g.constant_term != 0)
        for (const auto& [nu, c] : f.coeffs) bump(nu, c * g.constant_term);
    if (f.constant_term != 0)
        for (const auto& [nu, c] : g.coeffs) bump(nu, c * f.constant_term);
    for (const auto& [nu1, c1] : f.coeffs) {
        if (nu1.b >= h.trace_cutoff) continue;
        for (const auto& [nu2, c2] : g.coeffs) {
            if (nu1.b + nu2.b > h.trace_cutoff) continue;
            bump({nu1.a + nu2.a, nu1.b + nu2.b}, c1 * c2);
        }
    }
    for (auto& [nu, c] : h.coeffs) c.canonicalize();
    return h;
}

HilbertExpansion pow(const HilbertExpansion& f, int e) {
    if (e < 0) throw std::invalid_argument("pow: negative exponent");
    HilbertExpansion acc;
    acc.weight = 0;
    acc.trace_cutoff = f.trace_cutoff;
    acc.constant_term = 1;
    for (int i = 0; i < e; ++i) acc = mul(acc, f);
    return acc;
}

HilbertExpansion linear(const Rational& cf, const HilbertExpansion& f, const Rational& cg,
                        const HilbertExpansion& g) {
    if (f.weight != g.weight) throw std::invalid_argument("linear: mixed weights");
    HilbertExpansion h;
    h.weight = f.weight;
    h.trace_cutoff = std::min(f.trace_cutoff, g.trace_cutoff);
    h.constant_term = cf * f.constant_term + cg * g.constant_term;
    h.constant_term.canonicalize();
    for (const auto& [nu, c] : f.coeffs)
        if (nu.b <= h.trace_cutoff) h.coeffs[nu] = cf * c;
    for (const auto& [nu, c] : g.coeffs) {
        if (nu.b > h.trace_cutoff) continue;
        auto [it, inserted] = h.coeffs.emplace(nu, cg * c);
        if (!inserted) it->second += cg * c;
    }
    for (auto& [nu, c] : h.coeffs) c.canonicalize();
    return h;
}

namespace {

// Dense exact row reduction; columns are [constant | sorted indices].
struct SpanMatrix {
    std::vector<TotPosIndex> columns;
    std::vector<std::vector<Rational>> rows;
};

SpanMatrix build_matrix(const std::vector<HilbertExpansion>& forms) {
    if (forms.empty()) throw std::invalid_argument("empty span");
    const int k = forms.front().weight;
    const long T = forms.front().trace_cutoff;
    for (const auto& f : forms)
        if (f.weight != k || f.trace_cutoff != T)
            throw std::invalid_argument("span: mixed weights or cutoffs");
    SpanMatrix m;
    m.columns = enumerate_indices(T);
    for (const auto& f : forms) {
        std::vector<Rational> row;
        row.reserve(m.columns.size() + 1);
        row.push_back(f.constant_term);
        for (const auto& nu : m.columns) row.push_back(f.at(nu));
        m.rows.push_back(std::move(row));
    }
    return m;
}

// Gauss-Jordan; returns pivot column per row.
std::vector<std::size_t> reduce(std::vector<std::vector<Rational>>& rows) {
    std::vector<std::size_t> pivots;
    const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        const Rational inv = rows[rank][col];
        for (auto& v : rows[rank]) {
            v /= inv;
            v.canonicalize();
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Rational factor = rows[r][col];
            for (std::size_t cidx = 0; cidx < ncols; ++cidx) {
                rows[r][cidx] -= factor * rows[rank][cidx];
                rows[r][cidx].canonicalize();
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

}  // namespace

std::vector<HilbertExpansion> cusp_project(const std::vector<HilbertExpansion>& forms) {
    SpanMatrix m = build_matrix(forms);
    const auto pivots = reduce(m.rows);
    if (m.rows.empty()) throw SpanDegenerate("cusp_project: the span is zero");

    const int k = forms.front().weight;
    const long T = forms.front().trace_cutoff;
    std::vector<HilbertExpansion> out;
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        if (pivots[r] == 0) continue;  // the Eisenstein direction
        HilbertExpansion f;
        f.weight = k;
        f.trace_cutoff = T;
        f.constant_term = m.rows[r][0];  // identically zero after reduction
        for (std::size_t c = 0; c < m.columns.size(); ++c)
            if (m.rows[r][c + 1] != 0) f.coeffs[m.columns[c]] = m.rows[r][c + 1];
        out.push_back(std::move(f));
    }
    return out;
}

int span_rank(const std::vector<HilbertExpansion>& forms) {
    SpanMatrix m = build_matrix(forms);
    return static_cast<int>(reduce(m.rows).size());
}

std::pair<int, int> dim_hilbert_series(int k) {
    if (k < 0 || k % 2 != 0)
        throw std::invalid_argument("dim_hilbert_series: weight must be even, >= 0");
    int m = 0;
    for (int c = 0; 10 * c <= k; ++c)
        for (int b = 0; 10 * c + 6 * b <= k; ++b)
            if ((k - 10 * c - 6 * b) % 2 == 0) ++m;
    const int s = (k >= 2) ? m - 1 : 0;
    return {m, s};
}

std::complex<double> evaluate_hmf(const HilbertExpansion& f, const HnPoint& z, double tail_tol) {
    if (z.n() != 2) throw std::invalid_argument("evaluate_hmf: needs a 2-factor point");
    const double y_min = std::min(z.coords[0].y, z.coords[1].y);

    // Empirical growth constant over trace shells, model (1 + t)^{2k}.
    double log_c = -std::numeric_limits<double>::infinity();
    for (const auto& [nu, c] : f.coeffs) {
        if (c == 0) continue;
        log_c = std::max(log_c, log_abs(c) - 2.0 * f.weight * std::log1p(static_cast<double>(nu.b)));
    }
    if (std::isfinite(log_c)) {
        log_c += std::log(10.0);  // safety factor
        auto shell_bound = [&](long t) {
            return std::exp(log_c + std::log(std::sqrt(5.0) * (t + 1) + 2.0) +
                            2.0 * f.weight * std::log1p(static_cast<double>(t)) -
                            2.0 * kPi * y_min * static_cast<double>(t));
        };
        auto certified = [&](long T) {
            const double ratio =
                (2.0 * f.weight + 1.0) * std::log((T + 3.0) / (T + 2.0)) - 2.0 * kPi * y_min;
            if (ratio > std::log(0.99)) return std::numeric_limits<double>::infinity();
            return shell_bound(T + 1) / (1.0 - std::exp(ratio));
        };
        if (!(certified(f.trace_cutoff) < tail_tol)) {
            long T = f.trace_cutoff + 1;
            while (T < 100000 && !(certified(T) < tail_tol)) ++T;
            throw InsufficientTruncation("evaluate_hmf: certified tail above tolerance",
                                         static_cast<int>(T));
        }
    }

    KahanSum re, im;
    re.add(to_double(f.constant_term));
    for (const auto& [nu, c] : f.coeffs) {
        if (c == 0) continue;
        const double s1 = embed_index(nu, 1);
        const double s2 = embed_index(nu, 2);
        const double mag =
            to_double(c) * std::exp(-2.0 * kPi * (s1 * z.coords[0].y + s2 * z.coords[1].y));
        const double angle = 2.0 * kPi * (s1 * z.coords[0].x + s2 * z.coords[1].x);
        re.add(mag * std::cos(angle));
        im.add(mag * std::sin(angle));
    }
    return {re.value(), im.value()};
}

double hmf_density(const HilbertExpansion& f, const HnPoint& z, double tail_tol) {
    const std::complex<double> v = evaluate_hmf(f, z, tail_tol);
    return std::pow(z.coords[0].y * z.coords[1].y, f.weight) * std::norm(v);
}

double bergman_ratio_1dim(const HilbertExpansion& f, const HnPoint& z1, const HnPoint& z2) {
    const double num = hmf_density(f, z1);
    const double den = hmf_density(f, z2);
    if (!(den > 1e-290))
        throw DenominatorUnderflow("bergman_ratio_1dim: reference density underflowed");
    return num / den;
}

std::string to_json(const HilbertExpansion& f) {
    nlohmann::json j;
    j["weight"] = f.weight;
    j["T"] = f.trace_cutoff;
    j["constant"] = to_string(f.constant_term);
    auto& arr = j["entries"] = nlohmann::json::array();
    for (const auto& [nu, c] : f.coeffs)
        arr.push_back(nlohmann::json::array({nu.a, nu.b, to_string(c)}));
    return j.dump();
}

HilbertExpansion hilbert_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    HilbertExpansion f;
    f.weight = j.at("weight").get<int>();
    f.trace_cutoff = j.at("T").get<long>();
    f.constant_term = rational_from_string(j.at("constant").get<std::string>());
    for (const auto& e : j.at("entries"))
        f.coeffs[{e.at(0).get<long>(), e.at(1).get<long>()}] =
            rational_from_string(e.at(2).get<std::string>());
    return f;
}

}  // namespace bklab
