#include "bklab/modforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "bklab/numerics.hpp"
#include "json.hpp"

namespace bklab {

Rational bernoulli(int m) {
    if (m < 0) throw std::invalid_argument("bernoulli: negative index");
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<int>(cache.size()) <= m) {
        const int n = static_cast<int>(cache.size());
        // sum_{j=0}^{n} C(n+1, j) B_j = 0
        Rational acc(0);
        for (int j = 0; j < n; ++j)
            acc += Rational(binomial(static_cast<unsigned long>(n) + 1,
                                     static_cast<unsigned long>(j))) *
                   cache[static_cast<std::size_t>(j)];
        Rational b = -acc / Rational(static_cast<long>(n) + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[static_cast<std::size_t>(m)];
}

namespace {

Integer sigma(int n, int power) {
    Integer acc(0);
    for (int d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        acc += pow_integer(Integer(d), static_cast<unsigned long>(power));
        const int q = n / d;
        if (q != d) acc += pow_integer(Integer(q), static_cast<unsigned long>(power));
    }
    return acc;
}

}  // namespace

QExpansion eisenstein(int k, int order) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("eisenstein: weight must be even, >= 4");
    if (order < 0) throw std::invalid_argument("eisenstein: negative order");
    QExpansion f(k, order);
    f.a(0) = 1;
    const Rational factor = Rational(-2 * k) / bernoulli(k);
    for (int n = 1; n <= order; ++n) {
        f.a(n) = factor * Rational(sigma(n, k - 1));
        f.a(n).canonicalize();
    }
    return f;
}

QExpansion mul(const QExpansion& f, const QExpansion& g) {
    const int order = std::min(f.order, g.order);
    QExpansion h(f.weight + g.weight, order);
    for (int n = 0; n <= order; ++n) {
        Rational acc(0);
        for (int j = std::max(0, n - g.order); j <= std::min(n, f.order); ++j)
            acc += f.a(j) * g.a(n - j);
        acc.canonicalize();
        h.a(n) = acc;
    }
    return h;
}

QExpansion pow(const QExpansion& f, int e) {
    if (e < 0) throw std::invalid_argument("pow: negative exponent");
    QExpansion acc(0, f.order);
    acc.a(0) = 1;
    for (int i = 0; i < e; ++i) acc = mul(acc, f);
    return acc;
}

QExpansion delta(int order) {
    if (order < 1) throw std::invalid_argument("delta: order must be >= 1");
    const QExpansion e4 = eisenstein(4, order);
    const QExpansion e6 = eisenstein(6, order);
    QExpansion d(12, order);
    const QExpansion a = pow(e4, 3);
    const QExpansion b = pow(e6, 2);
    for (int n = 0; n <= order; ++n) {
        d.a(n) = (a.a(n) - b.a(n)) / 1728;
        d.a(n).canonicalize();
    }
    return d;
}

int dim_cusp(int k) {
    if (k < 0 || k % 2 != 0) throw std::invalid_argument("dim_cusp: weight must be even, >= 0");
    if (k < 12) return 0;
    const int base = k / 12;
    return (k % 12 == 2) ? base - 1 : base;
}

CuspBasis miller_basis(int k, int order) {
    const int d = dim_cusp(k);
    CuspBasis basis;
    basis.weight = k;
    basis.echelon = true;
    if (d == 0) return basis;
    if (order < d)
        throw InsufficientTruncation("miller_basis: truncation below dimension", d);

    const QExpansion e4 = eisenstein(4, order);
    const QExpansion e6 = eisenstein(6, order);
    const QExpansion dl = delta(order);

    // Spanning set: Delta^j * E4^a * E6^b with 12 j + 4 a + 6 b = k. The
    // leading coefficient of the j-th product sits at q^j with value 1.
    QExpansion delta_power = dl;
    for (int j = 1; j <= d; ++j) {
        if (j > 1) delta_power = mul(delta_power, dl);
        const int m = k - 12 * j;
        int b = 0, a = 0;
        if (m % 4 == 0) {
            a = m / 4;
        } else {
            b = 1;
            a = (m - 6) / 4;
        }
        QExpansion form = delta_power;
        if (a > 0) form = mul(form, pow(e4, a));
        if (b > 0) form = mul(form, pow(e6, b));
        basis.forms.push_back(std::move(form));
    }

    // Row-reduce so a_i(f_j) = delta_ij over the first d coefficients.
    for (int j = d - 1; j >= 0; --j) {
        for (int i = 0; i < d; ++i) {
            if (i == j) continue;
            const Rational factor = basis.forms[static_cast<std::size_t>(i)].a(j + 1);
            if (factor == 0) continue;
            QExpansion& target = basis.forms[static_cast<std::size_t>(i)];
            const QExpansion& source = basis.forms[static_cast<std::size_t>(j)];
            for (int n = 0; n <= order; ++n) {
                target.a(n) -= factor * source.a(n);
                target.a(n).canonicalize();
            }
        }
    }
    return basis;
}

int recommended_truncation(int k, double y_min) {
    // The tail certificate is C n^{k-1} e^{-2 pi n y} with C anchored near
    // n = 1 for echelon bases. Push the truncation until that bound beats
    // 1e-10 even after multiplication by the inverse-Cholesky scale, which
    // grows like 1/sqrt of the smallest Petersson norm in the basis,
    // roughly ((4 pi d)^{k-1} / Gamma(k-1))^{1/2}.
    const int d = std::max(1, dim_cusp(k));
    const double c = 2.0 * kPi * y_min;
    const double log_tnorm =
        0.5 * ((k - 1) * std::log(4.0 * kPi * d) - std::lgamma(static_cast<double>(k - 1)));
    const double budget = std::log(1e-10) - std::max(log_tnorm, 0.0) - 10.0;
    int n = static_cast<int>(std::max(1.0, (k - 1) / c));
    while ((k - 1) * std::log(static_cast<double>(n)) - c * n +
               0.5 * k * std::log(std::min(y_min, 1.0)) >
           budget)
        ++n;
    return std::max({2 * d + 8, 16, n + 4});
}

double log_coeff_bound(const QExpansion& f) {
    double best = -std::numeric_limits<double>::infinity();
    for (int n = 1; n <= f.order; ++n) {
        if (f.a(n) == 0) continue;
        best = std::max(best, log_abs(f.a(n)) - (f.weight - 1) * std::log(static_cast<double>(n)));
    }
    if (!std::isfinite(best)) return best;  // zero form
    return best + std::log(10.0);           // safety factor
}

double evaluation_tail_bound(const QExpansion& f, double y) {
    const double log_c = log_coeff_bound(f);
    if (!std::isfinite(log_c)) return 0.0;
    const int n1 = f.order + 1;
    const double ratio = (f.weight - 1) * std::log((n1 + 1.0) / n1) - 2.0 * kPi * y;
    if (ratio > std::log(0.99)) return std::numeric_limits<double>::infinity();
    const double log_t1 = log_c + (f.weight - 1) * std::log(static_cast<double>(n1)) - 2.0 * kPi * y * n1;
    return std::exp(log_t1) / (1.0 - std::exp(ratio));
}

CompiledForm CompiledForm::from(const QExpansion& f) {
    CompiledForm c;
    c.weight = f.weight;
    const std::size_t n = f.coeffs.size();
    c.coeff.resize(n);
    c.log_coeff.resize(n);
    c.sign.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& a = f.coeffs[i];
        if (a == 0) {
            c.coeff[i] = 0.0;
            c.log_coeff[i] = -std::numeric_limits<double>::infinity();
            c.sign[i] = 0.0;
        } else {
            c.coeff[i] = to_double(a);
            c.log_coeff[i] = log_abs(a);
            c.sign[i] = a < 0 ? -1.0 : 1.0;
        }
    }
    c.log_growth = log_coeff_bound(f);
    return c;
}

std::complex<double> CompiledForm::eval_scaled(const HPoint& p) const {
    const double scale = std::exp(0.5 * weight * std::log(p.y));
    const std::complex<double> q =
        std::exp(std::complex<double>(-2.0 * kPi * p.y, 2.0 * kPi * p.x));
    std::complex<double> qn(1.0, 0.0);
    KahanSum re, im;
    const int n_max = order();
    for (int n = 0; n <= n_max; ++n, qn *= q) {
        if (sign[static_cast<std::size_t>(n)] == 0.0) continue;
        const double an = coeff[static_cast<std::size_t>(n)];
        std::complex<double> term;
        if (std::isfinite(an) && (qn.real() != 0.0 || qn.imag() != 0.0 || n == 0)) {
            term = an * qn * scale;
        } else {
            const double log_mag =
                log_coeff[static_cast<std::size_t>(n)] - 2.0 * kPi * p.y * n +
                0.5 * weight * std::log(p.y);
            if (log_mag < -740.0) continue;
            const double mag = std::exp(log_mag) * sign[static_cast<std::size_t>(n)];
            const double angle = 2.0 * kPi * p.x * n;
            term = {mag * std::cos(angle), mag * std::sin(angle)};
        }
        re.add(term.real());
        im.add(term.imag());
    }
    return {re.value(), im.value()};
}

double CompiledForm::tail_bound_scaled(double y) const {
    if (!std::isfinite(log_growth)) return 0.0;
    const int n1 = order() + 1;
    const double ratio = (weight - 1) * std::log((n1 + 1.0) / n1) - 2.0 * kPi * y;
    if (ratio > std::log(0.99)) return std::numeric_limits<double>::infinity();
    const double log_t1 = log_growth + (weight - 1) * std::log(static_cast<double>(n1)) -
                          2.0 * kPi * y * n1 + 0.5 * weight * std::log(y);
    return std::exp(log_t1) / (1.0 - std::exp(ratio));
}

namespace {

int certified_order(const QExpansion& f, double y, double tol) {
    const double log_c = log_coeff_bound(f);
    for (int n = f.order + 1; n < 200000; ++n) {
        const double ratio = (f.weight - 1) * std::log((n + 2.0) / (n + 1.0)) - 2.0 * kPi * y;
        if (ratio > std::log(0.99)) continue;
        const double log_t =
            log_c + (f.weight - 1) * std::log(n + 1.0) - 2.0 * kPi * y * (n + 1.0);
        if (std::exp(log_t) / (1.0 - std::exp(ratio)) < tol) return n;
    }
    return 200000;
}

std::complex<double> evaluate_impl(const QExpansion& f, const HPoint& p, double tail_tol,
                                   double log_scale) {
    const double tail = evaluation_tail_bound(f, p.y) * std::exp(log_scale);
    if (!(tail < tail_tol))
        throw InsufficientTruncation("evaluate: certified tail above tolerance at this height",
                                     certified_order(f, p.y, tail_tol * std::exp(-log_scale)));

    const double scale = std::exp(log_scale);
    const std::complex<double> q =
        std::exp(std::complex<double>(-2.0 * kPi * p.y, 2.0 * kPi * p.x));
    std::complex<double> qn(1.0, 0.0);
    KahanSum re, im;
    for (int n = 0; n <= f.order; ++n, qn *= q) {
        if (f.a(n) == 0) continue;
        const double an = to_double(f.a(n));
        std::complex<double> term;
        if (std::isfinite(an) && (qn.real() != 0.0 || qn.imag() != 0.0 || n == 0)) {
            term = an * qn * scale;
        } else {
            // Coefficient or q^n escaped double range; assemble from logs.
            const double log_mag = log_abs(f.a(n)) - 2.0 * kPi * p.y * n + log_scale;
            if (log_mag < -740.0) continue;
            const double mag = std::exp(log_mag) * (f.a(n) < 0 ? -1.0 : 1.0);
            const double angle = 2.0 * kPi * p.x * n;
            term = {mag * std::cos(angle), mag * std::sin(angle)};
        }
        re.add(term.real());
        im.add(term.imag());
    }
    return {re.value(), im.value()};
}

}  // namespace

std::complex<double> evaluate(const QExpansion& f, const HPoint& p, double tail_tol) {
    return evaluate_impl(f, p, tail_tol, 0.0);
}

std::complex<double> evaluate_scaled(const QExpansion& f, const HPoint& p, double tail_tol) {
    return evaluate_impl(f, p, tail_tol, 0.5 * f.weight * std::log(p.y));
}

std::string to_json(const QExpansion& f) {
    nlohmann::json j;
    j["weight"] = f.weight;
    j["N"] = f.order;
    auto& arr = j["coeffs"] = nlohmann::json::array();
    for (const auto& c : f.coeffs) arr.push_back(to_string(c));
    return j.dump();
}

QExpansion qexpansion_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    QExpansion f(j.at("weight").get<int>(), j.at("N").get<int>());
    const auto& arr = j.at("coeffs");
    if (static_cast<int>(arr.size()) != f.order + 1)
        throw std::invalid_argument("qexpansion_from_json: coefficient count does not match N");
    for (int n = 0; n <= f.order; ++n)
        f.a(n) = rational_from_string(arr[static_cast<std::size_t>(n)].get<std::string>());
    return f;
}

}  // namespace bklab
