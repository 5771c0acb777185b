#include "bklab/petersson.hpp"

#include <cmath>
#include <limits>

#include "bklab/numerics.hpp"

namespace bklab {

double gram_y_top(int k) {
    // Diagonal integrand e^{-4 pi y} y^{k-2} peaks at (k-2)/(4 pi); truncate
    // at 2.2x the peak where the remaining mass is exponentially small.
    return std::max(4.0, 2.2 * (k - 2) / (4.0 * kPi));
}

namespace {

constexpr double kYFloor = 0.86602540378443864676;  // sqrt(3)/2

// Largest Fourier index whose term is within e^{-42} of the dominant one at
// the lowest height of the region; everything past it is invisible to the
// x-quadrature.
int effective_length(const std::vector<CompiledForm>& forms, double y) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t n_max = 0;
    for (const auto& f : forms) n_max = std::max(n_max, f.coeff.size());
    std::vector<double> shell(n_max, -std::numeric_limits<double>::infinity());
    for (const auto& f : forms)
        for (std::size_t n = 1; n < f.coeff.size(); ++n) {
            const double lm = f.log_coeff[n] - 2.0 * kPi * y * static_cast<double>(n);
            shell[n] = std::max(shell[n], lm);
            best = std::max(best, lm);
        }
    int eff = 1;
    for (std::size_t n = 1; n < n_max; ++n)
        if (shell[n] > best - 42.0) eff = static_cast<int>(n);
    return eff;
}

// One tensor pass over the truncated fundamental domain.
Eigen::MatrixXd quadrature_pass(const std::vector<CompiledForm>& forms, int y_order,
                                int x_order, double y_top, double panel_height) {
    const int d = static_cast<int>(forms.size());
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(d, d);

    // Panel boundaries: the circle-bounded slab (split finer; the x-interval
    // endpoint sqrt(1 - y^2) is only C^0 at the floor), then unit-ish panels.
    std::vector<std::pair<double, double>> panels;
    for (int s = 0; s < 4; ++s) {
        const double a = kYFloor + (1.0 - kYFloor) * s / 4.0;
        const double b = kYFloor + (1.0 - kYFloor) * (s + 1) / 4.0;
        panels.emplace_back(a, b);
    }
    for (double a = 1.0; a < y_top; a += panel_height)
        panels.emplace_back(a, std::min(a + panel_height, y_top));

    const auto& gy = gauss_legendre(y_order);
    const auto& gx = gauss_legendre(x_order);

    std::vector<std::complex<double>> vals(static_cast<std::size_t>(d));
    std::vector<Eigen::MatrixXd> panel_sums;
    panel_sums.reserve(panels.size());

    for (const auto& [ya, yb] : panels) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
        for (int iy = 0; iy < y_order; ++iy) {
            const double y = 0.5 * (ya + yb) + 0.5 * (yb - ya) * gy.nodes[iy];
            const double wy = 0.5 * (yb - ya) * gy.weights[iy];
            // x runs over half the symmetric range; factor 2 restores it.
            const double xa = (y < 1.0) ? std::sqrt(std::max(0.0, 1.0 - y * y)) : 0.0;
            const double xb = 0.5;
            if (xa >= xb) continue;
            for (int ix = 0; ix < x_order; ++ix) {
                const double x = 0.5 * (xa + xb) + 0.5 * (xb - xa) * gx.nodes[ix];
                const double wx = 0.5 * (xb - xa) * gx.weights[ix];
                const HPoint p(x, y);
                for (int i = 0; i < d; ++i)
                    vals[static_cast<std::size_t>(i)] =
                        forms[static_cast<std::size_t>(i)].eval_scaled(p);
                const double w = 2.0 * wx * wy / (y * y);
                for (int i = 0; i < d; ++i) {
                    const auto& gi = vals[static_cast<std::size_t>(i)];
                    for (int j = 0; j <= i; ++j) {
                        const auto& gj = vals[static_cast<std::size_t>(j)];
                        acc(i, j) += w * (gi.real() * gj.real() + gi.imag() * gj.imag());
                    }
                }
            }
        }
        panel_sums.push_back(acc);
    }

    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) {
            std::vector<double> terms;
            terms.reserve(panel_sums.size());
            for (const auto& m : panel_sums) terms.push_back(m(i, j));
            total(i, j) = stable_sum(std::move(terms));
            total(j, i) = total(i, j);
        }
    return total;
}

// Exact contribution of the strip y > Y, where the x-average kills all
// off-diagonal Fourier modes:
//   sum_n a_n^(i) a_n^(j) int_Y^inf e^{-4 pi n y} y^{k-2} dy.
Eigen::MatrixXd strip_tail(const std::vector<CompiledForm>& forms, int k, double y_top) {
    const int d = static_cast<int>(forms.size());
    Eigen::MatrixXd tail = Eigen::MatrixXd::Zero(d, d);
    std::size_t n_max = 0;
    for (const auto& f : forms) n_max = std::max(n_max, f.coeff.size());

    // log of int_Y^inf e^{-a y} y^m dy via the finite integration-by-parts sum.
    auto log_upper = [&](double a, int m) {
        double term = 1.0 / a;  // relative to Y^m e^{-aY}
        double s = term;
        for (int j = 0; j < m; ++j) {
            term *= (m - j) / (a * y_top);
            s += term;
            if (term < 1e-18 * s) break;
        }
        return -a * y_top + m * std::log(y_top) + std::log(s);
    };

    for (std::size_t n = 1; n < n_max; ++n) {
        const double log_in = log_upper(4.0 * kPi * static_cast<double>(n), k - 2);
        bool alive = false;
        for (int i = 0; i < d; ++i) {
            const auto& fi = forms[static_cast<std::size_t>(i)];
            if (n >= fi.coeff.size() || fi.sign[n] == 0.0) continue;
            for (int j = 0; j <= i; ++j) {
                const auto& fj = forms[static_cast<std::size_t>(j)];
                if (n >= fj.coeff.size() || fj.sign[n] == 0.0) continue;
                const double log_mag = fi.log_coeff[n] + fj.log_coeff[n] + log_in;
                if (log_mag < -740.0) continue;
                alive = true;
                tail(i, j) += fi.sign[n] * fj.sign[n] * std::exp(log_mag);
            }
        }
        if (!alive && n > 4) break;
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) tail(j, i) = tail(i, j);
    return tail;
}

}  // namespace

GramMatrix gram(const CuspBasis& basis, const QuadParams& params) {
    if (!basis.echelon) throw std::invalid_argument("gram: basis must be echelon");
    const int d = basis.dim();
    const int k = basis.weight;
    GramMatrix out;
    out.weight = k;
    out.entries = Eigen::MatrixXd::Zero(d, d);
    out.quad_error = Eigen::MatrixXd::Zero(d, d);
    if (d == 0) return out;

    std::vector<CompiledForm> forms;
    forms.reserve(static_cast<std::size_t>(d));
    for (const auto& f : basis.forms) forms.push_back(CompiledForm::from(f));

    // Truncation must certify evaluation down at the domain floor.
    for (const auto& f : forms) {
        const double tail = f.tail_bound_scaled(kYFloor);
        const double peak = std::exp(f.log_growth + (k - 1) * std::log((k - 1) / (2.0 * kPi * kYFloor)) -
                                     (k - 1) + 0.5 * k * std::log(kYFloor));
        if (!(tail <= 1e-10 * std::max(peak, 1e-300)))
            throw InsufficientTruncation("gram: expansion order cannot certify the domain floor",
                                         recommended_truncation(k));
    }

    const double y_top = params.y_top > 0.0 ? params.y_top : gram_y_top(k);
    int x_order = params.x_order;
    if (x_order <= 0) {
        const int eff = effective_length(forms, kYFloor);
        x_order = std::max(24, static_cast<int>(std::ceil(0.8 * eff)) + 16);
    }

    const Eigen::MatrixXd tail = strip_tail(forms, k, y_top);
    const Eigen::MatrixXd coarse =
        quadrature_pass(forms, params.y_order, x_order, y_top, params.panel_height);

    Eigen::MatrixXd fine = coarse;
    if (params.estimate_error)
        fine = quadrature_pass(forms, 2 * params.y_order, 2 * x_order, y_top,
                               params.panel_height);

    out.entries = fine + tail;
    out.quad_error = (fine - coarse).cwiseAbs();

    for (int i = 0; i < d; ++i) {
        if (!(out.entries(i, i) > 0.0))
            throw NotPositiveDefinite("gram: nonpositive diagonal entry; refine quadrature");
        if (std::abs(tail(i, i)) > 0.1 * std::abs(out.entries(i, i)))
            throw TailDominates("gram: strip tail dominates an entry; raise y_top");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(out.entries);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("gram: matrix not positive definite; refine quadrature");
    return out;
}

OrthonormalBasis orthonormalize(const CuspBasis& basis, const GramMatrix& g) {
    const int d = basis.dim();
    if (g.entries.rows() != d || g.entries.cols() != d)
        throw std::invalid_argument("orthonormalize: dimension mismatch");
    OrthonormalBasis out;
    out.weight = basis.weight;
    out.basis = basis;
    if (d == 0) {
        out.transform = Eigen::MatrixXd::Zero(0, 0);
        return out;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(g.entries);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("orthonormalize: Cholesky failed");
    const Eigen::MatrixXd L = llt.matrixL();
    out.transform = L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(d, d));

    const double residual =
        (out.transform * g.entries * out.transform.transpose() - Eigen::MatrixXd::Identity(d, d))
            .cwiseAbs()
            .maxCoeff();
    if (!(residual <= 1e-10))
        throw NotPositiveDefinite("orthonormalize: residual above 1e-10");
    return out;
}

OrthonormalBasis orthonormal_basis(int k, const QuadParams& params) {
    const CuspBasis basis = miller_basis(k, recommended_truncation(k));
    try {
        return orthonormalize(basis, gram(basis, params));
    } catch (const NotPositiveDefinite&) {
        QuadParams refined = params;
        refined.y_order = 2 * std::max(params.y_order, 20);
        refined.x_order = 0;
        return orthonormalize(basis, gram(basis, refined));
    }
}

}  // namespace bklab
