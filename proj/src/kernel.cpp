#include "bklab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bklab/numerics.hpp"

namespace bklab {

namespace {

constexpr double kYFloor = 0.86602540378443864676;

struct CompiledOnb {
    int weight = 0;
    Eigen::MatrixXd transform;
    std::vector<CompiledForm> forms;
};

CompiledOnb compile(const OrthonormalBasis& onb) {
    CompiledOnb c;
    c.weight = onb.weight;
    c.transform = onb.transform;
    c.forms.reserve(onb.basis.forms.size());
    for (const auto& f : onb.basis.forms) c.forms.push_back(CompiledForm::from(f));
    return c;
}

double point_value(const CompiledOnb& onb, const HPoint& z) {
    const int d = static_cast<int>(onb.forms.size());
    if (d == 0) return 0.0;
    std::vector<std::complex<double>> g(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) g[static_cast<std::size_t>(j)] = onb.forms[static_cast<std::size_t>(j)].eval_scaled(z);
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        double re = 0.0, im = 0.0;
        for (int j = 0; j <= i; ++j) {  // transform is lower triangular
            const double t = onb.transform(i, j);
            re += t * g[static_cast<std::size_t>(j)].real();
            im += t * g[static_cast<std::size_t>(j)].imag();
        }
        total += re * re + im * im;
    }
    return total;
}

void check_floor(const CompiledOnb& onb, double y) {
    if (onb.forms.empty()) return;
    const double t_norm = onb.transform.cwiseAbs().maxCoeff();
    for (const auto& f : onb.forms)
        if (!(f.tail_bound_scaled(y) * t_norm <= 1e-8))
            throw InsufficientTruncation("bergman: evaluation floor violated in region",
                                         recommended_truncation(onb.weight, y));
}

std::complex<double> pow_int(std::complex<double> base, int e) {
    std::complex<double> acc(1.0, 0.0);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// a0 * d - b0 * c = 1 for coprime (c, d).
std::pair<long, long> unimodular_completion(long c, long d) {
    long old_r = d, r = -c;
    long old_s = 1, s = 0;
    long old_t = 0, t = 1;
    while (r != 0) {
        const long q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r == -1) {
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_s, old_t};  // a0 = old_s, b0 = old_t
}

}  // namespace

double bergman_point(const OrthonormalBasis& onb, const HPoint& z) {
    const CompiledOnb c = compile(onb);
    check_floor(c, z.y);
    return point_value(c, z);
}

double scan_y_auto(int k) { return std::max(4.0, k / 2.0); }

SeriesResult bergman_series(int k, const HPoint& z, int cutoff_M, double tol_rel) {
    if (k < 8 || k % 2 != 0)
        throw std::invalid_argument("bergman_series: weight must be even, >= 8");
    if (cutoff_M < 1) throw std::invalid_argument("bergman_series: cutoff must be >= 1");

    const double y = z.y;
    const std::complex<double> zc(z.x, z.y);
    const std::complex<double> zbar = std::conj(zc);
    const double term_floor = 1e-3 * tol_rel;

    std::vector<std::complex<double>> terms;
    double tail = 0.0;
    double shell_mass = 0.0;

    // One translation family: gamma z = w0 + t, with prefactor j = c z + d.
    // Term in stable form: [ ((w0 + t - zbar)/(2i)) * j / y ]^{-k}; the base
    // has modulus >= 1, with equality only on the stabilizer.
    auto add_family = [&](const std::complex<double>& w0, const std::complex<double>& j,
                          double& family_abs) {
        const long t0 = std::lround(z.x - w0.real());
        const int t_cap = 4000;
        double side_abs[2] = {0.0, 0.0};
        long reach[2] = {0, 0};
        for (int dir = 0; dir < 2; ++dir) {
            for (long s = (dir == 0 ? 0 : 1); s <= t_cap; ++s) {
                const long t = (dir == 0) ? t0 + s : t0 - s;
                const std::complex<double> base =
                    ((w0 + static_cast<double>(t) - zbar) / std::complex<double>(0.0, 2.0)) * j / y;
                const std::complex<double> term = pow_int(1.0 / base, k);
                const double mag = std::abs(term);
                terms.push_back(term);
                family_abs += mag;
                side_abs[dir] += mag;
                reach[dir] = s;
                if (mag < term_floor && s > 2) break;
            }
        }
        // Dropped translations: |term| <= (2y/(T |j|))^k summed geometrically.
        const double jy = std::abs(j) / (2.0 * y);
        for (int dir = 0; dir < 2; ++dir) {
            const double T = static_cast<double>(reach[dir] + 1);
            const double first = std::pow(std::max(T * jy, 1.0), -static_cast<double>(k));
            tail += first * (k > 2 ? static_cast<double>(k) / (k - 2) : 2.0);
        }
    };

    double ignored = 0.0;
    add_family(zc, std::complex<double>(1.0, 0.0), ignored);  // bottom row (0, 1)

    for (long c = 1; c <= cutoff_M; ++c) {
        for (long d = -cutoff_M; d <= cutoff_M; ++d) {
            if (std::gcd(c, std::labs(d)) != 1) continue;
            const auto [a0, b0] = unimodular_completion(c, d);
            const std::complex<double> j = static_cast<double>(c) * zc + static_cast<double>(d);
            const std::complex<double> w0 =
                (static_cast<double>(a0) * zc + static_cast<double>(b0)) / j;
            double family_abs = 0.0;
            add_family(w0, j, family_abs);
            if (std::max(c, std::labs(d)) == cutoff_M) shell_mass += family_abs;
        }
    }

    // Families beyond the cutoff decay shell-to-shell like (M/(M+1))^k-ish
    // with growing multiplicity; M/(k-3) of the boundary shell is a
    // serviceable overestimate at the weights used here.
    tail += shell_mass * static_cast<double>(cutoff_M) / std::max(1, k - 3);

    const long term_count = static_cast<long>(terms.size());
    const std::complex<double> total = stable_sum(std::move(terms));
    const double norm = (k - 1) / (4.0 * kPi);

    SeriesResult out;
    out.value = norm * total.real();
    out.tail_estimate = norm * tail;
    out.imag_residual = std::abs(total.imag()) / std::max(1.0, std::abs(total.real()));
    out.terms = term_count;

    const double scale = std::max(std::abs(out.value), norm);
    if (!(out.imag_residual <= 1e-10))
        throw NonrealResult("bergman_series: imaginary residue above 1e-10");
    if (!(out.tail_estimate <= tol_rel * scale * 10.0))
        throw CutoffInsufficient("bergman_series: truncation tail above tolerance; raise cutoff");
    return out;
}

ScanReport sup_scan(const OrthonormalBasis& onb, const ScanRegion& region, int nx, int ny,
                    bool refine, const std::function<void(const HPoint&, double)>& visitor) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("sup_scan: grid must be at least 2x2");
    const double y_lo = std::max(region.y_lo, kYFloor);
    const double y_hi = region.y_hi;
    if (!(y_hi > y_lo)) throw RegionEmpty("sup_scan: empty height range");

    const CompiledOnb c = compile(onb);
    check_floor(c, y_lo);

    ScanReport report;
    report.weight = onb.weight;
    report.region = {y_lo, y_hi};
    report.nx = nx;
    report.ny = ny;

    long evals = 0;
    auto eval = [&](const HPoint& p) {
        const double v = point_value(c, p);
        ++evals;
        if (visitor) visitor(p, v);
        return v;
    };

    struct Cell {
        double value;
        double x, y;
    };
    std::vector<Cell> cells;
    bool any = false;
    double sup = 0.0;
    HPoint argmax(0.0, y_lo);

    for (int i = 0; i < nx; ++i) {
        const double x = 0.5 * i / (nx - 1);
        for (int j = 0; j < ny; ++j) {
            const double y = y_lo + (y_hi - y_lo) * j / (ny - 1);
            if (x * x + y * y < 1.0 - 1e-12) continue;  // outside the domain
            const HPoint p(x, y);
            const double v = eval(p);
            cells.push_back({v, x, y});
            if (!any || v > sup) {
                any = true;
                sup = v;
                argmax = p;
            }
        }
    }
    if (!any) throw RegionEmpty("sup_scan: no grid point inside the fundamental domain");

    if (refine) {
        std::partial_sort(cells.begin(), cells.begin() + std::min<std::size_t>(5, cells.size()),
                          cells.end(), [](const Cell& a, const Cell& b) { return a.value > b.value; });
        const double dx = 0.5 / (nx - 1);
        const double dy = (y_hi - y_lo) / (ny - 1);
        const std::size_t top = std::min<std::size_t>(5, cells.size());
        for (std::size_t t = 0; t < top; ++t) {
            double x = cells[t].x, y = cells[t].y;
            for (int sweep = 0; sweep < 2; ++sweep) {
                const double xa = std::max(y < 1.0 ? std::sqrt(1.0 - y * y) : 0.0, x - dx);
                const double xb = std::min(0.5, x + dx);
                if (xb > xa) {
                    auto [bx, bv] = golden_section_max(
                        [&](double xx) { return eval(HPoint(xx, y)); }, xa, xb, 28);
                    x = bx;
                    if (bv > sup) {
                        sup = bv;
                        argmax = HPoint(x, y);
                    }
                }
                const double ya = std::max({y_lo, x * x < 1.0 ? std::sqrt(1.0 - x * x) : y_lo, y - dy});
                const double yb = std::min(y_hi, y + dy);
                if (yb > ya) {
                    auto [by, bv] = golden_section_max(
                        [&](double yy) { return eval(HPoint(x, yy)); }, ya, yb, 28);
                    y = by;
                    if (bv > sup) {
                        sup = bv;
                        argmax = HPoint(x, y);
                    }
                }
            }
        }
        report.refined = true;
    }

    report.sup = sup;
    report.argmax = argmax;
    report.evaluations = evals;
    return report;
}

FitReport scaling_fit(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 4) throw DegenerateSamples("scaling_fit: need at least 4 samples");
    std::vector<double> lx, ly;
    for (const auto& [k, v] : samples) {
        if (!(k > 0.0) || !(v > 0.0))
            throw DegenerateSamples("scaling_fit: samples must be positive");
        lx.push_back(std::log(k));
        ly.push_back(std::log(v));
    }
    std::vector<double> sorted = lx;
    std::sort(sorted.begin(), sorted.end());
    if (std::unique(sorted.begin(), sorted.end(),
                    [](double a, double b) { return std::abs(a - b) < 1e-12; }) -
            sorted.begin() < 4)
        throw DegenerateSamples("scaling_fit: need at least 4 distinct k");

    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    FitReport fit;
    fit.exponent = sxy / sxx;
    fit.constant = my - fit.exponent * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.constant + fit.exponent * lx[i]);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    const auto [kmin, kmax] = std::minmax_element(samples.begin(), samples.end());
    fit.k_min = kmin->first;
    fit.k_max = kmax->first;
    fit.samples = static_cast<int>(samples.size());
    return fit;
}

std::vector<EquidistRow> equidist_check(const OrthonormalBasis& onb,
                                        const std::vector<HPoint>& points) {
    const int d = onb.dim();
    if (d == 0) throw DimensionZero("equidist_check: the cusp space is zero-dimensional");
    const CompiledOnb c = compile(onb);
    std::vector<EquidistRow> rows;
    rows.reserve(points.size());
    for (const auto& z : points) {
        check_floor(c, z.y);
        EquidistRow row;
        row.z = z;
        row.value = point_value(c, z);
        row.ratio = row.value * (kPi / 3.0) / d;
        row.deviation = std::abs(row.ratio - 1.0);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bklab
