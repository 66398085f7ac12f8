#include "mst/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mst/errors.hpp"
#include "mst/spacings.hpp"

namespace mst {

std::int64_t HistogramGrid2D::min_count() const {
    std::int64_t m = counts.empty() ? 0 : counts.front();
    for (std::int64_t c : counts) m = std::min(m, c);
    return m;
}

double HistogramGrid2D::in_bounds_fraction() const {
    return total == 0 ? 0.0
                      : static_cast<double>(total - out_of_bounds) /
                            static_cast<double>(total);
}

HistogramGrid2D estimate_density(const SamplePool& pool, Rect bounds, int nx,
                                 int ny) {
    if (bounds.x1 <= bounds.x0 || bounds.y1 <= bounds.y0) {
        throw DegenerateBounds();
    }
    HistogramGrid2D h;
    h.bounds = bounds;
    h.nx = nx;
    h.ny = ny;
    h.counts.assign(static_cast<std::size_t>(nx) * ny, 0);
    h.total = static_cast<std::int64_t>(pool.samples.size());
    const double wx = (bounds.x1 - bounds.x0) / nx;
    const double wy = (bounds.y1 - bounds.y0) / ny;
    for (Complex z : pool.samples) {
        const int ix = static_cast<int>(std::floor((z.real() - bounds.x0) / wx));
        const int iy = static_cast<int>(std::floor((z.imag() - bounds.y0) / wy));
        if (ix < 0 || ix >= nx || iy < 0 || iy >= ny) {
            h.out_of_bounds += 1;
        } else {
            h.counts[static_cast<std::size_t>(iy) * nx + ix] += 1;
        }
    }
    const double cell = wx * wy;
    const double n = static_cast<double>(h.total);
    double l2 = 0.0;
    for (std::int64_t c : h.counts) {
        const double d = static_cast<double>(c) / (n * cell);
        l2 += d * d * cell;
    }
    h.l2_norm = l2;
    return h;
}

CoverageReport support_coverage(const SamplePool& pool, double r_min,
                                double r_max, int n_radial, int n_angular) {
    if (!(0.0 < r_min && r_min < r_max)) {
        throw ConfigError("need 0 < r_min < r_max");
    }
    CoverageReport rep;
    rep.r_min = r_min;
    rep.r_max = r_max;
    rep.n_radial = n_radial;
    rep.n_angular = n_angular;
    rep.hits.assign(static_cast<std::size_t>(n_radial) * n_angular, 0);
    const double wr = (r_max - r_min) / n_radial;
    const double wa = 2.0 * std::numbers::pi / n_angular;
    for (Complex z : pool.samples) {
        const double r = std::abs(z);
        if (r < r_min || r >= r_max) continue;
        const int ir = static_cast<int>((r - r_min) / wr);
        int ia = static_cast<int>((std::arg(z) + std::numbers::pi) / wa);
        if (ia >= n_angular) ia = n_angular - 1;
        if (ir >= 0 && ir < n_radial) {
            rep.hits[static_cast<std::size_t>(ir) * n_angular + ia] += 1;
        }
    }
    std::int64_t occupied = 0;
    for (std::int64_t h : rep.hits) occupied += (h > 0);
    rep.coverage =
        static_cast<double>(occupied) / static_cast<double>(rep.hits.size());
    return rep;
}

namespace {

Complex ecf_over(const Complex* z, std::size_t n, Complex t) {
    const double tr = t.real(), ti = t.imag();
    double cr = 0.0, ci = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = tr * z[i].real() + ti * z[i].imag();
        cr += std::cos(phase);
        ci += std::sin(phase);
    }
    return Complex(cr, ci) / static_cast<double>(n);
}

}  // namespace

ECFProbe empirical_cf(const SamplePool& pool, Complex t) {
    if (pool.samples.empty()) throw ConfigError("empty pool");
    const std::size_t n = pool.samples.size();
    return ECFProbe{t, ecf_over(pool.samples.data(), n, t),
                    n, 1.0 / std::sqrt(static_cast<double>(n))};
}

CfResidual check_cf_fixed_point(const SamplePool& pool, Complex t,
                                int mc_rounds, RandomStream& rng) {
    if (pool.samples.empty()) throw ConfigError("empty pool");
    const int m = pool.m;
    const Complex lam_bar = std::conj(pool.lambda);
    constexpr int kBlocks = 16;
    constexpr std::size_t kFactorSub = 64;
    const std::size_t n = pool.samples.size();
    const std::size_t block = std::max<std::size_t>(1, n / kBlocks);
    const int rounds_per_block = std::max(1, mc_rounds / kBlocks);

    std::vector<Complex> resid_b;
    std::vector<Complex> sub(kFactorSub);
    for (int b = 0; b < kBlocks; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * block;
        const std::size_t end = (b == kBlocks - 1) ? n : begin + block;
        const Complex* bz = pool.samples.data() + begin;
        const std::size_t bn = end - begin;
        const Complex lhs = ecf_over(bz, bn, t);
        Complex rhs = 0.0;
        for (int r = 0; r < rounds_per_block; ++r) {
            SpacingVector v = sample_spacings(m, rng);
            Complex prod = 1.0;
            for (double x : v.values) {
                // t V^conj(lambda); V real positive, principal log.
                const double lx = std::log(x);
                const double mod = std::exp(lam_bar.real() * lx);
                const Complex shrink(mod * std::cos(lam_bar.imag() * lx),
                                     mod * std::sin(lam_bar.imag() * lx));
                // Independent subsample per factor keeps the product unbiased
                // for the product of block ECFs.
                for (auto& s : sub) s = bz[rng.below(bn)];
                prod *= ecf_over(sub.data(), sub.size(), t * shrink);
            }
            rhs += prod;
        }
        rhs /= static_cast<double>(rounds_per_block);
        resid_b.push_back(lhs - rhs);
    }
    Complex mean = 0.0;
    for (Complex r : resid_b) mean += r;
    mean /= static_cast<double>(resid_b.size());
    double var = 0.0;
    for (Complex r : resid_b) var += std::norm(r - mean);
    var /= static_cast<double>(resid_b.size() - 1);
    CfResidual out;
    out.t = t;
    out.lhs = empirical_cf(pool, t).phi_hat;
    out.rhs = out.lhs - mean;
    out.residual = std::abs(mean);
    out.se = std::sqrt(var / static_cast<double>(resid_b.size()));
    return out;
}

std::vector<PsiPoint> psi_profile(const SamplePool& pool,
                                  const std::vector<double>& radii,
                                  int n_angles) {
    std::vector<PsiPoint> out;
    out.reserve(radii.size());
    for (double r : radii) {
        if (r <= 0.0) throw ConfigError("psi_profile needs positive radii");
        double best = 0.0;
        for (int a = 0; a < n_angles; ++a) {
            const double th = 2.0 * std::numbers::pi * a / n_angles;
            const Complex t(r * std::cos(th), r * std::sin(th));
            best = std::max(best, std::abs(empirical_cf(pool, t).phi_hat));
        }
        out.push_back({r, best});
    }
    return out;
}

namespace {

struct PolyFit {
    double slope = 0.0;
    double quad = 0.0;
};

// Least-squares line and parabola through (x, y).
PolyFit fit_line_and_quad(const std::vector<double>& x,
                          const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    PolyFit f;
    const double dn = static_cast<double>(n);
    f.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    // Quadratic term from the normal equations of y ~ a + b x + c x^2.
    double s3 = 0, s4 = 0, sx2y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x2 = x[i] * x[i];
        s3 += x2 * x[i];
        s4 += x2 * x2;
        sx2y += x2 * y[i];
    }
    const double m11 = dn, m12 = sx, m13 = sxx;
    const double m22 = sxx, m23 = s3, m33 = s4;
    const double b1 = sy, b2 = sxy, b3 = sx2y;
    const double det = m11 * (m22 * m33 - m23 * m23) -
                       m12 * (m12 * m33 - m23 * m13) +
                       m13 * (m12 * m23 - m22 * m13);
    if (std::abs(det) > 1e-300) {
        double a[3][4] = {{m11, m12, m13, b1},
                          {m12, m22, m23, b2},
                          {m13, m23, m33, b3}};
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int r = col + 1; r < 3; ++r) {
                if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
            }
            std::swap(a[piv], a[col]);
            for (int r = col + 1; r < 3; ++r) {
                const double fct = a[r][col] / a[col][col];
                for (int cc = col; cc < 4; ++cc) a[r][cc] -= fct * a[col][cc];
            }
        }
        double coef[3];
        for (int r = 2; r >= 0; --r) {
            double v = a[r][3];
            for (int cc = r + 1; cc < 3; ++cc) v -= a[r][cc] * coef[cc];
            coef[r] = v / a[r][r];
        }
        f.quad = coef[2];
    }
    return f;
}

}  // namespace

TailFit tail_exponent(const SamplePool& pool, double quantile_lo,
                      double quantile_hi, std::uint64_t seed) {
    if (pool.samples.size() < 1000) {
        throw ConfigError("tail fit needs a large pool");
    }
    if (!(0.9 <= quantile_lo && quantile_lo < quantile_hi &&
          quantile_hi <= 0.9999)) {
        throw ConfigError("tail quantile window must lie in [0.9, 0.9999]");
    }
    std::vector<double> mod(pool.samples.size());
    for (std::size_t i = 0; i < mod.size(); ++i) {
        mod[i] = std::abs(pool.samples[i]);
    }
    std::sort(mod.begin(), mod.end());
    const std::size_t n = mod.size();
    const double t_lo = mod[static_cast<std::size_t>(quantile_lo * (n - 1))];
    const double t_hi = mod[static_cast<std::size_t>(quantile_hi * (n - 1))];
    const std::size_t beyond =
        n - static_cast<std::size_t>(
                std::upper_bound(mod.begin(), mod.end(), t_lo) - mod.begin());
    if (beyond < 100) {
        throw InsufficientTail("only " + std::to_string(beyond) +
                               " samples beyond the lower quantile");
    }
    constexpr int kPoints = 30;
    TailFit fit;
    std::vector<std::int64_t> surv_counts(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (kPoints - 1);
        fit.thresholds.push_back(t);
        surv_counts[static_cast<std::size_t>(i)] =
            static_cast<std::int64_t>(n) -
            (std::upper_bound(mod.begin(), mod.end(), t) - mod.begin());
    }
    auto survival_logs = [&](const std::vector<std::int64_t>& counts) {
        std::vector<double> ls;
        ls.reserve(counts.size());
        for (std::int64_t c : counts) {
            ls.push_back(std::log(std::max<std::int64_t>(c, 1) /
                                  static_cast<double>(n)));
        }
        return ls;
    };
    fit.log_survival = survival_logs(surv_counts);
    PolyFit base = fit_line_and_quad(fit.thresholds, fit.log_survival);
    fit.delta_hat = -base.slope;
    fit.curvature = base.quad;

    // Bootstrap over the interval cell counts (equivalent to resampling the
    // empirical measure, far cheaper than resampling raw moduli).
    constexpr int kBoot = 200;
    std::vector<std::int64_t> cells(kPoints + 1);
    cells[0] = static_cast<std::int64_t>(n) - surv_counts[0];
    for (int i = 0; i < kPoints - 1; ++i) {
        cells[static_cast<std::size_t>(i + 1)] =
            surv_counts[static_cast<std::size_t>(i)] -
            surv_counts[static_cast<std::size_t>(i + 1)];
    }
    cells[kPoints] = surv_counts[kPoints - 1];
    RandomStream rng = derive_stream(seed, {0x7461696cULL});
    std::vector<double> slopes, quads;
    for (int b = 0; b < kBoot; ++b) {
        // Multinomial draw via sequential binomial splitting.
        std::int64_t left = static_cast<std::int64_t>(n);
        double prob_left = 1.0;
        std::vector<std::int64_t> draw(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const double p =
                prob_left <= 0.0
                    ? 0.0
                    : (static_cast<double>(cells[c]) / static_cast<double>(n)) /
                          prob_left;
            std::int64_t k = 0;
            if (c + 1 == cells.size()) {
                k = left;
            } else {
                // Normal approximation is fine at these counts; clamp to range.
                const double mu = left * std::min(1.0, std::max(0.0, p));
                const double sd = std::sqrt(std::max(
                    0.0, left * std::min(1.0, std::max(0.0, p)) * (1.0 - p)));
                k = static_cast<std::int64_t>(
                    std::llround(mu + sd * rng.normal()));
                k = std::max<std::int64_t>(0, std::min(k, left));
            }
            draw[c] = k;
            left -= k;
            prob_left -= static_cast<double>(cells[c]) / static_cast<double>(n);
        }
        std::vector<std::int64_t> surv(kPoints);
        std::int64_t acc = 0;
        for (int i = kPoints - 1; i >= 0; --i) {
            acc += draw[static_cast<std::size_t>(i + 1)];
            surv[static_cast<std::size_t>(i)] = acc;
        }
        PolyFit f = fit_line_and_quad(fit.thresholds, survival_logs(surv));
        slopes.push_back(-f.slope);
        quads.push_back(f.quad);
    }
    std::sort(slopes.begin(), slopes.end());
    std::sort(quads.begin(), quads.end());
    const auto lo = static_cast<std::size_t>(0.025 * kBoot);
    const auto hi = static_cast<std::size_t>(0.975 * kBoot) - 1;
    fit.ci_lo = slopes[lo];
    fit.ci_hi = slopes[hi];
    fit.curvature_ci_lo = quads[lo];
    fit.curvature_ci_hi = quads[hi];
    fit.exponential_like = fit.curvature_ci_lo <= 0.0 && 0.0 <= fit.curvature_ci_hi;
    return fit;
}

Complex lemma_f(double s, double t, Complex lambda) {
    if (!(0.0 < s && s < 1.0 && 0.0 < t && t < 1.0)) {
        throw DomainError("lemma_f needs (s,t) in the open unit square");
    }
    auto cpow = [&](double base) {
        const double lb = std::log(base);
        const double mod = std::exp(lambda.real() * lb);
        return Complex(mod * std::cos(lambda.imag() * lb),
                       mod * std::sin(lambda.imag() * lb));
    };
    return cpow(s * t) + cpow(s * (1.0 - t)) + cpow(1.0 - s);
}

Complex lemma_jacobian_product(double s, double t, Complex lambda) {
    auto cpow = [](Complex lam, double base) {
        return std::exp(lam * std::log(base));
    };
    const Complex fs = lambda * (t * cpow(lambda - 1.0, s * t) +
                                 (1.0 - t) * cpow(lambda - 1.0, s * (1.0 - t)) -
                                 cpow(lambda - 1.0, 1.0 - s));
    const Complex ft = lambda * s *
                       (cpow(lambda - 1.0, s * t) -
                        cpow(lambda - 1.0, s * (1.0 - t)));
    return fs * std::conj(ft);
}

std::vector<LemmaPoint> lemma_points(Complex lambda, int k_max) {
    const double tau = std::abs(lambda.imag());
    if (tau == 0.0) throw ConfigError("lemma_points needs Im lambda != 0");
    const Complex lam(lambda.real(), tau);  // conjugation convention tau > 0
    std::vector<LemmaPoint> out;
    for (int k = 1; k <= k_max; ++k) {
        for (int variant = 0; variant < 2; ++variant) {
            const double expo = variant == 0
                                    ? -2.0 * k * std::numbers::pi / tau
                                    : (std::numbers::pi -
                                       2.0 * k * std::numbers::pi) /
                                          tau;
            const double u = std::exp(expo);
            LemmaPoint p;
            p.k = k;
            p.shifted = variant == 1;
            p.u = u;
            p.s = u + u * u;
            p.t = 1.0 / (1.0 + u);
            p.f_value = lemma_f(p.s, p.t, lam);
            // Step sizes shrink near the boundary so the stencil stays inside
            // the open square even for the tiny late witnesses.
            const double hs =
                std::min(1e-6, std::min(p.s, 1.0 - p.s) / 8.0);
            const double ht =
                std::min(1e-6, std::min(p.t, 1.0 - p.t) / 8.0);
            const Complex fs =
                (lemma_f(p.s + hs, p.t, lam) - lemma_f(p.s - hs, p.t, lam)) /
                (2.0 * hs);
            const Complex ft =
                (lemma_f(p.s, p.t + ht, lam) - lemma_f(p.s, p.t - ht, lam)) /
                (2.0 * ht);
            p.jacobian = fs.real() * ft.imag() - fs.imag() * ft.real();
            p.jacobian_ok =
                std::abs(p.jacobian) > 1e-12 * (1.0 + std::abs(fs) * std::abs(ft));
            out.push_back(p);
        }
    }
    return out;
}

ReachCertificate monoid_reach(Complex target, Complex c, Complex c_shift,
                              double radius, double eps) {
    if (target == Complex(0.0, 0.0)) throw ConfigError("target must be nonzero");
    const double ac = std::abs(c), as = std::abs(c_shift);
    if (!(ac > 1.0 && 0.0 < as && as < 1.0)) {
        throw ConfigError("need |c| > 1 and 0 < |c_shift| < 1");
    }
    if (!(radius > 0.0 && radius < ac - 1.0 && radius < 1.0 - as &&
          radius < as)) {
        throw ConfigError("radius too large for the modulus constraints");
    }
    const Complex l = std::log(c);
    const Complex lp = std::log(c_shift);
    const Complex lt = std::log(target);
    const double cap_per = 0.9 * std::log1p(radius / std::max(ac, as));

    constexpr int kMaxCount = 4000;
    int best_a = -1, best_b = -1;
    double best_abs = 0.0;
    Complex best_delta;
    for (int a = 0; a <= kMaxCount; ++a) {
        for (int b = (a == 0 ? 1 : 0); b <= kMaxCount; ++b) {
            Complex d = lt - static_cast<double>(a) * l -
                        static_cast<double>(b) * lp;
            // Optimal 2 pi i branch shift.
            double im = std::remainder(d.imag(), 2.0 * std::numbers::pi);
            d = Complex(d.real(), im);
            const double ad = std::abs(d);
            if (ad <= cap_per * (a + b)) {
                if (best_a < 0 || a + b < best_a + best_b ||
                    (a + b == best_a + best_b && ad < best_abs)) {
                    best_a = a;
                    best_b = b;
                    best_abs = ad;
                    best_delta = d;
                }
                break;  // larger b for this a only increases q
            }
        }
        if (best_a >= 0 && best_a + best_b <= a) break;
    }
    if (best_a < 0) {
        throw Unreachable("no factor combination within the correction capacity");
    }
    const int q = best_a + best_b;
    const Complex shift = std::exp(best_delta / static_cast<double>(q));
    ReachCertificate cert;
    cert.target = target;
    cert.factors.reserve(static_cast<std::size_t>(q));
    for (int i = 0; i < best_a; ++i) cert.factors.push_back(c * shift);
    for (int i = 0; i < best_b; ++i) cert.factors.push_back(c_shift * shift);
    Complex prod = 1.0;
    for (Complex v : cert.factors) {
        if (std::abs(v - c) > radius && std::abs(v - c_shift) > radius) {
            throw Unreachable("factor left its disk while absorbing the residual");
        }
        prod *= v;
    }
    cert.product = prod;
    cert.relative_error = std::abs(prod - target) / std::abs(target);
    if (cert.relative_error > eps) {
        throw Unreachable("certificate misses the target: relative error " +
                          std::to_string(cert.relative_error));
    }
    return cert;
}

}  // namespace mst
