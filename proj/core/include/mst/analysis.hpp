#pragma once

#include <cstdint>
#include <vector>

#include "mst/pool.hpp"
#include "mst/rng.hpp"

namespace mst {

struct Rect {
    double x0, x1, y0, y1;
};

/// Plain histogram over a rectangle of the plane; out-of-bounds mass is
/// tracked separately so counts always account for every sample.
struct HistogramGrid2D {
    Rect bounds{};
    int nx = 0, ny = 0;
    std::vector<std::int64_t> counts;  // row-major, x fastest
    std::int64_t total = 0;
    std::int64_t out_of_bounds = 0;
    double l2_norm = 0.0;  // plug-in integral of the squared density

    std::int64_t min_count() const;
    double in_bounds_fraction() const;
};

HistogramGrid2D estimate_density(const SamplePool& pool, Rect bounds, int nx,
                                 int ny);

struct CoverageReport {
    double r_min = 0.0, r_max = 0.0;
    int n_radial = 0, n_angular = 0;
    std::vector<std::int64_t> hits;  // radial-major
    double coverage = 0.0;           // hit cells / total cells
};

/// Polar-grid occupancy over an annulus centred at the origin; a desk-scale
/// witness of full-plane support.
CoverageReport support_coverage(const SamplePool& pool, double r_min,
                                double r_max, int n_radial, int n_angular);

struct ECFProbe {
    Complex t;
    Complex phi_hat;
    std::size_t n = 0;
    double se = 0.0;  // 1/sqrt(n) bound
};

/// phi_hat(t) = mean of exp(i (Re t Re Z + Im t Im Z)) over the pool.
ECFProbe empirical_cf(const SamplePool& pool, Complex t);

struct CfResidual {
    Complex t;
    double residual = 0.0;  // |lhs - rhs|
    double se = 0.0;        // block-resampled error bound on the residual
    Complex lhs, rhs;
};

/// Monte Carlo residual of the Fourier fixed point
/// phi(t) = E prod_k phi(t V_k^conj(lambda)). The pool is split into blocks
/// that each see independent spacing draws; the block scatter gives the
/// combined error bound.
CfResidual check_cf_fixed_point(const SamplePool& pool, Complex t,
                                int mc_rounds, RandomStream& rng);

struct PsiPoint {
    double r = 0.0;
    double psi_hat = 0.0;  // max_theta |phi_hat(r e^{i theta})|
};

std::vector<PsiPoint> psi_profile(const SamplePool& pool,
                                  const std::vector<double>& radii,
                                  int n_angles);

struct TailFit {
    std::vector<double> thresholds;
    std::vector<double> log_survival;
    double delta_hat = 0.0;  // -slope of log P(|Z| > t) against t
    double ci_lo = 0.0, ci_hi = 0.0;
    double curvature = 0.0;  // quadratic coefficient of the same fit
    double curvature_ci_lo = 0.0, curvature_ci_hi = 0.0;
    bool exponential_like = false;  // curvature CI straddles 0
};

TailFit tail_exponent(const SamplePool& pool, double quantile_lo,
                      double quantile_hi, std::uint64_t seed);

/// f(s,t) = (st)^lambda + (s(1-t))^lambda + (1-s)^lambda on the open square.
Complex lemma_f(double s, double t, Complex lambda);

struct LemmaPoint {
    int k = 0;
    bool shifted = false;  // u'_k variant
    double u = 0.0;
    double s = 0.0, t = 0.0;
    Complex f_value;
    double jacobian = 0.0;  // finite-difference det of (Re f, Im f)
    bool jacobian_ok = false;
};

/// The witness sequences u_k = exp(-2k pi / tau) (and the pi-shifted variant)
/// with s_k = u_k + u_k^2, t_k = 1/(1+u_k); the primary points push |f| above
/// 1 and the shifted ones below it.
std::vector<LemmaPoint> lemma_points(Complex lambda, int k_max);

/// Analytic d f/d s * conj(d f/d t); the Jacobian determinant of
/// (Re f, Im f) equals -Im of this product (cross-check oracle).
Complex lemma_jacobian_product(double s, double t, Complex lambda);

struct ReachCertificate {
    Complex target;
    std::vector<Complex> factors;  // each within `radius` of c or c_shift
    Complex product;
    double relative_error = 0.0;
};

/// Constructive version of the multiplicative-monoid argument: finds a finite
/// product of values near c (|c|>1) and c_shift (|c_shift|<1) hitting the
/// target within eps relative error. Works in log space: integer counts (a,b)
/// and a 2 pi branch shift land near log target; the residual is spread
/// multiplicatively across all factors inside their disks.
ReachCertificate monoid_reach(Complex target, Complex c, Complex c_shift,
                              double radius, double eps);

}  // namespace mst
