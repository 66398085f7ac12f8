#include "mst/spacings.hpp"

#include <algorithm>
#include <cmath>

#include "mst/complex_gamma.hpp"
#include "mst/errors.hpp"

namespace mst {

SpacingVector sample_spacings(int m, RandomStream& rng) {
    if (m < 2) throw InvalidBranchingFactor(m);
    std::vector<double> u(static_cast<std::size_t>(m - 1));
    std::vector<double> v(static_cast<std::size_t>(m));
    for (;;) {
        for (auto& x : u) x = rng.uniform();
        std::sort(u.begin(), u.end());
        double prev = 0.0;
        bool ok = true;
        for (int k = 0; k < m - 1; ++k) {
            v[k] = u[k] - prev;
            if (v[k] <= 0.0) {
                ok = false;
                break;
            }
            prev = u[k];
        }
        v[m - 1] = 1.0 - prev;
        if (ok && v[m - 1] > 0.0) break;
        // Floating-point tie; probability-zero event, draw again.
    }
    return SpacingVector{m, std::move(v)};
}

Complex spacing_moment(Complex s, int m) {
    if (s.real() <= -1.0) throw DivergentMoment();
    if (s == Complex(0.0, 0.0)) return 1.0;
    return std::exp(log_gamma(1.0 + s) + log_gamma(Complex(m, 0.0)) -
                    log_gamma(Complex(m, 0.0) + s));
}

Multiplier compute_A(const SpacingVector& v, Complex lambda) {
    Complex a = 0.0;
    double mass = 0.0;
    const double sigma = lambda.real();
    const double tau = lambda.imag();
    for (double x : v.values) {
        double lx = std::log(x);
        double mod = std::exp(sigma * lx);
        a += mod * Complex(std::cos(tau * lx), std::sin(tau * lx));
        mass += mod;
    }
    return Multiplier{a, mass};
}

double analytic_EA2(int m, Complex lambda) {
    const double sigma = lambda.real();
    double diag = m * spacing_moment(Complex(2.0 * sigma, 0.0), m).real();
    Complex lg = log_gamma(1.0 + lambda);
    double gam_sq = std::exp(2.0 * lg.real());  // |Gamma(1+lambda)|^2
    double cross =
        m * (m - 1.0) * gam_sq *
        std::exp((log_gamma(Complex(m, 0.0)) -
                  log_gamma(Complex(m + 2.0 * sigma, 0.0)))
                     .real());
    return diag + cross;
}

double contraction_constant(int m, double sigma) {
    if (sigma <= 0.0) throw DomainError("contraction_constant needs sigma > 0");
    return m * spacing_moment(Complex(2.0 * sigma, 0.0), m).real();
}

}  // namespace mst
