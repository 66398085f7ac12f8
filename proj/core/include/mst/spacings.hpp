#pragma once

#include <complex>
#include <vector>

#include "mst/rng.hpp"

namespace mst {

using Complex = std::complex<double>;

/// Spacings V_1..V_m of m-1 uniforms on [0,1], including both end gaps.
/// Each V_k is Beta(1,m-1); the vector sums to 1 almost surely.
struct SpacingVector {
    int m = 0;
    std::vector<double> values;
};

struct Multiplier {
    Complex value;      // A = sum V_k^lambda
    double sigma_mass;  // sum V_k^sigma, sigma = Re lambda
};

SpacingVector sample_spacings(int m, RandomStream& rng);

/// E V^s = Gamma(1+s) Gamma(m) / Gamma(m+s) for a Beta(1,m-1) spacing.
Complex spacing_moment(Complex s, int m);

/// A = sum exp(lambda ln V_k); V_k > 0 so the principal log is unambiguous.
Multiplier compute_A(const SpacingVector& v, Complex lambda);

/// E|A|^2 = m E V^(2 sigma) + m(m-1) |Gamma(1+lambda)|^2 Gamma(m)/Gamma(m+2 sigma),
/// from the Dirichlet joint moment E[V1^a V2^b].
double analytic_EA2(int m, Complex lambda);

/// m E V^(2 sigma); < 1 exactly when the smoothing transform contracts in L2.
double contraction_constant(int m, double sigma);

}  // namespace mst
