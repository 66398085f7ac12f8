#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <vector>

namespace mst {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

/// The monic degree-(m-1) polynomial prod_{k=1}^{m-1}(z+k) - m! whose roots
/// drive the second-order asymptotics of the composition vector.
struct CharPoly {
    int m = 0;
    std::vector<BigInt> coefficients;  // ascending powers; exact integers

    int degree() const { return m - 1; }
};

struct RootSet {
    int m = 0;
    std::vector<Complex> roots;      // conjugation-closed, size m-1
    std::vector<double> residuals;   // relative: |prod(z+k) - m!| / m!
};

struct Lambda2 {
    Complex value;   // sigma2 + i tau2, tau2 > 0 when non-real
    int m = 0;
    double residual = 0.0;
};

CharPoly build_charpoly(int m);

/// Factored-form evaluation prod(z+k) - m!, scaled by 1/m! internally for
/// stability; returns the unscaled value as a double complex.
Complex eval_charpoly(const CharPoly& p, Complex z);

/// Relative residual |prod(z+k) - m!| / m! at z; stable for all m <= 64.
double charpoly_residual(int m, Complex z);

/// Evaluate the exact expanded coefficients in double arithmetic (test oracle
/// for the expansion; runtime code uses the factored form).
Complex eval_expanded(const CharPoly& p, Complex z);

RootSet find_roots(int m);

Lambda2 find_lambda2(int m);

}  // namespace mst
