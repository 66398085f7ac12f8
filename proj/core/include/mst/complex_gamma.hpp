#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace mst {

namespace detail {
// Lanczos approximation, g = 7, 9 coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
}  // namespace detail

/// Principal branch of log Gamma for complex argument. Reflection formula for
/// Re z < 1/2; accuracy ~1e-14 relative on the moderate arguments used here.
inline std::complex<double> log_gamma(std::complex<double> z) {
    using namespace std::complex_literals;
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> x = detail::kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        x += detail::kLanczos[i] / (z + static_cast<double>(i));
    }
    std::complex<double> t = z + (detail::kLanczosG + 0.5);
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline std::complex<double> complex_gamma(std::complex<double> z) {
    return std::exp(log_gamma(z));
}

}  // namespace mst
