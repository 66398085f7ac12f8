#include "mst/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mst/errors.hpp"

namespace mst {

CharPoly build_charpoly(int m) {
    if (m < 2) throw InvalidBranchingFactor(m);
    // Expand prod_{k=1}^{m-1}(z+k) by iterated convolution in exact integers.
    std::vector<BigInt> c{1};
    for (int k = 1; k <= m - 1; ++k) {
        c.insert(c.begin(), 0);
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            c[i] += BigInt(k) * c[i + 1];
        }
    }
    BigInt mfact = 1;
    for (int k = 2; k <= m; ++k) mfact *= k;
    c[0] -= mfact;
    return CharPoly{m, std::move(c)};
}

namespace {

// prod_{k=1}^{m-1} (z+k)/(k+1) = prod(z+k) / m!; scale-free in double range.
Complex scaled_product(int m, Complex z) {
    Complex p = 1.0;
    for (int k = 1; k <= m - 1; ++k) {
        p *= (z + static_cast<double>(k)) / static_cast<double>(k + 1);
    }
    return p;
}

double factorial_d(int m) {
    double f = 1.0;
    for (int k = 2; k <= m; ++k) f *= k;
    return f;
}

}  // namespace

Complex eval_charpoly(const CharPoly& p, Complex z) {
    return (scaled_product(p.m, z) - 1.0) * factorial_d(p.m);
}

double charpoly_residual(int m, Complex z) {
    return std::abs(scaled_product(m, z) - 1.0);
}

Complex eval_expanded(const CharPoly& p, Complex z) {
    Complex acc = 0.0;
    for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
        acc = acc * z + static_cast<double>(*it);
    }
    return acc;
}

namespace {

constexpr double kResidualTol = 1e-8;

// Aberth-Ehrlich simultaneous iteration on the scaled factored form
// q(z) = prod(z+k)/(k+1) - 1, followed by Newton polishing.
std::vector<Complex> aberth(int m) {
    const int deg = m - 1;
    std::vector<Complex> z(deg);
    // Initial guesses on a circle around the centroid of -1..-(m-1); the
    // small angular offset breaks the conjugate-symmetry stall.
    const double cx = -0.5 * m;
    const double radius = 0.5 * m + 2.0;
    for (int i = 0; i < deg; ++i) {
        double ang = 2.0 * std::numbers::pi * (i + 0.37) / deg + 0.1;
        z[i] = Complex(cx + radius * std::cos(ang), radius * std::sin(ang));
    }
    std::vector<Complex> w(deg);
    for (int iter = 0; iter < 400; ++iter) {
        double max_step = 0.0;
        for (int i = 0; i < deg; ++i) {
            Complex prod = 1.0;
            Complex s = 0.0;
            for (int k = 1; k <= deg; ++k) {
                Complex f = z[i] + static_cast<double>(k);
                prod *= f / static_cast<double>(k + 1);
                s += 1.0 / f;
            }
            Complex newton = (prod - 1.0) / (prod * s);
            Complex sum_inv = 0.0;
            for (int j = 0; j < deg; ++j) {
                if (j != i) sum_inv += 1.0 / (z[i] - z[j]);
            }
            Complex step = newton / (1.0 - newton * sum_inv);
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < 1e-13 * (1.0 + radius)) break;
    }
    // Newton polish on the same scaled form.
    for (int i = 0; i < deg; ++i) {
        for (int it = 0; it < 4; ++it) {
            Complex prod = 1.0, s = 0.0;
            for (int k = 1; k <= deg; ++k) {
                Complex f = z[i] + static_cast<double>(k);
                prod *= f / static_cast<double>(k + 1);
                s += 1.0 / f;
            }
            z[i] -= (prod - 1.0) / (prod * s);
        }
    }
    return z;
}

// Force exact conjugate closure: zero out tiny imaginary parts and average
// each root with its mirror partner.
void symmetrize(std::vector<Complex>& roots) {
    for (auto& r : roots) {
        if (std::abs(r.imag()) < 1e-8 * (1.0 + std::abs(r.real()))) {
            r = Complex(r.real(), 0.0);
        }
    }
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i] || roots[i].imag() <= 0.0) continue;
        std::size_t best = i;
        double best_d = 1e300;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (used[j] || j == i || roots[j].imag() >= 0.0) continue;
            double d = std::abs(roots[j] - std::conj(roots[i]));
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best != i) {
            Complex avg = 0.5 * (roots[i] + std::conj(roots[best]));
            roots[i] = avg;
            roots[best] = std::conj(avg);
            used[i] = used[best] = true;
        }
    }
}

}  // namespace

RootSet find_roots(int m) {
    if (m < 2) throw InvalidBranchingFactor(m);
    RootSet rs;
    rs.m = m;
    if (m == 2) {
        rs.roots = {Complex(1.0, 0.0)};
        rs.residuals = {0.0};
        return rs;
    }
    auto roots = aberth(m);
    symmetrize(roots);
    // z = 1 is always a root; snap the nearest iterate onto it.
    auto nearest =
        std::min_element(roots.begin(), roots.end(), [](Complex a, Complex b) {
            return std::abs(a - 1.0) < std::abs(b - 1.0);
        });
    *nearest = Complex(1.0, 0.0);

    rs.roots = std::move(roots);
    rs.residuals.reserve(rs.roots.size());
    double worst = 0.0;
    for (Complex r : rs.roots) {
        double res = charpoly_residual(m, r);
        rs.residuals.push_back(res);
        worst = std::max(worst, res);
    }
    if (worst > kResidualTol) {
        std::ostringstream os;
        os << "root finding for m=" << m
           << " did not converge; worst relative residual " << worst;
        throw NonConvergence(os.str());
    }
    return rs;
}

Lambda2 find_lambda2(int m) {
    if (m < 2) throw InvalidBranchingFactor(m);
    if (m == 2) throw NoSecondRoot();
    RootSet rs = find_roots(m);
    std::vector<Complex> sorted = rs.roots;
    std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
        return a.real() > b.real();
    });
    // Group conjugate pairs by real part; pick the second group.
    std::vector<std::vector<Complex>> groups;
    for (Complex r : sorted) {
        if (!groups.empty() &&
            std::abs(groups.back().front().real() - r.real()) <
                1e-6 * (1.0 + std::abs(r.real()))) {
            groups.back().push_back(r);
        } else {
            groups.push_back({r});
        }
    }
    const auto& second = groups.at(1);
    Complex pick = second.front();
    for (Complex r : second) {
        if (r.imag() > 0.0) pick = r;
    }
    return Lambda2{pick, m, charpoly_residual(m, pick)};
}

}  // namespace mst
