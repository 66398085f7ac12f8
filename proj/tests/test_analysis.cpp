#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "mst/analysis.hpp"
#include "mst/cascade.hpp"
#include "mst/charpoly.hpp"
#include "mst/errors.hpp"

using namespace mst;

namespace {

Complex lambda27() {
    static const Complex l = find_lambda2(27).value;
    return l;
}

SamplePool constant_pool(Complex c, std::size_t n) {
    SamplePool p;
    p.m = 27;
    p.lambda = lambda27();
    p.samples.assign(n, c);
    return p;
}

const SamplePool& small_fixed_pool() {
    static const SamplePool pool = iterate_pool(
        make_constant_pool(27, lambda27(), 30000, 101), 25, 101, 1);
    return pool;
}

}  // namespace

TEST_CASE("estimate_density on a constant pool") {
    auto pool = constant_pool({1.0, 0.0}, 5000);
    auto h = estimate_density(pool, {-2.0, 2.0, -2.0, 2.0}, 8, 8);
    std::int64_t nonzero = 0;
    for (auto c : h.counts) nonzero += (c > 0);
    CHECK(nonzero == 1);
    CHECK(h.out_of_bounds == 0);
    CHECK(h.in_bounds_fraction() == 1.0);
    CHECK_THROWS_AS(estimate_density(pool, {1.0, 1.0, 0.0, 1.0}, 4, 4),
                    DegenerateBounds);
}

TEST_CASE("density mass conservation is exact") {
    auto h = estimate_density(small_fixed_pool(), {-1.0, 2.0, -1.5, 1.5}, 10, 10);
    std::int64_t in = 0;
    for (auto c : h.counts) in += c;
    CHECK(in + h.out_of_bounds == h.total);
    // Normalized in-bounds density integrates to the in-bounds fraction.
    const double cell = (3.0 / 10) * (3.0 / 10);
    double mass = 0.0;
    for (auto c : h.counts) {
        mass += static_cast<double>(c) / (h.total * cell) * cell;
    }
    CHECK(std::abs(mass - h.in_bounds_fraction()) < 1e-12);
}

TEST_CASE("support coverage: constant pool hits at most one cell") {
    auto pool = constant_pool({1.0, 0.0}, 1000);
    auto rep = support_coverage(pool, 0.1, 2.5, 6, 12);
    CHECK(rep.coverage == doctest::Approx(1.0 / 72).epsilon(1e-12));
    auto rep0 = support_coverage(constant_pool({5.0, 0.0}, 1000), 0.1, 2.5, 6, 12);
    CHECK(rep0.coverage == 0.0);
}

TEST_CASE("support coverage is nondecreasing in nested prefixes") {
    const auto& pool = small_fixed_pool();
    double prev = 0.0;
    for (std::size_t n : {1000ul, 5000ul, 30000ul}) {
        SamplePool prefix = pool;
        prefix.samples.resize(n);
        auto rep = support_coverage(prefix, 0.1, 2.5, 6, 12);
        CHECK(rep.coverage >= prev);
        prev = rep.coverage;
    }
}

TEST_CASE("empirical_cf estimator identities") {
    const auto& pool = small_fixed_pool();
    CHECK(empirical_cf(pool, {0.0, 0.0}).phi_hat == Complex(1.0, 0.0));
    for (Complex t : {Complex(1.0, 0.5), Complex(-2.0, 3.0), Complex(0.1, 0.0)}) {
        auto probe = empirical_cf(pool, t);
        CHECK(std::abs(probe.phi_hat) <= 1.0 + 1e-12);
        auto mirrored = empirical_cf(pool, -t);
        CHECK(mirrored.phi_hat == std::conj(probe.phi_hat));
    }
    // Constant pool: unit modulus.
    auto cp = constant_pool({0.7, -0.3}, 100);
    auto probe = empirical_cf(cp, {2.0, 1.0});
    CHECK(std::abs(std::abs(probe.phi_hat) - 1.0) < 1e-12);
}

TEST_CASE("cf fixed point residual at t = 0 is exactly zero") {
    RandomStream rng(5);
    auto res = check_cf_fixed_point(small_fixed_pool(), {0.0, 0.0}, 160, rng);
    CHECK(res.residual == 0.0);
}

TEST_CASE("cf fixed point holds on the converged pool and fails on a corrupted one") {
    const auto& pool = small_fixed_pool();
    RandomStream rng(7);
    for (Complex t : {Complex(0.8, 0.2), Complex(1.5, -1.0), Complex(0.0, 2.0)}) {
        auto res = check_cf_fixed_point(pool, t, 4000, rng);
        CHECK(res.residual < 5.0 * res.se);
    }
    // Shifts break the fixed point (rescalings do not, so a shift it is).
    SamplePool corrupted = pool;
    for (auto& z : corrupted.samples) z += 1.0;
    bool detected = false;
    for (Complex t : {Complex(0.8, 0.2), Complex(1.5, -1.0), Complex(0.0, 2.0),
                      Complex(2.5, 1.0)}) {
        auto res = check_cf_fixed_point(corrupted, t, 4000, rng);
        if (res.residual > 10.0 * res.se) detected = true;
    }
    CHECK(detected);
}

TEST_CASE("psi profile: continuity at zero and decay") {
    const auto& pool = small_fixed_pool();
    auto head = psi_profile(pool, {1e-4}, 16);
    CHECK(head[0].psi_hat > 0.999);
    const double n = static_cast<double>(pool.samples.size());
    auto prof = psi_profile(pool, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 64);
    for (const auto& p : prof) {
        CHECK(p.psi_hat < 1.0 - 3.0 / std::sqrt(n));
    }
    CHECK_THROWS_AS(psi_profile(pool, {-1.0}, 8), ConfigError);
}

TEST_CASE("tail exponent on synthetic exponential moduli") {
    SamplePool pool;
    pool.m = 27;
    RandomStream rng(11);
    for (int i = 0; i < 200000; ++i) {
        const double r = -std::log(rng.uniform());
        const double th = 2.0 * std::numbers::pi * rng.uniform();
        pool.samples.emplace_back(r * std::cos(th), r * std::sin(th));
    }
    auto fit = tail_exponent(pool, 0.95, 0.999, 13);
    CHECK(fit.ci_lo <= 1.0);
    CHECK(fit.ci_hi >= 1.0);
    CHECK(fit.delta_hat == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fit.exponential_like);
}

TEST_CASE("tail exponent flags a Pareto tail as non-exponential") {
    SamplePool pool;
    pool.m = 27;
    RandomStream rng(17);
    for (int i = 0; i < 200000; ++i) {
        const double r = std::pow(rng.uniform(), -1.0 / 3.0);  // Pareto(3)
        const double th = 2.0 * std::numbers::pi * rng.uniform();
        pool.samples.emplace_back(r * std::cos(th), r * std::sin(th));
    }
    auto fit = tail_exponent(pool, 0.95, 0.999, 19);
    CHECK_FALSE(fit.exponential_like);
}

TEST_CASE("tail exponent guards") {
    SamplePool tiny = constant_pool({1.0, 0.0}, 500);
    CHECK_THROWS_AS(tail_exponent(tiny, 0.95, 0.999, 1), ConfigError);
    CHECK_THROWS_AS(tail_exponent(small_fixed_pool(), 0.5, 0.999, 1),
                    ConfigError);
}

TEST_CASE("lemma_f telescopes to 1 at lambda = 1") {
    for (int i = 1; i < 50; ++i) {
        for (int j = 1; j < 50; ++j) {
            const double s = i / 50.0, t = j / 50.0;
            CHECK(std::abs(lemma_f(s, t, {1.0, 0.0}) - Complex(1.0, 0.0)) <
                  1e-12);
        }
    }
    CHECK_THROWS_AS(lemma_f(0.0, 0.5, lambda27()), DomainError);
    CHECK_THROWS_AS(lemma_f(0.5, 1.0, lambda27()), DomainError);
}

TEST_CASE("u_k^lambda is real positive, u'_k^lambda real negative") {
    const Complex lam = lambda27();
    const double tau = lam.imag();
    for (int k = 1; k <= 5; ++k) {
        const double u = std::exp(-2.0 * k * std::numbers::pi / tau);
        const Complex ul = std::exp(lam * std::log(u));
        CHECK(std::abs(ul.imag()) < 1e-12 * std::abs(ul.real()) + 1e-300);
        CHECK(ul.real() > 0.0);
        const double up = std::exp((1.0 - 2.0 * k) * std::numbers::pi / tau);
        const Complex upl = std::exp(lam * std::log(up));
        CHECK(std::abs(upl.imag()) < 1e-10);
        CHECK(upl.real() < 0.0);
        // |u_k^lambda| = u_k^sigma.
        CHECK(std::abs(ul) == doctest::Approx(std::pow(u, lam.real())));
    }
}

TEST_CASE("lemma points: witnesses above and below modulus 1") {
    auto points = lemma_points(lambda27(), 10);
    REQUIRE(points.size() == 20);
    bool primary_found = false, shifted_found = false;
    double prev_primary_u = 1.0;
    for (const auto& p : points) {
        CHECK(p.u > 0.0);
        CHECK(p.u < 1.0);
        CHECK(p.s > 0.0);
        CHECK(p.s < 1.0);
        CHECK(p.t > 0.0);
        CHECK(p.t < 1.0);
        if (!p.shifted) {
            CHECK(p.u < prev_primary_u);
            prev_primary_u = p.u;
            if (std::abs(p.f_value) > 1.0 && p.jacobian_ok) primary_found = true;
            // |f(s_k,t_k)| = 1 + u_k^sigma + O(u_k).
            const double expected = 1.0 + std::pow(p.u, lambda27().real());
            CHECK(std::abs(std::abs(p.f_value) - expected) < 10.0 * p.u);
        } else if (std::abs(p.f_value) < 1.0 && std::abs(p.f_value) > 0.0 &&
                   p.jacobian_ok) {
            shifted_found = true;
        }
    }
    CHECK(primary_found);
    CHECK(shifted_found);
}

TEST_CASE("finite-difference Jacobian matches the analytic product") {
    auto points = lemma_points(lambda27(), 3);
    for (const auto& p : points) {
        const Complex prod = lemma_jacobian_product(p.s, p.t, lambda27());
        // det J = -Im(df/ds * conj(df/dt)).
        CHECK(p.jacobian ==
              doctest::Approx(-prod.imag()).epsilon(1e-3));
    }
}

TEST_CASE("monoid reach: trivial and composite targets") {
    auto points = lemma_points(lambda27(), 10);
    Complex c, c_shift;
    for (const auto& p : points) {
        if (!p.shifted && std::abs(p.f_value) > 1.0 && p.jacobian_ok &&
            c == Complex()) {
            c = p.f_value;
        }
        if (p.shifted && std::abs(p.f_value) < 1.0 && p.jacobian_ok &&
            c_shift == Complex()) {
            c_shift = p.f_value;
        }
    }
    REQUIRE(c != Complex());
    REQUIRE(c_shift != Complex());

    auto single = monoid_reach(c, c, c_shift, 0.05, 1e-6);
    REQUIRE(single.factors.size() == 1);
    CHECK(std::abs(single.factors[0] - c) < 1e-9);

    auto pair = monoid_reach(c * c_shift, c, c_shift, 0.05, 1e-6);
    CHECK(pair.factors.size() == 2);

    for (Complex target : {Complex(-1.0, 0.0), Complex(0.0, 10.0),
                           Complex(0.01, 0.0), Complex(3.0, 4.0)}) {
        auto cert = monoid_reach(target, c, c_shift, 0.05, 1e-6);
        CHECK(cert.relative_error <= 1e-6);
        // Self-verification: recompute the product and disk memberships.
        Complex prod = 1.0;
        for (Complex v : cert.factors) {
            const bool in_disk =
                std::abs(v - c) <= 0.05 || std::abs(v - c_shift) <= 0.05;
            CHECK(in_disk);
            prod *= v;
        }
        CHECK(std::abs(prod - target) <= 1e-6 * std::abs(target));
    }

    CHECK_THROWS_AS(monoid_reach({0.0, 0.0}, c, c_shift, 0.05, 1e-6),
                    ConfigError);
    CHECK_THROWS_AS(monoid_reach({1.0, 0.0}, c_shift, c, 0.05, 1e-6),
                    ConfigError);
}
