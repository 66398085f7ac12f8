#include <doctest.h>

#include <cmath>
#include <complex>

#include "mst/cascade.hpp"
#include "mst/charpoly.hpp"
#include "mst/energy.hpp"
#include "mst/errors.hpp"
#include "mst/spacings.hpp"

using namespace mst;

namespace {

Complex lambda27() {
    static const Complex l = find_lambda2(27).value;
    return l;
}

}  // namespace

TEST_CASE("depth-1 cascade is the multiplier A") {
    const int m = 27;
    CascadeConfig cfg{m, lambda27(), 1, 3};
    RandomStream rng = derive_stream(cfg.seed, {1});
    const int n = 100000;
    Complex sum = 0.0;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        Complex y = sample_Yn(cfg, rng);
        sum += y;
        var += std::norm(y - 1.0);
    }
    Complex mean = sum / static_cast<double>(n);
    var /= n;
    const double var_a = analytic_EA2(m, cfg.lambda) - 1.0;
    CHECK(std::abs(mean - Complex(1.0, 0.0)) < 4.0 * std::sqrt(var_a / n));
    // Var about the exact mean; estimator sd ~ sqrt(E x^4)/sqrt(n), use a
    // generous 5 sigma with the empirical fourth moment.
    CHECK(std::abs(var - var_a) < 0.05);
}

TEST_CASE("variance recursion across depths 1..3") {
    const int m = 27;
    const Complex lambda = lambda27();
    const double var_a = analytic_EA2(m, lambda) - 1.0;
    const double contraction = contraction_constant(m, lambda.real());
    double predicted = 0.0;  // Var Y_0 (constant 1)
    RandomStream rng = derive_stream(99, {2});
    for (int depth = 1; depth <= 3; ++depth) {
        predicted = var_a + contraction * predicted;
        CascadeConfig cfg{m, lambda, depth, 5};
        const int n = depth == 3 ? 10000 : 20000;
        double var = 0.0, fourth = 0.0;
        for (int i = 0; i < n; ++i) {
            const double sq = std::norm(sample_Yn(cfg, rng) - 1.0);
            var += sq;
            fourth += sq * sq;
        }
        var /= n;
        fourth /= n;
        const double se = std::sqrt((fourth - var * var) / n);
        CHECK(std::abs(var - predicted) < 5.0 * se);
    }
}

TEST_CASE("work budget guard") {
    CascadeConfig cfg{27, lambda27(), 9, 1, 100000000};
    RandomStream rng(1);
    CHECK_THROWS_AS(sample_Yn(cfg, rng), WorkBudgetExceeded);
    cfg.depth = 0;
    CHECK_THROWS_AS(sample_Yn(cfg, rng), ConfigError);
}

TEST_CASE("limit_variance formula and contraction guard") {
    const int m = 27;
    const Complex lambda = lambda27();
    const double v = limit_variance(m, lambda);
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx((analytic_EA2(m, lambda) - 1.0) /
                               (1.0 - contraction_constant(m, lambda.real()))));
    CHECK_THROWS_AS(limit_variance(26, find_lambda2(26).value), NonContracting);
}

TEST_CASE("one pool round from constants reproduces the law of A") {
    const int m = 27;
    const Complex lambda = lambda27();
    auto pool = iterate_pool(make_constant_pool(m, lambda, 50000, 7), 1, 7, 1);
    CHECK(pool.generation == 1);
    const double var_a = analytic_EA2(m, lambda) - 1.0;
    CHECK(std::abs(pool.mean() - Complex(1.0, 0.0)) <
          4.0 * std::sqrt(var_a / 50000.0));
    CHECK(std::abs(pool.variance(true) - var_a) < 0.05);

    // Distributional check against directly drawn multipliers.
    SamplePool direct;
    direct.m = m;
    direct.lambda = lambda;
    RandomStream rng = derive_stream(1234, {5});
    for (int i = 0; i < 50000; ++i) {
        direct.samples.push_back(compute_A(sample_spacings(m, rng), lambda).value);
    }
    auto res = energy_permutation_test(pool, direct, 512, 199, 31);
    CHECK(res.p_value > 0.01);
}

TEST_CASE("pool mean stays near 1 across generations") {
    const int m = 27;
    const std::size_t n = 20000;
    auto pool = make_constant_pool(m, lambda27(), n, 11);
    const double sd_eq = std::sqrt(limit_variance(m, lambda27()));
    for (int g = 1; g <= 10; ++g) {
        pool = iterate_pool(pool, 1, 11, 1);
        // The generations are dependent (resampling ancestry), so the drift
        // of the mean accumulates like a random walk across rounds; the
        // i.i.d. 4 sigma band applies per round, sqrt(g) overall.
        const double band =
            4.0 * std::sqrt(static_cast<double>(g)) * sd_eq / std::sqrt(n);
        CHECK(std::abs(pool.mean() - Complex(1.0, 0.0)) < band);
    }
}

TEST_CASE("pool iteration is deterministic and worker-invariant") {
    const int m = 27;
    auto base = make_constant_pool(m, lambda27(), 5000, 21);
    auto a = iterate_pool(base, 3, 21, 1);
    auto b = iterate_pool(base, 3, 21, 4);
    CHECK(a.samples == b.samples);
    auto c = iterate_pool(base, 3, 22, 1);
    CHECK(a.samples != c.samples);
}

TEST_CASE("cascade pool sampler is worker-invariant") {
    CascadeConfig cfg{27, lambda27(), 1, 77};
    auto a = sample_cascade_pool(cfg, 10000, 1);
    auto b = sample_cascade_pool(cfg, 10000, 4);
    CHECK(a.samples == b.samples);
}

TEST_CASE("energy statistic is zero on identical pools") {
    auto pool = iterate_pool(make_constant_pool(27, lambda27(), 2000, 3), 2, 3, 1);
    RandomStream rng(5);
    CHECK(energy_statistic(pool, pool, 8, rng) == 0.0);
}

TEST_CASE("energy test separates a shifted pool") {
    auto pool = iterate_pool(make_constant_pool(27, lambda27(), 5000, 3), 5, 3, 1);
    SamplePool shifted = pool;
    for (auto& z : shifted.samples) z += 1.0;
    auto res = energy_permutation_test(pool, shifted, 512, 199, 17);
    CHECK(res.p_value < 0.01);
    CHECK(res.statistic > 0.0);
}

TEST_CASE("fixed point: an extra round leaves a converged pool unchanged") {
    const int m = 27;
    auto pool = iterate_pool(make_constant_pool(m, lambda27(), 30000, 13), 30, 13, 1);
    auto next = iterate_pool(pool, 1, 14, 1);
    auto res = energy_permutation_test(pool, next, 1024, 199, 19);
    CHECK(res.p_value > 0.01);
}
