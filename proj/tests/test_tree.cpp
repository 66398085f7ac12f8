#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "mst/charpoly.hpp"
#include "mst/errors.hpp"
#include "mst/search_tree.hpp"

using namespace mst;

namespace {

// Key sequence of the worked 4-ary example.
const std::vector<double> kFigureKeys = {
    0.3,  0.1,  0.4,  0.15, 0.9,  0.2,  0.6,  0.5,  0.35,
    0.8,  0.97, 0.93, 0.23, 0.84, 0.62, 0.64, 0.33, 0.83};

}  // namespace

TEST_CASE("figure tree: composition (9,2,2) with the gap identity throughout") {
    SearchTree tree(4);
    auto c0 = tree.composition();
    CHECK(c0.counts == std::vector<std::int64_t>{1, 0, 0});
    for (double key : kFigureKeys) {
        tree.insert(key);
        auto c = tree.composition();
        CHECK(c.gap_sum() == c.n + 1);
    }
    auto c = tree.composition();
    CHECK(c.n == 18);
    CHECK(c.counts == std::vector<std::int64_t>{9, 2, 2});
    // In-order keys sorted.
    auto keys = tree.in_order_keys();
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(keys.size() == 18);
}

TEST_CASE("root saturation at n = m-1") {
    for (int m : {2, 3, 4, 7}) {
        SearchTree tree(m);
        for (int i = 0; i < m - 1; ++i) {
            tree.insert((i + 1.0) / m);
        }
        auto c = tree.composition();
        CHECK(c.counts.front() == m);  // m fresh empty children
        for (std::size_t i = 1; i < c.counts.size(); ++i) {
            CHECK(c.counts[i] == 0);
        }
        CHECK(c.gap_sum() == c.n + 1);
    }
}

TEST_CASE("duplicate keys are rejected") {
    SearchTree tree(4);
    tree.insert(0.5);
    CHECK_THROWS_AS(tree.insert(0.5), DuplicateKey);
}

TEST_CASE("gap identity on random trees") {
    RandomStream rng(3);
    for (int m : {2, 3, 27}) {
        SearchTree tree(m);
        for (int i = 0; i < 5000; ++i) {
            tree.insert(rng.uniform());
            if (i % 257 == 0) {
                CHECK(tree.composition().gap_sum() == tree.key_count() + 1);
            }
        }
        CHECK(tree.composition().gap_sum() == tree.key_count() + 1);
    }
}

TEST_CASE("urn eigenvector examples") {
    // Perron root lambda = 1: u_i = i.
    auto u1 = urn_eigenvector(5, {1.0, 0.0});
    for (std::size_t i = 0; i < u1.u.size(); ++i) {
        CHECK(u1.u[i].real() == doctest::Approx(i + 1.0).epsilon(1e-12));
        CHECK(u1.u[i].imag() == doctest::Approx(0.0));
    }
    // m=3, lambda=-4: u = (1, -3).
    auto u2 = urn_eigenvector(3, {-4.0, 0.0});
    REQUIRE(u2.u.size() == 2);
    CHECK(u2.u[1].real() == doctest::Approx(-3.0).epsilon(1e-12));
    // m=27 with lambda2 satisfies the closure relation.
    CHECK_NOTHROW(urn_eigenvector(27, find_lambda2(27).value));
    // A non-root fails the closure relation.
    CHECK_THROWS_AS(urn_eigenvector(27, Complex(0.4, 2.0)), NotAnEigenvalue);
}

TEST_CASE("martingale one-step identity by conditional Monte Carlo") {
    const int m = 5;
    const Complex lambda = find_lambda2(m).value;
    const auto u = urn_eigenvector(m, lambda);
    // A fixed mid-sized tree.
    RandomStream seed_rng(41);
    SearchTree base(m);
    for (int i = 0; i < 200; ++i) base.insert(seed_rng.uniform());
    const Complex before = urn_projection(u, base.composition());
    const auto n = static_cast<double>(base.key_count());
    const Complex expected = before * (1.0 + lambda / (n + 1.0));

    const int trials = 10000;
    Complex acc = 0.0;
    double spread = 0.0;
    for (int t = 0; t < trials; ++t) {
        SearchTree tree = base;
        for (;;) {
            try {
                tree.insert(seed_rng.uniform());
                break;
            } catch (const DuplicateKey&) {
            }
        }
        const Complex after = urn_projection(u, tree.composition());
        acc += after;
        spread += std::norm(after - expected);
    }
    const Complex mean = acc / static_cast<double>(trials);
    const double se = std::sqrt(spread / trials / trials);
    CHECK(std::abs(mean - expected) < 4.0 * se);
}

TEST_CASE("extract_W_sample at n = 0 is exactly 1") {
    RandomStream rng(1);
    CHECK(extract_W_sample(27, 0, find_lambda2(27).value, rng) ==
          Complex(1.0, 0.0));
}

TEST_CASE("E M_n = 1 over independent runs") {
    const int m = 27;
    const Complex lambda = find_lambda2(m).value;
    auto pool = sample_tree_pool(m, 10000, 1000, lambda, 2024, 1);
    const Complex mean = pool.mean();
    double var = pool.variance();
    const double se = std::sqrt(var / static_cast<double>(pool.samples.size()));
    CHECK(std::abs(mean - Complex(1.0, 0.0)) < 4.0 * se);
}

TEST_CASE("tree pool sampling is worker-invariant") {
    const Complex lambda = find_lambda2(27).value;
    auto a = sample_tree_pool(27, 500, 200, lambda, 9, 1);
    auto b = sample_tree_pool(27, 500, 200, lambda, 9, 4);
    CHECK(a.samples == b.samples);
}

TEST_CASE("fluctuation profile runs and is deterministic") {
    const Complex lambda = find_lambda2(27).value;
    auto a = fluctuation_profile(27, {100, 300, 1000}, 50, lambda, 5, 1);
    auto b = fluctuation_profile(27, {100, 300, 1000}, 50, lambda, 5, 2);
    REQUIRE(a.rows.size() == 3);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].sd == b.rows[i].sd);
        CHECK(a.rows[i].sd > 0.0);
    }
    CHECK(a.slope == b.slope);
}

TEST_CASE("recursive sampler: exact small-n values") {
    const int m = 5;
    const Complex lambda = find_lambda2(m).value;
    RandomStream rng(14);
    // Below saturation the martingale is identically 1.
    for (std::int64_t n = 0; n <= m - 2; ++n) {
        CHECK(sample_W_recursive(m, n, lambda, rng) == Complex(1.0, 0.0));
    }
    // At n = m-1 the root saturates deterministically: M = m / pi_{m-1}.
    const Complex expect =
        static_cast<double>(m) * std::exp(-log_pi(m - 1, lambda));
    for (int trial = 0; trial < 20; ++trial) {
        const Complex got = sample_W_recursive(m, m - 1, lambda, rng);
        CHECK(std::abs(got - expect) < 1e-12);
    }
    // The tree sampler agrees exactly there too.
    RandomStream rng2(15);
    CHECK(std::abs(extract_W_sample(m, m - 1, lambda, rng2) - expect) < 1e-12);
}

TEST_CASE("recursive sampler: mean one and worker invariance") {
    const Complex lambda = find_lambda2(27).value;
    auto pool = sample_recursive_pool(27, 20000, 2000, lambda, 77, 1);
    const Complex mean = pool.mean();
    const double se =
        std::sqrt(pool.variance() / static_cast<double>(pool.samples.size()));
    CHECK(std::abs(mean - Complex(1.0, 0.0)) < 4.0 * se);
    auto b = sample_recursive_pool(27, 20000, 2000, lambda, 77, 4);
    CHECK(pool.samples == b.samples);
}

TEST_CASE("m=2 degenerate composition vector") {
    SearchTree tree(2);
    RandomStream rng(8);
    for (int i = 0; i < 100; ++i) tree.insert(rng.uniform());
    auto c = tree.composition();
    REQUIRE(c.counts.size() == 1);
    CHECK(c.counts[0] == 101);  // external nodes = n + 1
}
