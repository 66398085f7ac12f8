#include "mst/cascade.hpp"

#include <cmath>
#include <string>

#include "mst/errors.hpp"
#include "mst/parallel.hpp"

namespace mst {

namespace {

Complex cascade_rec(int m, Complex lambda, int depth, RandomStream& rng) {
    SpacingVector v = sample_spacings(m, rng);
    const double sigma = lambda.real();
    const double tau = lambda.imag();
    Complex sum = 0.0;
    for (double x : v.values) {
        double lx = std::log(x);
        double mod = std::exp(sigma * lx);
        Complex w(mod * std::cos(tau * lx), mod * std::sin(tau * lx));
        if (depth > 1) w *= cascade_rec(m, lambda, depth - 1, rng);
        sum += w;
    }
    return sum;
}

}  // namespace

Complex sample_Yn(const CascadeConfig& config, RandomStream& rng) {
    if (config.depth < 1) throw ConfigError("cascade depth must be >= 1");
    if (config.lambda.real() <= 0.0) {
        throw ConfigError("cascade needs Re lambda > 0");
    }
    double leaves = std::pow(static_cast<double>(config.m), config.depth);
    if (leaves > static_cast<double>(config.work_budget)) {
        throw WorkBudgetExceeded(
            "m^depth = " + std::to_string(leaves) + " exceeds work budget " +
            std::to_string(config.work_budget) + "; use pool iteration");
    }
    return cascade_rec(config.m, config.lambda, config.depth, rng);
}

SamplePool sample_cascade_pool(const CascadeConfig& config, std::size_t count,
                               int workers) {
    SamplePool pool;
    pool.m = config.m;
    pool.lambda = config.lambda;
    pool.generation = config.depth;
    pool.provenance = Provenance::CascadeDepthN;
    pool.seed = config.seed;
    pool.samples.resize(count);
    // Pre-flight the budget check so the error surfaces before any work.
    double leaves = std::pow(static_cast<double>(config.m), config.depth);
    if (leaves > static_cast<double>(config.work_budget)) {
        throw WorkBudgetExceeded("m^depth exceeds work budget");
    }
    parallel_chunks(count, config.seed, {0x6361736bULL}, workers,
                    [&](std::size_t, std::size_t begin, std::size_t end,
                        RandomStream& stream) {
                        for (std::size_t i = begin; i < end; ++i) {
                            pool.samples[i] = cascade_rec(
                                config.m, config.lambda, config.depth, stream);
                        }
                    });
    return pool;
}

double limit_variance(int m, Complex lambda) {
    double c = contraction_constant(m, lambda.real());
    if (c >= 1.0) throw NonContracting(c);
    return (analytic_EA2(m, lambda) - 1.0) / (1.0 - c);
}

SamplePool iterate_pool(const SamplePool& pool, int rounds,
                        std::uint64_t master_seed, int workers) {
    if (pool.samples.empty()) throw ConfigError("empty pool");
    const int m = pool.m;
    const Complex lambda = pool.lambda;
    const double sigma = lambda.real();
    const double tau = lambda.imag();
    SamplePool cur = pool;
    cur.provenance = Provenance::PoolIterated;
    for (int r = 0; r < rounds; ++r) {
        const std::vector<Complex>& prev = cur.samples;
        std::vector<Complex> next(prev.size());
        const std::uint64_t n = prev.size();
        parallel_chunks(
            prev.size(), master_seed,
            {0x706f6f6cULL, static_cast<std::uint64_t>(cur.generation)},
            workers,
            [&](std::size_t, std::size_t begin, std::size_t end,
                RandomStream& stream) {
                for (std::size_t i = begin; i < end; ++i) {
                    SpacingVector v = sample_spacings(m, stream);
                    Complex sum = 0.0;
                    for (double x : v.values) {
                        double lx = std::log(x);
                        double mod = std::exp(sigma * lx);
                        Complex w(mod * std::cos(tau * lx),
                                  mod * std::sin(tau * lx));
                        sum += w * prev[stream.below(n)];
                    }
                    next[i] = sum;
                }
            });
        cur.samples = std::move(next);
        cur.generation += 1;
    }
    return cur;
}

SamplePool make_constant_pool(int m, Complex lambda, std::size_t size,
                              std::uint64_t seed) {
    SamplePool pool;
    pool.m = m;
    pool.lambda = lambda;
    pool.generation = 0;
    pool.provenance = Provenance::PoolIterated;
    pool.seed = seed;
    pool.samples.assign(size, Complex(1.0, 0.0));
    return pool;
}

}  // namespace mst
