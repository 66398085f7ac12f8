#pragma once

#include <cstdint>

#include "mst/pool.hpp"
#include "mst/rng.hpp"
#include "mst/spacings.hpp"

namespace mst {

inline constexpr std::uint64_t kDefaultWorkBudget = 100'000'000;

struct CascadeConfig {
    int m = 0;
    Complex lambda;
    int depth = 1;
    std::uint64_t seed = 0;
    std::uint64_t work_budget = kDefaultWorkBudget;  // leaf evaluations per call
};

/// One realization of the cascade martingale Y_n by depth-first recursion:
/// Y_1 = A, Y_{n+1} = sum_k V_k^lambda Y_{n,k}. Costs Theta(m^depth) leaves.
Complex sample_Yn(const CascadeConfig& config, RandomStream& rng);

/// i.i.d. Y_n samples, chunk-parallel and worker-invariant.
SamplePool sample_cascade_pool(const CascadeConfig& config, std::size_t count,
                               int workers);

/// Var(Y_inf) = (E|A|^2 - 1) / (1 - m E V^(2 sigma)); throws NonContracting
/// when the denominator is not positive.
double limit_variance(int m, Complex lambda);

/// Population-dynamics step for Z =law= sum_k V_k^lambda Z_k: each round
/// rebuilds every sample from m parents drawn uniformly with replacement from
/// the previous generation plus a fresh spacing vector. Generation g is
/// immutable input while g+1 is produced; chunk seeding makes the result
/// independent of the worker count.
SamplePool iterate_pool(const SamplePool& pool, int rounds,
                        std::uint64_t master_seed, int workers);

/// All-ones pool of the given size (the cascade start Y_0 == 1).
SamplePool make_constant_pool(int m, Complex lambda, std::size_t size,
                              std::uint64_t seed);

}  // namespace mst
