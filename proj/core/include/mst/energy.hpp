#pragma once

#include <cstdint>

#include "mst/pool.hpp"
#include "mst/rng.hpp"

namespace mst {

struct EnergyResult {
    double statistic = 0.0;  // 2 E|X-Y| - E|X-X'| - E|Y-Y'| estimate
    double p_value = 1.0;    // permutation test on a subsample
};

/// Paired-index estimator of the energy distance on the full pools, O(n k).
/// Exactly zero when the pools are elementwise identical.
double energy_statistic(const SamplePool& p, const SamplePool& q,
                        int pairs_per_sample, RandomStream& rng);

/// Two-sample energy test: statistic on the full pools plus a permutation
/// p-value computed from a precomputed distance matrix on subsamples of size
/// min(n, n_sub) each.
EnergyResult energy_permutation_test(const SamplePool& p, const SamplePool& q,
                                     std::size_t n_sub, int n_permutations,
                                     std::uint64_t seed);

}  // namespace mst
