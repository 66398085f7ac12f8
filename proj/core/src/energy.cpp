#include "mst/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mst/errors.hpp"

namespace mst {

double energy_statistic(const SamplePool& p, const SamplePool& q,
                        int pairs_per_sample, RandomStream& rng) {
    if (p.samples.empty() || q.samples.empty()) throw ConfigError("empty pool");
    const auto& x = p.samples;
    const auto& y = q.samples;
    const std::uint64_t n1 = x.size();
    const std::uint64_t n2 = y.size();
    const std::uint64_t reps =
        static_cast<std::uint64_t>(pairs_per_sample) * std::max(n1, n2);
    double acc = 0.0;
    // Shared (i,j) indices across the three terms, so identical pools give
    // exactly zero term by term.
    for (std::uint64_t r = 0; r < reps; ++r) {
        std::uint64_t i = rng.below(n1);
        std::uint64_t j = rng.below(n2);
        acc += 2.0 * std::abs(x[i] - y[j]) - std::abs(x[i] - x[j % n1]) -
               std::abs(y[i % n2] - y[j]);
    }
    return acc / static_cast<double>(reps);
}

namespace {

// Energy statistic from a pooled distance matrix given a label assignment:
// labels[i] true = first sample.
double matrix_energy(const std::vector<float>& dist, std::size_t n,
                     const std::vector<std::uint32_t>& first,
                     const std::vector<std::uint32_t>& second) {
    double dxy = 0.0, dxx = 0.0, dyy = 0.0;
    for (std::uint32_t a : first) {
        const float* row = dist.data() + static_cast<std::size_t>(a) * n;
        for (std::uint32_t b : second) dxy += row[b];
        for (std::uint32_t b : first) dxx += row[b];
    }
    for (std::uint32_t a : second) {
        const float* row = dist.data() + static_cast<std::size_t>(a) * n;
        for (std::uint32_t b : second) dyy += row[b];
    }
    const double n1 = static_cast<double>(first.size());
    const double n2 = static_cast<double>(second.size());
    return 2.0 * dxy / (n1 * n2) - dxx / (n1 * n1) - dyy / (n2 * n2);
}

std::vector<Complex> subsample(const std::vector<Complex>& v, std::size_t k,
                               RandomStream& rng) {
    if (v.size() <= k) return v;
    // Partial Fisher-Yates on an index vector.
    std::vector<std::uint64_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Complex> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t j = i + rng.below(idx.size() - i);
        std::swap(idx[i], idx[j]);
        out.push_back(v[idx[i]]);
    }
    return out;
}

}  // namespace

EnergyResult energy_permutation_test(const SamplePool& p, const SamplePool& q,
                                     std::size_t n_sub, int n_permutations,
                                     std::uint64_t seed) {
    if (p.samples.size() < 100 || q.samples.size() < 100) {
        throw ConfigError("energy test needs pools of size >= 100");
    }
    RandomStream rng = derive_stream(seed, {0x656e6572ULL});
    EnergyResult res;
    res.statistic = energy_statistic(p, q, 16, rng);

    std::vector<Complex> xs = subsample(p.samples, n_sub, rng);
    std::vector<Complex> ys = subsample(q.samples, n_sub, rng);
    const std::size_t n1 = xs.size(), n2 = ys.size(), n = n1 + n2;
    std::vector<Complex> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), xs.begin(), xs.end());
    pooled.insert(pooled.end(), ys.begin(), ys.end());
    std::vector<float> dist(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            float d = static_cast<float>(std::abs(pooled[i] - pooled[j]));
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    std::vector<std::uint32_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    std::vector<std::uint32_t> first(labels.begin(),
                                     labels.begin() + static_cast<long>(n1));
    std::vector<std::uint32_t> second(labels.begin() + static_cast<long>(n1),
                                      labels.end());
    const double observed = matrix_energy(dist, n, first, second);
    int geq = 0;
    for (int perm = 0; perm < n_permutations; ++perm) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::uint64_t j = i + rng.below(n - i);
            std::swap(labels[i], labels[j]);
        }
        first.assign(labels.begin(), labels.begin() + static_cast<long>(n1));
        second.assign(labels.begin() + static_cast<long>(n1), labels.end());
        if (matrix_energy(dist, n, first, second) >= observed) ++geq;
    }
    res.p_value = (1.0 + geq) / (1.0 + n_permutations);
    return res;
}

}  // namespace mst
