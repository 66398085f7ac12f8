#include "mst/search_tree.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "mst/errors.hpp"
#include "mst/parallel.hpp"
#include "mst/spacings.hpp"

namespace mst {

SearchTree::SearchTree(int m) : m_(m) {
    if (m < 2) throw InvalidBranchingFactor(m);
    arena_.emplace_back();
    counts_.assign(static_cast<std::size_t>(m - 1), 0);
    counts_[0] = 1;  // the empty root
}

void SearchTree::insert(double key) {
    std::int32_t cur = 0;
    for (;;) {
        Node& node = arena_[static_cast<std::size_t>(cur)];
        auto it = std::lower_bound(node.keys.begin(), node.keys.end(), key);
        if (it != node.keys.end() && *it == key) throw DuplicateKey();
        if (node.first_child < 0) {
            const auto old_keys = static_cast<int>(node.keys.size());
            node.keys.insert(it, key);
            counts_[static_cast<std::size_t>(old_keys)] -= 1;
            if (old_keys + 1 == m_ - 1) {
                // Saturation: m empty children, all of type 1.
                node.first_child = static_cast<std::int32_t>(arena_.size());
                arena_.resize(arena_.size() + static_cast<std::size_t>(m_));
                counts_[0] += m_;
            } else {
                counts_[static_cast<std::size_t>(old_keys + 1)] += 1;
            }
            n_ += 1;
            return;
        }
        const auto slot = static_cast<std::int32_t>(it - node.keys.begin());
        cur = node.first_child + slot;
    }
}

CompositionVector SearchTree::composition() const {
    return CompositionVector{m_, n_, counts_};
}

void SearchTree::collect_keys(std::int32_t node, std::vector<double>& out) const {
    const Node& nd = arena_[static_cast<std::size_t>(node)];
    if (nd.first_child < 0) {
        out.insert(out.end(), nd.keys.begin(), nd.keys.end());
        return;
    }
    for (int i = 0; i < m_; ++i) {
        collect_keys(nd.first_child + i, out);
        if (i < m_ - 1) out.push_back(nd.keys[static_cast<std::size_t>(i)]);
    }
}

std::vector<double> SearchTree::in_order_keys() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_));
    collect_keys(0, out);
    return out;
}

UrnEigenvector urn_eigenvector(int m, Complex lambda) {
    if (m < 2) throw InvalidBranchingFactor(m);
    UrnEigenvector ev{m, lambda, {Complex(1.0, 0.0)}};
    ev.u.reserve(static_cast<std::size_t>(m - 1));
    for (int i = 1; i <= m - 2; ++i) {
        ev.u.push_back(ev.u.back() * (lambda + static_cast<double>(i)) /
                       static_cast<double>(i));
    }
    if (m >= 3) {
        Complex last = ev.u.back();
        Complex closure = static_cast<double>(m - 1) *
                              (static_cast<double>(m) * ev.u.front() - last) -
                          lambda * last;
        double scale = static_cast<double>(m) * (1.0 + std::abs(last));
        double residual = std::abs(closure) / scale;
        if (residual > 1e-6) throw NotAnEigenvalue(residual);
    }
    return ev;
}

Complex urn_projection(const UrnEigenvector& u, const CompositionVector& x) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < u.u.size(); ++i) {
        s += u.u[i] * static_cast<double>(x.counts[i]);
    }
    return s;
}

Complex log_pi(std::int64_t n, Complex lambda) {
    Complex acc = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        acc += std::log(1.0 + lambda / static_cast<double>(k));
    }
    return acc;
}

Complex extract_W_sample(int m, std::int64_t n, Complex lambda,
                         RandomStream& rng) {
    UrnEigenvector u = urn_eigenvector(m, lambda);
    SearchTree tree(m);
    for (std::int64_t i = 0; i < n; ++i) {
        for (;;) {
            try {
                tree.insert(rng.uniform());
                break;
            } catch (const DuplicateKey&) {
            }
        }
    }
    return urn_projection(u, tree.composition()) * std::exp(-log_pi(n, lambda));
}

SamplePool sample_tree_pool(int m, std::int64_t n, std::size_t runs,
                            Complex lambda, std::uint64_t seed, int workers) {
    SamplePool pool;
    pool.m = m;
    pool.lambda = lambda;
    pool.provenance = Provenance::TreeDerived;
    pool.seed = seed;
    pool.samples.resize(runs);
    const Complex norm = std::exp(-log_pi(n, lambda));
    const UrnEigenvector u = urn_eigenvector(m, lambda);
    parallel_chunks(
        runs, seed, {0x74726565ULL}, workers,
        [&](std::size_t, std::size_t begin, std::size_t end,
            RandomStream& stream) {
            for (std::size_t i = begin; i < end; ++i) {
                SearchTree tree(m);
                for (std::int64_t k = 0; k < n; ++k) {
                    for (;;) {
                        try {
                            tree.insert(stream.uniform());
                            break;
                        } catch (const DuplicateKey&) {
                        }
                    }
                }
                pool.samples[i] = urn_projection(u, tree.composition()) * norm;
            }
        },
        64);
    return pool;
}

namespace {

struct RecursiveSampler {
    int m;
    const std::vector<Complex>& log_pi_table;  // [0..n]
    RandomStream& rng;
    std::vector<double> cum;          // scratch, size m+1
    std::vector<std::int64_t> sizes;  // scratch, size m

    Complex sample(std::int64_t j) {
        if (j <= m - 2) return Complex(1.0, 0.0);
        const SpacingVector v = sample_spacings(m, rng);
        cum.assign(1, 0.0);
        for (double x : v.values) cum.push_back(cum.back() + x);
        cum.back() = 1.0;
        sizes.assign(static_cast<std::size_t>(m), 0);
        for (std::int64_t k = 0; k < j - (m - 1); ++k) {
            const double x = rng.uniform();
            const auto it = std::upper_bound(cum.begin() + 1, cum.end(), x);
            sizes[static_cast<std::size_t>(it - cum.begin() - 1)] += 1;
        }
        // sizes[] is consumed before recursing (the recursion reuses scratch).
        const std::vector<std::int64_t> split = sizes;
        Complex acc = 0.0;
        const Complex lp_j = log_pi_table[static_cast<std::size_t>(j)];
        for (std::int64_t jk : split) {
            const Complex w =
                std::exp(log_pi_table[static_cast<std::size_t>(jk)] - lp_j);
            acc += w * sample(jk);
        }
        return acc;
    }
};

std::vector<Complex> log_pi_prefix(std::int64_t n, Complex lambda) {
    std::vector<Complex> table(static_cast<std::size_t>(n) + 1);
    table[0] = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        table[static_cast<std::size_t>(k)] =
            table[static_cast<std::size_t>(k - 1)] +
            std::log(1.0 + lambda / static_cast<double>(k));
    }
    return table;
}

}  // namespace

Complex sample_W_recursive(int m, std::int64_t n, Complex lambda,
                           RandomStream& rng) {
    if (m < 2) throw InvalidBranchingFactor(m);
    const auto table = log_pi_prefix(n, lambda);
    RecursiveSampler sampler{m, table, rng, {}, {}};
    return sampler.sample(n);
}

SamplePool sample_recursive_pool(int m, std::int64_t n, std::size_t runs,
                                 Complex lambda, std::uint64_t seed,
                                 int workers) {
    if (m < 2) throw InvalidBranchingFactor(m);
    SamplePool pool;
    pool.m = m;
    pool.lambda = lambda;
    pool.provenance = Provenance::TreeDerived;
    pool.seed = seed;
    pool.samples.resize(runs);
    const auto table = log_pi_prefix(n, lambda);
    parallel_chunks(
        runs, seed, {0x72656375ULL}, workers,
        [&](std::size_t, std::size_t begin, std::size_t end,
            RandomStream& stream) {
            RecursiveSampler sampler{m, table, stream, {}, {}};
            for (std::size_t i = begin; i < end; ++i) {
                pool.samples[i] = sampler.sample(n);
            }
        },
        64);
    return pool;
}

FluctuationProfile fluctuation_profile(int m,
                                       const std::vector<std::int64_t>& n_grid,
                                       std::size_t runs, Complex lambda,
                                       std::uint64_t seed, int workers) {
    std::vector<std::int64_t> grid = n_grid;
    std::sort(grid.begin(), grid.end());
    const std::int64_t n_max = grid.empty() ? 0 : grid.back();
    const UrnEigenvector u = urn_eigenvector(m, lambda);
    // One tree per run, projections recorded at each grid checkpoint.
    std::vector<std::vector<Complex>> proj(runs,
                                           std::vector<Complex>(grid.size()));
    parallel_chunks(
        runs, seed, {0x666c7563ULL}, workers,
        [&](std::size_t, std::size_t begin, std::size_t end,
            RandomStream& stream) {
            for (std::size_t r = begin; r < end; ++r) {
                SearchTree tree(m);
                std::size_t g = 0;
                for (std::int64_t k = 0; k < n_max && g < grid.size(); ++k) {
                    for (;;) {
                        try {
                            tree.insert(stream.uniform());
                            break;
                        } catch (const DuplicateKey&) {
                        }
                    }
                    while (g < grid.size() && tree.key_count() == grid[g]) {
                        proj[r][g] = urn_projection(u, tree.composition());
                        ++g;
                    }
                }
            }
        },
        8);
    FluctuationProfile out;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        Complex mean = 0.0;
        for (std::size_t r = 0; r < runs; ++r) mean += proj[r][g];
        mean /= static_cast<double>(runs);
        double var = 0.0;
        for (std::size_t r = 0; r < runs; ++r) var += std::norm(proj[r][g] - mean);
        var /= static_cast<double>(runs > 1 ? runs - 1 : 1);
        double sd = std::sqrt(var);
        out.rows.push_back({grid[g], sd});
        double lx = std::log(static_cast<double>(grid[g]));
        double ly = std::log(sd);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double k = static_cast<double>(grid.size());
    if (k >= 2) out.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    return out;
}

}  // namespace mst
