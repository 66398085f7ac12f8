#pragma once

#include <cstdint>
#include <vector>

#include "mst/pool.hpp"
#include "mst/rng.hpp"

namespace mst {

/// Counts X^(1)..X^(m-1) of external nodes by type: a type-i node holds i-1
/// keys and i gaps. Sum of i * X^(i) is always n+1 (one gap consumed, net one
/// created per insertion).
struct CompositionVector {
    int m = 0;
    std::int64_t n = 0;
    std::vector<std::int64_t> counts;  // index 0 <-> type 1

    std::int64_t gap_sum() const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            s += static_cast<std::int64_t>(i + 1) * counts[i];
        }
        return s;
    }
};

/// m-ary search tree over an index-based node arena. A node holds up to m-1
/// sorted keys; inserting the (m-1)-th key saturates it and creates its m
/// children immediately.
class SearchTree {
public:
    explicit SearchTree(int m);

    int m() const { return m_; }
    std::int64_t key_count() const { return n_; }

    /// Throws DuplicateKey when the key is already stored; the caller
    /// resamples (ties have probability zero for diffusive key laws).
    void insert(double key);

    CompositionVector composition() const;

    /// In-order key sequence (for the sortedness invariant).
    std::vector<double> in_order_keys() const;

private:
    struct Node {
        std::vector<double> keys;
        std::int32_t first_child = -1;  // m contiguous children when saturated
    };
    int m_;
    std::int64_t n_ = 0;
    std::vector<Node> arena_;
    std::vector<std::int64_t> counts_;  // external nodes by type

    void collect_keys(std::int32_t node, std::vector<double>& out) const;
};

struct UrnEigenvector {
    int m = 0;
    Complex lambda;
    std::vector<Complex> u;  // length m-1, u[0] = 1
};

/// Left eigenvector of the replacement dynamics: u_{i+1} = u_i (lambda+i)/i.
/// The closure relation (m-1)(m u_1 - u_{m-1}) = lambda u_{m-1} holds exactly
/// when lambda is a characteristic root; throws NotAnEigenvalue otherwise.
UrnEigenvector urn_eigenvector(int m, Complex lambda);

/// Bilinear pairing sum_i u_i X^(i) (no conjugation).
Complex urn_projection(const UrnEigenvector& u, const CompositionVector& x);

/// log prod_{k=1}^n (1 + lambda/k); the martingale normalizer in log space.
Complex log_pi(std::int64_t n, Complex lambda);

/// Grows a tree with n uniform keys and returns M_n = <u, X_n> / pi_n.
/// M_0 = 1 and E M_n = 1 for all n; the limit is proportional to W.
Complex extract_W_sample(int m, std::int64_t n, Complex lambda,
                         RandomStream& rng);

/// Independent W samples across runs, chunk-parallel and worker-invariant.
SamplePool sample_tree_pool(int m, std::int64_t n, std::size_t runs,
                            Complex lambda, std::uint64_t seed, int workers);

/// Top-down sampler of exactly the same law as extract_W_sample, via the
/// subtree decomposition M_n = sum_k (pi_{n_k}/pi_n) M_{n_k}: the root keeps
/// m-1 keys whose spacings are Dirichlet, the remaining keys split
/// multinomially, and a subtree that can never saturate (j <= m-2 keys) has
/// M_j = 1 exactly since u_{j+1} = pi_j. Shares no code path with tree
/// growth, which makes it a cross-validation oracle for the tree sampler.
Complex sample_W_recursive(int m, std::int64_t n, Complex lambda,
                           RandomStream& rng);

SamplePool sample_recursive_pool(int m, std::int64_t n, std::size_t runs,
                                 Complex lambda, std::uint64_t seed,
                                 int workers);

struct FluctuationRow {
    std::int64_t n = 0;
    double sd = 0.0;  // empirical sd of <u, X_n> across runs
};

struct FluctuationProfile {
    std::vector<FluctuationRow> rows;
    double slope = 0.0;  // regression of log sd on log n; ~ sigma2 for m >= 27
};

FluctuationProfile fluctuation_profile(int m, const std::vector<std::int64_t>& n_grid,
                                       std::size_t runs, Complex lambda,
                                       std::uint64_t seed, int workers);

}  // namespace mst
