#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace mst {

using Complex = std::complex<double>;

enum class Provenance { CascadeDepthN, PoolIterated, TreeDerived };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

/// A population of complex samples approximating the law of a fixed point.
struct SamplePool {
    std::vector<Complex> samples;
    int m = 0;
    Complex lambda;
    int generation = 0;
    Provenance provenance = Provenance::PoolIterated;
    std::uint64_t seed = 0;

    Complex mean() const;
    /// Variance around the exact mean 1 when `about_one`, else around the
    /// empirical mean: E |Z - c|^2.
    double variance(bool about_one = false) const;
};

/// CSV with a self-describing metadata header line, then one `re,im` row per
/// sample. Doubles are written with round-trip precision so files are
/// byte-stable across reruns.
void write_pool_csv(const SamplePool& pool, const std::string& path);
SamplePool read_pool_csv(const std::string& path);

}  // namespace mst
