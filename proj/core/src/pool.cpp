#include "mst/pool.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <memory>

#include "mst/errors.hpp"

namespace mst {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::CascadeDepthN: return "cascade-depth-n";
        case Provenance::PoolIterated: return "pool-iterated";
        case Provenance::TreeDerived: return "tree-derived";
    }
    return "unknown";
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "cascade-depth-n") return Provenance::CascadeDepthN;
    if (s == "pool-iterated") return Provenance::PoolIterated;
    if (s == "tree-derived") return Provenance::TreeDerived;
    throw ConfigError("unknown provenance tag: " + s);
}

Complex SamplePool::mean() const {
    Complex s = 0.0;
    for (Complex z : samples) s += z;
    return samples.empty() ? Complex(0.0) : s / static_cast<double>(samples.size());
}

double SamplePool::variance(bool about_one) const {
    if (samples.empty()) return 0.0;
    const Complex c = about_one ? Complex(1.0, 0.0) : mean();
    double s = 0.0;
    for (Complex z : samples) s += std::norm(z - c);
    return s / static_cast<double>(samples.size());
}

void write_pool_csv(const SamplePool& pool, const std::string& path) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(
        std::fopen(path.c_str(), "w"), &std::fclose);
    if (!f) throw ConfigError("cannot open for writing: " + path);
    std::fprintf(f.get(),
                 "# provenance=%s, m=%d, lambda_re=%.17g, lambda_im=%.17g, "
                 "seed=%" PRIu64 ", n=%zu, generation=%d\n",
                 to_string(pool.provenance).c_str(), pool.m,
                 pool.lambda.real(), pool.lambda.imag(), pool.seed,
                 pool.samples.size(), pool.generation);
    std::fprintf(f.get(), "re,im\n");
    for (Complex z : pool.samples) {
        std::fprintf(f.get(), "%.17g,%.17g\n", z.real(), z.imag());
    }
}

SamplePool read_pool_csv(const std::string& path) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(
        std::fopen(path.c_str(), "r"), &std::fclose);
    if (!f) throw ConfigError("cannot open for reading: " + path);
    SamplePool pool;
    char line[512];
    if (!std::fgets(line, sizeof line, f.get())) {
        throw ConfigError("empty pool file: " + path);
    }
    char prov[64] = "pool-iterated";
    std::uint64_t n = 0;
    if (line[0] == '#') {
        double lre = 0.0, lim = 0.0;
        std::sscanf(line,
                    "# provenance=%63[^,], m=%d, lambda_re=%lg, lambda_im=%lg, "
                    "seed=%" SCNu64 ", n=%" SCNu64 ", generation=%d",
                    prov, &pool.m, &lre, &lim, &pool.seed, &n,
                    &pool.generation);
        pool.lambda = Complex(lre, lim);
        if (!std::fgets(line, sizeof line, f.get())) {
            throw ConfigError("truncated pool file: " + path);
        }
    }
    pool.provenance = provenance_from_string(prov);
    pool.samples.reserve(n);
    double re, im;
    while (std::fgets(line, sizeof line, f.get())) {
        if (std::sscanf(line, "%lg,%lg", &re, &im) == 2) {
            pool.samples.emplace_back(re, im);
        }
    }
    if (pool.samples.empty()) throw ConfigError("no samples in pool: " + path);
    return pool;
}

}  // namespace mst
