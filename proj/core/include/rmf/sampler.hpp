#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "rmf/common.hpp"
#include "rmf/primes.hpp"

namespace rmf {

using cplx = std::complex<double>;

namespace detail {

// splitmix64-style finalizer; statistically solid for Monte Carlo streams.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// counter-based word for (seed, stream, counter): no state, any evaluation
// order reproduces the same value.
inline uint64_t counter_word(uint64_t seed, uint64_t stream, uint64_t counter) {
    uint64_t h = mix64(seed ^ 0x8f1bbcdc2f1c94e5ull);
    h = mix64(h ^ stream);
    return mix64(h ^ counter);
}

}  // namespace detail

// One realization of a random multiplicative function. Prime values are a
// pure hash of (seed, stream_id, p): no stored map, reproducible under any
// parallel schedule. Immutable value object.
class MultiplicativeSample {
  public:
    MultiplicativeSample(Model model, const PrimeTable& table, uint64_t seed,
                         uint64_t stream_id)
        : model_(model), table_(&table), seed_(seed), stream_(stream_id) {}

    Model model() const { return model_; }
    const PrimeTable& table() const { return *table_; }
    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_; }

    // f(p) for prime p: a unit complex (Steinhaus) or +-1 (Rademacher).
    cplx prime_value(uint64_t p) const;
    double prime_sign(uint64_t p) const;  // Rademacher fast path

    // f(n) for 1 <= n <= table.limit.
    cplx value_at(uint64_t n) const;

  private:
    Model model_;
    const PrimeTable* table_;
    uint64_t seed_;
    uint64_t stream_;
};

inline MultiplicativeSample new_sample(Model model, const PrimeTable& table,
                                       uint64_t seed, uint64_t stream_id) {
    return MultiplicativeSample(model, table, seed, stream_id);
}

// S(x) = sum_{n <= x} f(n).
cplx partial_sum(const MultiplicativeSample& sample, uint64_t x);

// Partial sums at several cut points (ascending), from one pass up to the
// largest cut. cuts must satisfy cuts.back() <= table.limit.
std::vector<cplx> partial_sums(const MultiplicativeSample& sample,
                               std::span<const uint64_t> cuts);

// sum over n <= x whose prime factors all lie in (rough_bound, smooth_bound];
// n = 1 is always included.
cplx restricted_sum(const MultiplicativeSample& sample, uint64_t x,
                    double smooth_bound, double rough_bound);

}  // namespace rmf
