#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rmf/common.hpp"

namespace rmf {

struct Factorization {
    // (prime, exponent) pairs in ascending prime order; empty for n = 1.
    std::vector<std::pair<uint32_t, uint32_t>> prime_powers;

    uint64_t value() const;                 // product of p^a
    uint32_t omega_total() const;           // Omega(n), with multiplicity
    uint32_t largest_prime() const;         // P(n); 1 for n = 1
    bool squarefree() const;
};

// Smallest-prime-factor table up to `limit`, built with a segmented sieve.
// Memory: 4 bytes per integer (spf) plus the prime list, so limit = 1e8
// needs ~430 MB. Immutable after construction; safe for concurrent reads.
class PrimeTable {
  public:
    static constexpr uint64_t max_limit = (1ull << 31);  // documented bound

    explicit PrimeTable(uint64_t limit);

    uint64_t limit() const { return limit_; }
    uint32_t spf(uint64_t n) const;          // n in [2, limit]
    bool is_prime(uint64_t n) const { return n >= 2 && spf(n) == n; }
    bool is_squarefree(uint64_t n) const;    // n in [1, limit]
    const std::vector<uint32_t>& primes() const { return primes_; }
    uint64_t pi(double z) const;             // #{p <= z}

    Factorization factorize(uint64_t n) const;

    // On-disk cache, little-endian: magic "RMFSPF1\n", u64 limit, u32 spf[2..limit].
    void save_cache(const std::string& path) const;
    static PrimeTable load_cache(const std::string& path);

  private:
    PrimeTable() = default;
    uint64_t limit_ = 0;
    std::vector<uint32_t> spf_;     // spf_[n] for n in [0, limit], 0/1 unused
    std::vector<uint32_t> primes_;
};

inline PrimeTable build_table(uint64_t limit) { return PrimeTable(limit); }

// sum of p^-(1+shift) over primes lo < p <= hi. Requires 1 + shift > 0 and
// hi <= table.limit; empty ranges give 0.
double prime_reciprocal_sum(const PrimeTable& table, double lo, double hi, double shift);

// sum of cos(t log p) / p^(1+shift) over primes lo < p <= hi.
double cosine_prime_sum(const PrimeTable& table, double lo, double hi, double shift, double t);

}  // namespace rmf
