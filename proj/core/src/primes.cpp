#include "rmf/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace rmf {

uint64_t Factorization::value() const {
    uint64_t n = 1;
    for (auto [p, a] : prime_powers)
        for (uint32_t i = 0; i < a; ++i) n *= p;
    return n;
}

uint32_t Factorization::omega_total() const {
    uint32_t s = 0;
    for (auto [p, a] : prime_powers) s += a;
    return s;
}

uint32_t Factorization::largest_prime() const {
    return prime_powers.empty() ? 1u : prime_powers.back().first;
}

bool Factorization::squarefree() const {
    for (auto [p, a] : prime_powers)
        if (a > 1) return false;
    return true;
}

PrimeTable::PrimeTable(uint64_t limit) : limit_(limit) {
    if (limit == 0) throw capacity_error("PrimeTable: limit must be >= 1");
    if (limit > max_limit)
        throw capacity_error("PrimeTable: limit exceeds documented memory bound 2^31");

    spf_.assign(limit + 1, 0);

    // Base sieve up to sqrt(limit), then mark segments for cache locality.
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    while (root * root > limit) --root;
    std::vector<uint32_t> base;
    for (uint64_t i = 2; i <= root; ++i) {
        if (spf_[i] == 0) {
            base.push_back(static_cast<uint32_t>(i));
            for (uint64_t j = i; j <= root; j += i)
                if (spf_[j] == 0) spf_[j] = static_cast<uint32_t>(i);
        }
    }

    constexpr uint64_t seg = 1 << 20;
    for (uint64_t lo = root + 1; lo <= limit; lo += seg) {
        uint64_t hi = std::min(lo + seg - 1, limit);
        for (uint32_t p : base) {
            uint64_t start = ((lo + p - 1) / p) * p;
            for (uint64_t j = start; j <= hi; j += p)
                if (spf_[j] == 0) spf_[j] = p;
        }
        // untouched entries are primes
        for (uint64_t n = lo; n <= hi; ++n)
            if (spf_[n] == 0) spf_[n] = static_cast<uint32_t>(n);
    }

    for (uint64_t n = 2; n <= limit; ++n)
        if (spf_[n] == n) primes_.push_back(static_cast<uint32_t>(n));
}

uint32_t PrimeTable::spf(uint64_t n) const {
    if (n < 2 || n > limit_) throw range_error("spf: n out of [2, limit]");
    return spf_[n];
}

bool PrimeTable::is_squarefree(uint64_t n) const {
    if (n == 0 || n > limit_) throw range_error("is_squarefree: n out of range");
    while (n > 1) {
        uint32_t p = spf_[n];
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

uint64_t PrimeTable::pi(double z) const {
    if (z < 2) return 0;
    if (z > static_cast<double>(limit_)) throw range_error("pi: z beyond table limit");
    uint32_t zi = static_cast<uint32_t>(z);
    auto it = std::upper_bound(primes_.begin(), primes_.end(), zi);
    return static_cast<uint64_t>(it - primes_.begin());
}

Factorization PrimeTable::factorize(uint64_t n) const {
    if (n == 0 || n > limit_) throw range_error("factorize: n out of [1, limit]");
    Factorization f;
    while (n > 1) {
        uint32_t p = spf_[n];
        uint32_t a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        f.prime_powers.emplace_back(p, a);
    }
    return f;
}

static const char kMagic[8] = {'R', 'M', 'F', 'S', 'P', 'F', '1', '\n'};

void PrimeTable::save_cache(const std::string& path) const {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("save_cache: cannot open " + path);
    std::fwrite(kMagic, 1, 8, fp);
    uint64_t lim = limit_;  // little-endian hosts only, documented in README
    std::fwrite(&lim, 8, 1, fp);
    std::fwrite(spf_.data() + 2, 4, limit_ - 1, fp);
    std::fclose(fp);
}

PrimeTable PrimeTable::load_cache(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw std::runtime_error("load_cache: cannot open " + path);
    char magic[8];
    uint64_t lim = 0;
    if (std::fread(magic, 1, 8, fp) != 8 || std::memcmp(magic, kMagic, 8) != 0) {
        std::fclose(fp);
        throw std::runtime_error("load_cache: bad magic in " + path);
    }
    if (std::fread(&lim, 8, 1, fp) != 1 || lim == 0 || lim > max_limit) {
        std::fclose(fp);
        throw std::runtime_error("load_cache: bad limit in " + path);
    }
    PrimeTable t;
    t.limit_ = lim;
    t.spf_.assign(lim + 1, 0);
    if (std::fread(t.spf_.data() + 2, 4, lim - 1, fp) != lim - 1) {
        std::fclose(fp);
        throw std::runtime_error("load_cache: truncated " + path);
    }
    std::fclose(fp);
    for (uint64_t n = 2; n <= lim; ++n)
        if (t.spf_[n] == n) t.primes_.push_back(static_cast<uint32_t>(n));
    return t;
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        KahanSum k;
        for (double x : v) k.add(x);
        return k.value();
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

double prime_reciprocal_sum(const PrimeTable& table, double lo, double hi, double shift) {
    if (hi > static_cast<double>(table.limit()))
        throw range_error("prime_reciprocal_sum: hi beyond table limit");
    if (1.0 + shift <= 0.0) throw domain_error("prime_reciprocal_sum: need 1 + shift > 0");
    if (!(lo <= hi)) return 0.0;
    const auto& ps = table.primes();
    auto lo_it = std::upper_bound(ps.begin(), ps.end(), lo,
                                  [](double v, uint32_t p) { return v < static_cast<double>(p); });
    KahanSum s;
    double e = 1.0 + shift;
    for (auto it = lo_it; it != ps.end() && static_cast<double>(*it) <= hi; ++it)
        s.add(std::pow(static_cast<double>(*it), -e));
    return s.value();
}

double cosine_prime_sum(const PrimeTable& table, double lo, double hi, double shift, double t) {
    if (hi > static_cast<double>(table.limit()))
        throw range_error("cosine_prime_sum: hi beyond table limit");
    if (1.0 + shift <= 0.0) throw domain_error("cosine_prime_sum: need 1 + shift > 0");
    if (!(lo <= hi)) return 0.0;
    const auto& ps = table.primes();
    auto lo_it = std::upper_bound(ps.begin(), ps.end(), lo,
                                  [](double v, uint32_t p) { return v < static_cast<double>(p); });
    KahanSum s;
    double e = 1.0 + shift;
    for (auto it = lo_it; it != ps.end() && static_cast<double>(*it) <= hi; ++it) {
        double p = static_cast<double>(*it);
        s.add(std::cos(t * std::log(p)) * std::pow(p, -e));
    }
    return s.value();
}

}  // namespace rmf
