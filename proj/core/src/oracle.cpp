#include "rmf/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_map>

namespace rmf::oracle {

bigint steinhaus_moment_exact(uint64_t x, uint32_t q) {
    if (x == 0 || q == 0) throw domain_error("steinhaus_moment_exact: need x, q >= 1");
    if (q == 1) return bigint(x);

    // dense product budget: x^q entries of 8 bytes
    long double size = std::pow(static_cast<long double>(x), static_cast<long double>(q));
    if (size > static_cast<long double>(1ull << 27))
        throw capacity_error("steinhaus_moment_exact: x^q beyond 2^27 dense-table budget");
    uint64_t cap = 1;
    for (uint32_t i = 0; i < q; ++i) cap *= x;

    // r[P] = # of q-tuples with product P
    std::vector<uint64_t> r(cap + 1, 0), next;
    r[1] = 1;
    for (uint32_t step = 0; step < q; ++step) {
        next.assign(cap + 1, 0);
        for (uint64_t P = 1; P <= cap; ++P) {
            if (!r[P]) continue;
            for (uint64_t n = 1; n <= x && P * n <= cap; ++n) next[P * n] += r[P];
        }
        r.swap(next);
    }
    bigint total = 0;
    for (uint64_t P = 1; P <= cap; ++P)
        if (r[P]) total += bigint(r[P]) * r[P];
    return total;
}

bigint rademacher_moment_exact(const PrimeTable& table, uint64_t x, uint32_t q) {
    if (x == 0 || q == 0) throw domain_error("rademacher_moment_exact: need x, q >= 1");
    if (x > table.limit()) throw range_error("rademacher_moment_exact: x beyond table");
    if (q == 1) {
        // squarefree n_1 n_2 = square forces n_1 = n_2, so the count is the
        // squarefree count below x.
        bigint c = 0;
        for (uint64_t n = 1; n <= x; ++n)
            if (table.is_squarefree(n)) ++c;
        return c;
    }

    uint64_t np = table.pi(static_cast<double>(x));
    if (np > 25) throw capacity_error("rademacher_moment_exact: pi(x) > 25 DP budget");

    // parity mask over the primes <= x, one bit per prime
    std::vector<uint32_t> masks;
    for (uint64_t n = 1; n <= x; ++n) {
        Factorization f = table.factorize(n);
        if (!f.squarefree()) continue;
        uint32_t m = 0;
        for (auto [p, a] : f.prime_powers) {
            uint64_t idx = table.pi(static_cast<double>(p)) - 1;
            m |= (1u << idx);
        }
        masks.push_back(m);
    }

    std::unordered_map<uint32_t, bigint> dp;
    dp[0] = 1;
    for (uint32_t step = 0; step < 2 * q; ++step) {
        std::unordered_map<uint32_t, bigint> next;
        next.reserve(dp.size() * 2);
        for (const auto& [mask, cnt] : dp)
            for (uint32_t m : masks) next[mask ^ m] += cnt;
        dp.swap(next);
    }
    auto it = dp.find(0);
    return it == dp.end() ? bigint(0) : it->second;
}

static bigint binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    bigint r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

bigint divisor_dk(const PrimeTable& table, uint64_t n, uint32_t k) {
    if (k == 0) throw domain_error("divisor_dk: need k >= 1");
    if (n == 0 || n > table.limit()) throw range_error("divisor_dk: n out of range");
    bigint d = 1;
    for (auto [p, a] : table.factorize(n).prime_powers) d *= binomial(a + k - 1, k - 1);
    return d;
}

namespace {

// enumerate n = (partial products over primes in range) <= cap, depth-first
void enumerate_restricted(const std::vector<uint32_t>& primes, std::size_t idx,
                          double cap, double value, uint64_t& budget,
                          const std::function<void(double)>& emit) {
    emit(value);
    for (std::size_t i = idx; i < primes.size(); ++i) {
        double p = primes[i];
        if (value * p > cap) break;
        double v = value;
        while (v * p <= cap) {
            v *= p;
            if (--budget == 0)
                throw capacity_error("enumeration budget (1e7 values) exceeded");
            enumerate_restricted(primes, i + 1, cap, v, budget, emit);
        }
    }
}

std::vector<uint32_t> primes_in(const PrimeTable& t, double lo_excl, double hi_incl) {
    std::vector<uint32_t> out;
    for (uint32_t p : t.primes()) {
        double pv = p;
        if (pv <= lo_excl) continue;
        if (pv > hi_incl) break;
        out.push_back(p);
    }
    return out;
}

}  // namespace

double smooth_divisor_sum(const PrimeTable& table, const DivisorSpec& spec,
                          double shift, double x_cap) {
    if (spec.order == 0) throw domain_error("smooth_divisor_sum: need k >= 1");
    if (x_cap < 1.0) return 0.0;
    std::vector<uint32_t> ps = primes_in(table, spec.rough_bound, spec.smooth_bound);

    // d_k over the enumerated factorization: track it alongside the product
    KahanSum s;
    uint64_t budget = 10'000'000;
    uint32_t k = spec.order;

    // depth-first with explicit d_k bookkeeping
    std::function<void(std::size_t, double, double)> rec = [&](std::size_t idx, double value,
                                                               double dk) {
        s.add(dk * std::pow(value, -(1.0 + shift)));
        for (std::size_t i = idx; i < ps.size(); ++i) {
            double p = ps[i];
            if (value * p > x_cap) break;
            double v = value;
            uint32_t a = 0;
            while (v * p <= x_cap) {
                v *= p;
                ++a;
                if (--budget == 0)
                    throw capacity_error("smooth_divisor_sum: enumeration budget exceeded");
                double dfac = static_cast<double>(binomial(a + k - 1, k - 1));
                rec(i + 1, v, dk * dfac);
            }
        }
    };
    rec(0, 1.0, 1.0);
    return s.value();
}

double ntr1_ratio(const PrimeTable& table, uint32_t m, double y, double z,
                  double u, double v, double delta) {
    if (m < 1) throw domain_error("ntr1_ratio: need m >= 1");
    double ylo = std::max(3.0, 2.0 * static_cast<double>(m));
    if (!(ylo <= y && y <= z && z <= std::pow(y, 10.0)))
        throw domain_error("ntr1_ratio: need max{3,2m} <= y <= z <= y^10");
    if (!(u > 1.0 && u <= v * (1.0 - std::pow(y, -delta))))
        throw domain_error("ntr1_ratio: need 1 < u <= v(1 - y^-delta)");
    if (z > static_cast<double>(table.limit())) throw range_error("ntr1_ratio: z beyond table");

    // numerator: closed range y <= p <= z here
    std::vector<uint32_t> ps = primes_in(table, std::nextafter(y, 0.0), z);
    KahanSum num;
    uint64_t budget = 10'000'000;
    enumerate_restricted(ps, 0, v, 1.0, budget, [&](double d) {
        if (d < u || d > v) return;
        // m^Omega(d): recover Omega from the factorization walk is overkill;
        // recompute from the table (d <= v <= table limit by construction).
        uint64_t di = static_cast<uint64_t>(std::llround(d));
        num.add(std::pow(static_cast<double>(m), table.factorize(di).omega_total()));
    });

    double denom = (v - u) * static_cast<double>(m) / std::log(y);
    for (uint32_t p : ps) denom /= (1.0 - static_cast<double>(m) / static_cast<double>(p));
    if (denom <= 0.0) throw domain_error("ntr1_ratio: nonpositive denominator");
    return num.value() / denom;
}

double hypercontractive_rhs(const PrimeTable& table,
                            const std::vector<std::pair<uint64_t, std::complex<double>>>& coeffs,
                            double q, Model model) {
    if (q < 1.0) throw domain_error("hypercontractive_rhs: need q >= 1");
    uint32_t order = static_cast<uint32_t>(std::ceil(q));
    if (model == Model::rademacher) order = 2 * order - 1;
    KahanSum s;
    for (const auto& [n, a] : coeffs) {
        if (n == 0 || n > table.limit()) throw range_error("hypercontractive_rhs: n out of range");
        s.add(std::norm(a) * static_cast<double>(divisor_dk(table, n, order)));
    }
    return std::pow(s.value(), q);
}

double rankin_moment_bound(const PrimeTable& table, uint64_t x, double q, Model model) {
    if (q < 1.0) throw domain_error("rankin_moment_bound: need q >= 1");
    if (x < 2 || x > table.limit()) throw range_error("rankin_moment_bound: x out of range");

    double logx = std::log(static_cast<double>(x));
    double q2 = q * q;
    double shift = 1.0 + q / logx;

    // sum over q^2-smooth m <= x of m^-1/2 (all m <= x when q^2 >= x)
    std::vector<uint32_t> small = primes_in(table, 1.0, std::min(q2, static_cast<double>(x)));
    KahanSum smooth_sum;
    uint64_t budget = 10'000'000;
    enumerate_restricted(small, 0, static_cast<double>(x), 1.0, budget,
                         [&](double mval) { smooth_sum.add(1.0 / std::sqrt(mval)); });

    // prod over q^2 < p <= x of (1 - p^-shift)^-e, e = ceil(q)/2 or (2ceil(q)-1)/2
    double e = (model == Model::steinhaus) ? std::ceil(q) / 2.0
                                           : (2.0 * std::ceil(q) - 1.0) / 2.0;
    KahanSum logprod;
    for (uint32_t p : table.primes()) {
        double pv = p;
        if (pv <= q2) continue;
        if (pv > static_cast<double>(x)) break;
        logprod.add(-std::log1p(-std::pow(pv, -shift)));
    }

    return std::log(smooth_sum.value()) + 0.5 * shift * logx + e * logprod.value();
}

}  // namespace rmf::oracle
