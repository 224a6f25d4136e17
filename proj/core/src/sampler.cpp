#include "rmf/sampler.hpp"

#include <cmath>
#include <numbers>

namespace rmf {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Memory guard for the per-sample value array used by the linear-recurrence
// walks below (16 bytes per n). 2^26 caps the allocation at 1 GB.
constexpr uint64_t kWalkLimit = 1ull << 26;

}  // namespace

cplx MultiplicativeSample::prime_value(uint64_t p) const {
    uint64_t w = detail::counter_word(seed_, stream_, p);
    if (model_ == Model::rademacher) return cplx((w >> 63) ? 1.0 : -1.0, 0.0);
    // 53 high bits -> uniform angle in [0, 2pi)
    double u = static_cast<double>(w >> 11) * 0x1.0p-53;
    return cplx(std::cos(two_pi * u), std::sin(two_pi * u));
}

double MultiplicativeSample::prime_sign(uint64_t p) const {
    uint64_t w = detail::counter_word(seed_, stream_, p);
    return (w >> 63) ? 1.0 : -1.0;
}

cplx MultiplicativeSample::value_at(uint64_t n) const {
    if (n == 0 || n > table_->limit()) throw range_error("value_at: n out of range");
    if (n == 1) return cplx(1.0, 0.0);
    Factorization f = table_->factorize(n);
    if (model_ == Model::rademacher) {
        double v = 1.0;
        for (auto [p, a] : f.prime_powers) {
            if (a > 1) return cplx(0.0, 0.0);
            v *= prime_sign(p);
        }
        return cplx(v, 0.0);
    }
    cplx v(1.0, 0.0);
    int muls = 0;
    for (auto [p, a] : f.prime_powers) {
        cplx fp = prime_value(p);
        for (uint32_t i = 0; i < a; ++i) {
            v *= fp;
            // renormalize every 16 multiplications to pin |f(n)| to 1
            if (++muls % 16 == 0) v /= std::abs(v);
        }
    }
    return v;
}

namespace {

void check_walk_range(const MultiplicativeSample& s, uint64_t x) {
    if (x == 0 || x > s.table().limit()) throw range_error("walk_values: x out of range");
    if (x > kWalkLimit)
        throw capacity_error("walk_values: x beyond 2^26 value-array budget");
}

// Shared linear walk: visit(n, f(n)) for n = 1..x in order, with f built
// from f(n/spf(n)) in O(1) amortized per n.
template <class Visit>
void walk_steinhaus(const MultiplicativeSample& s, uint64_t x, Visit&& visit) {
    const PrimeTable& t = s.table();
    std::vector<cplx> v(x + 1, cplx(0.0, 0.0));
    v[1] = cplx(1.0, 0.0);
    visit(1, v[1]);
    for (uint64_t n = 2; n <= x; ++n) {
        uint32_t p = t.spf(n);
        cplx val = v[n / p] * s.prime_value(p);
        v[n] = val;
        visit(n, val);
    }
}

// Rademacher values are -1/0/+1: an int8 array keeps the walk in cache and
// the running sum is exact integer arithmetic.
template <class Visit>
void walk_rademacher(const MultiplicativeSample& s, uint64_t x, Visit&& visit) {
    const PrimeTable& t = s.table();
    std::vector<int8_t> v(x + 1, 0);
    v[1] = 1;
    visit(1, int8_t{1});
    for (uint64_t n = 2; n <= x; ++n) {
        uint32_t p = t.spf(n);
        uint64_t m = n / p;
        int8_t val = (m % p == 0)
                         ? int8_t{0}
                         : static_cast<int8_t>(s.prime_sign(p) > 0 ? v[m] : -v[m]);
        v[n] = val;
        visit(n, val);
    }
}

}  // namespace

cplx partial_sum(const MultiplicativeSample& sample, uint64_t x) {
    check_walk_range(sample, x);
    if (sample.model() == Model::rademacher) {
        int64_t acc = 0;
        walk_rademacher(sample, x, [&](uint64_t, int8_t f) { acc += f; });
        return cplx(static_cast<double>(acc), 0.0);
    }
    KahanSum re, im;
    walk_steinhaus(sample, x, [&](uint64_t, cplx f) {
        re.add(f.real());
        im.add(f.imag());
    });
    return cplx(re.value(), im.value());
}

std::vector<cplx> partial_sums(const MultiplicativeSample& sample,
                               std::span<const uint64_t> cuts) {
    if (cuts.empty()) return {};
    for (std::size_t i = 1; i < cuts.size(); ++i)
        if (cuts[i] < cuts[i - 1]) throw range_error("partial_sums: cuts not ascending");
    std::vector<cplx> out;
    out.reserve(cuts.size());
    std::size_t next = 0;
    while (next < cuts.size() && cuts[next] == 0) {
        out.emplace_back(0.0, 0.0);
        ++next;
    }
    if (next == cuts.size()) return out;
    check_walk_range(sample, cuts.back());
    if (sample.model() == Model::rademacher) {
        int64_t acc = 0;
        walk_rademacher(sample, cuts.back(), [&](uint64_t n, int8_t f) {
            acc += f;
            while (next < cuts.size() && cuts[next] == n) {
                out.emplace_back(static_cast<double>(acc), 0.0);
                ++next;
            }
        });
        return out;
    }
    KahanSum re, im;
    walk_steinhaus(sample, cuts.back(), [&](uint64_t n, cplx f) {
        re.add(f.real());
        im.add(f.imag());
        while (next < cuts.size() && cuts[next] == n) {
            out.emplace_back(re.value(), im.value());
            ++next;
        }
    });
    return out;
}

cplx restricted_sum(const MultiplicativeSample& sample, uint64_t x,
                    double smooth_bound, double rough_bound) {
    const PrimeTable& t = sample.table();
    if (x == 0 || x > t.limit()) throw range_error("restricted_sum: x out of range");
    if (x > kWalkLimit)
        throw capacity_error("restricted_sum: x beyond 2^26 value-array budget");

    // admissible(n) tracks whether every prime factor lies in (rough, smooth]
    std::vector<uint8_t> ok(x + 1, 0);
    ok[1] = 1;
    KahanSum re, im;
    re.add(1.0);

    if (sample.model() == Model::rademacher) {
        std::vector<double> v(x + 1, 0.0);
        v[1] = 1.0;
        for (uint64_t n = 2; n <= x; ++n) {
            uint32_t p = t.spf(n);
            uint64_t m = n / p;
            double pv = static_cast<double>(p);
            ok[n] = ok[m] && pv > rough_bound && pv <= smooth_bound;
            v[n] = (m % p == 0) ? 0.0 : v[m] * sample.prime_sign(p);
            if (ok[n]) re.add(v[n]);
        }
    } else {
        std::vector<cplx> v(x + 1, cplx(0.0, 0.0));
        v[1] = cplx(1.0, 0.0);
        for (uint64_t n = 2; n <= x; ++n) {
            uint32_t p = t.spf(n);
            uint64_t m = n / p;
            double pv = static_cast<double>(p);
            ok[n] = ok[m] && pv > rough_bound && pv <= smooth_bound;
            v[n] = v[m] * sample.prime_value(p);
            if (ok[n]) {
                re.add(v[n].real());
                im.add(v[n].imag());
            }
        }
    }
    return cplx(re.value(), im.value());
}

}  // namespace rmf
