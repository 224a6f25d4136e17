#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rmf/primes.hpp"
#include "rmf/sampler.hpp"

using namespace rmf;

TEST_CASE("determinism of prime values") {
    PrimeTable t = build_table(1000);
    MultiplicativeSample a(Model::steinhaus, t, 42, 7);
    MultiplicativeSample b(Model::steinhaus, t, 42, 7);
    for (uint32_t p : t.primes()) CHECK(a.prime_value(p) == b.prime_value(p));
    MultiplicativeSample c(Model::steinhaus, t, 42, 8);
    bool all_equal = true;
    for (uint32_t p : t.primes())
        if (a.prime_value(p) != c.prime_value(p)) all_equal = false;
    CHECK_FALSE(all_equal);
}

TEST_CASE("prime value distribution") {
    PrimeTable t = build_table(10);
    const int R = 10000;

    double rad_mean = 0.0;
    cplx st_mean(0.0, 0.0);
    for (int r = 0; r < R; ++r) {
        rad_mean += MultiplicativeSample(Model::rademacher, t, 1, r).prime_sign(2);
        st_mean += MultiplicativeSample(Model::steinhaus, t, 1, r).prime_value(3);
    }
    rad_mean /= R;
    st_mean /= static_cast<double>(R);
    CHECK(std::fabs(rad_mean) < 0.03);
    CHECK(std::fabs(st_mean.real()) < 0.03);
    CHECK(std::fabs(st_mean.imag()) < 0.03);

    // |f(p)|^2 = 1 for both models (5 SE is moot, the identity is exact)
    for (int r = 0; r < 100; ++r) {
        MultiplicativeSample s(Model::steinhaus, t, 5, r);
        CHECK(std::norm(s.prime_value(7)) == doctest::Approx(1.0).epsilon(1e-12));
        MultiplicativeSample v(Model::rademacher, t, 5, r);
        CHECK(std::fabs(v.prime_sign(7)) == 1.0);
    }
}

TEST_CASE("value_at basics") {
    PrimeTable t = build_table(1000);
    MultiplicativeSample st(Model::steinhaus, t, 9, 0);
    MultiplicativeSample rad(Model::rademacher, t, 9, 0);

    CHECK(st.value_at(1) == cplx(1.0, 0.0));
    CHECK(rad.value_at(4) == cplx(0.0, 0.0));
    CHECK(rad.value_at(12) == cplx(0.0, 0.0));

    // multiplicativity on the coprime split 12 = 4 * 3
    cplx lhs = st.value_at(12);
    cplx rhs = st.value_at(4) * st.value_at(3);
    CHECK(std::abs(lhs - rhs) < 1e-12);

    CHECK_THROWS_AS((void)st.value_at(0), range_error);
    CHECK_THROWS_AS((void)st.value_at(1001), range_error);
}

TEST_CASE("multiplicativity on random coprime pairs") {
    PrimeTable t = build_table(100000);
    MultiplicativeSample st(Model::steinhaus, t, 11, 3);
    MultiplicativeSample rad(Model::rademacher, t, 11, 3);
    uint64_t pairs[][2] = {{4, 9}, {8, 15}, {25, 12}, {49, 100}, {121, 35}, {9, 64}};
    for (auto& pr : pairs) {
        uint64_t m = pr[0], n = pr[1];
        CHECK(std::abs(st.value_at(m * n) - st.value_at(m) * st.value_at(n)) < 1e-12);
        CHECK(std::abs(rad.value_at(m * n) - rad.value_at(m) * rad.value_at(n)) < 1e-12);
    }
}

TEST_CASE("partial_sum basics") {
    PrimeTable t = build_table(1000);
    MultiplicativeSample st(Model::steinhaus, t, 3, 1);
    CHECK(partial_sum(st, 1) == cplx(1.0, 0.0));

    MultiplicativeSample rad(Model::rademacher, t, 3, 1);
    cplx s4 = partial_sum(rad, 4);
    cplx expect = cplx(1.0, 0.0) + rad.prime_value(2) + rad.prime_value(3);  // f(4) = 0
    CHECK(std::abs(s4 - expect) < 1e-12);

    CHECK(std::abs(partial_sum(st, 1000)) <= 1000.0);
}

TEST_CASE("partial_sum agrees with value_at accumulation") {
    PrimeTable t = build_table(2000);
    for (auto model : {Model::steinhaus, Model::rademacher}) {
        MultiplicativeSample s(model, t, 17, 5);
        cplx direct(0.0, 0.0);
        for (uint64_t n = 1; n <= 2000; ++n) direct += s.value_at(n);
        CHECK(std::abs(partial_sum(s, 2000) - direct) < 1e-9);
    }
}

TEST_CASE("partial_sums at cuts match individual sums") {
    PrimeTable t = build_table(500);
    MultiplicativeSample s(Model::steinhaus, t, 23, 2);
    std::vector<uint64_t> cuts = {1, 7, 100, 500};
    auto many = partial_sums(s, cuts);
    REQUIRE(many.size() == cuts.size());
    for (std::size_t i = 0; i < cuts.size(); ++i)
        CHECK(std::abs(many[i] - partial_sum(s, cuts[i])) < 1e-12);
}

TEST_CASE("restricted_sum") {
    PrimeTable t = build_table(2000);
    MultiplicativeSample s(Model::steinhaus, t, 31, 0);

    // smooth bound below 2: only n = 1 survives
    CHECK(restricted_sum(s, 10, 1.5, 1.0) == cplx(1.0, 0.0));

    // 3-smooth n <= 10: {1,2,3,4,6,8,9}
    cplx expect(0.0, 0.0);
    for (uint64_t n : {1, 2, 3, 4, 6, 8, 9}) expect += s.value_at(n);
    CHECK(std::abs(restricted_sum(s, 10, 3.0, 1.0) - expect) < 1e-12);
}

TEST_CASE("largest-prime-factor bands partition the full sum") {
    // sum over bands x^{e^-(k+1)} < P(n) <= x^{e^-k}, k = 0..L, plus the
    // P(n) <= x^{e^-(L+1)} tail equals S(x) exactly.
    PrimeTable t = build_table(2000);
    const uint64_t x = 2000;
    double logx = std::log(static_cast<double>(x));
    int L = 6;
    for (auto model : {Model::steinhaus, Model::rademacher}) {
        MultiplicativeSample s(model, t, 37, 4);
        cplx total(0.0, 0.0);
        auto band_sum = [&](double lo, double hi) {
            cplx acc(0.0, 0.0);
            for (uint64_t n = 1; n <= x; ++n) {
                double P = static_cast<double>(t.factorize(n).largest_prime());
                if (n == 1) P = 1.0;
                if (P > lo && P <= hi) acc += s.value_at(n);
            }
            return acc;
        };
        for (int k = 0; k <= L; ++k)
            total += band_sum(std::exp(logx * std::exp(-(k + 1.0))),
                              std::exp(logx * std::exp(-static_cast<double>(k))));
        total += band_sum(0.0, std::exp(logx * std::exp(-(L + 1.0))));
        CHECK(std::abs(total - partial_sum(s, x)) < 1e-9);
    }
}

namespace {

// two-sample Kolmogorov-Smirnov statistic
double ks_stat(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        double fa = static_cast<double>(i) / a.size();
        double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

}  // namespace

TEST_CASE("rotation invariance surrogate (KS level 0.01)") {
    // |S(x)| has the same law when every f(p) is rotated by p^{-it}.
    PrimeTable t = build_table(1000);
    const int R = 1000;
    const uint64_t x = 1000;
    const double tshift = 0.7;
    std::vector<double> base, rotated;
    for (int r = 0; r < R; ++r) {
        MultiplicativeSample s(Model::steinhaus, t, 101, r);
        base.push_back(std::abs(partial_sum(s, x)));

        // rotated chain built from the same prime values
        std::vector<cplx> v(x + 1);
        v[1] = cplx(1.0, 0.0);
        cplx acc = v[1];
        for (uint64_t n = 2; n <= x; ++n) {
            uint32_t p = t.spf(n);
            double lp = std::log(static_cast<double>(p));
            cplx fp = s.prime_value(p) * std::exp(cplx(0.0, -tshift * lp));
            v[n] = v[n / p] * fp;
            acc += v[n];
        }
        rotated.push_back(std::abs(acc));
    }
    double d = ks_stat(base, rotated);
    double crit = 1.628 * std::sqrt(2.0 / R);  // c(0.01) sqrt((n+m)/nm)
    CHECK(d < crit);
}
