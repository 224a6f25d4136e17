#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rmf/expectations.hpp"
#include "rmf/moments.hpp"
#include "rmf/oracle.hpp"
#include "rmf/primes.hpp"

using namespace rmf;
namespace mo = rmf::moments;

TEST_CASE("mc_moment basics") {
    PrimeTable t = build_table(1000);
    auto e = mo::mc_moment(Model::steinhaus, t, 1, 2.0, 100, 7);
    CHECK(e.mean == 1.0);
    CHECK(e.std_error == 0.0);

    // Steinhaus E|S(x)|^2 = floor(x), exactly unbiased
    auto e2 = mo::mc_moment(Model::steinhaus, t, 100, 1.0, 4000, 11);
    CHECK(std::fabs(e2.mean - 100.0) <= 3.0 * e2.std_error);

    // Rademacher E|S(x)|^2 = squarefree count
    uint64_t sf = 0;
    for (uint64_t n = 1; n <= 100; ++n)
        if (t.is_squarefree(n)) ++sf;
    auto e3 = mo::mc_moment(Model::rademacher, t, 100, 1.0, 4000, 11);
    CHECK(std::fabs(e3.mean - static_cast<double>(sf)) <= 3.0 * e3.std_error);

    CHECK_THROWS_AS((void)mo::mc_moment(Model::steinhaus, t, 10, 1.0, 1, 0), domain_error);
}

TEST_CASE("mc_moment covers the exact fourth moment at x = 4") {
    PrimeTable t = build_table(10);
    auto e = mo::mc_moment(Model::steinhaus, t, 4, 2.0, 10000, 3);
    CHECK(std::fabs(e.mean - 32.0) <= 3.0 * e.std_error);
}

TEST_CASE("reproducibility across thread budgets") {
    PrimeTable t = build_table(500);
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    auto a = mo::mc_moment(Model::steinhaus, t, 500, 1.5, 640, 42);
#ifdef _OPENMP
    omp_set_num_threads(3);
#endif
    auto b = mo::mc_moment(Model::steinhaus, t, 500, 1.5, 640, 42);
    CHECK(a.mean == b.mean);  // bitwise
    CHECK(a.std_error == b.std_error);
    CHECK(a.median_of_means == b.median_of_means);
}

TEST_CASE("power mean nesting is exact per replica batch") {
    PrimeTable t = build_table(300);
    auto lo = mo::mc_moment(Model::steinhaus, t, 300, 1.0, 500, 13);
    auto hi = mo::mc_moment(Model::steinhaus, t, 300, 2.0, 500, 13);  // same streams
    CHECK(std::pow(hi.mean, 1.0 / 2.0) >= std::pow(lo.mean, 1.0) * (1.0 - 1e-12));
    auto mid = mo::mc_moment(Model::steinhaus, t, 300, 1.5, 500, 13);
    CHECK(std::pow(mid.mean, 1.0 / 1.5) >= std::pow(lo.mean, 1.0) * (1.0 - 1e-12));
    CHECK(std::pow(hi.mean, 1.0 / 2.0) >= std::pow(mid.mean, 1.0 / 1.5) * (1.0 - 1e-12));
}

TEST_CASE("tail_probability") {
    PrimeTable t = build_table(1000);
    auto p0 = mo::tail_probability(Model::steinhaus, t, 1000, 0.0, 500, 5);
    CHECK(p0.estimate == 1.0);

    // nested events: monotone in lambda on the same seed set
    auto p2 = mo::tail_probability(Model::steinhaus, t, 1000, 2.0, 2000, 5);
    auto p4 = mo::tail_probability(Model::steinhaus, t, 1000, 4.0, 2000, 5);
    CHECK(p4.estimate <= p2.estimate);
    CHECK(p2.wilson_lo <= p2.estimate);
    CHECK(p2.estimate <= p2.wilson_hi);
}

TEST_CASE("mc_euler_integral_moment") {
    PrimeTable t = build_table(200);

    // empty product: integral is exactly 1, all replicas
    euler::EulerParams empty{16, 2, 0.0, 1.0, 0, 0.0};
    auto e = mo::mc_euler_integral_moment(Model::steinhaus, t, empty, 1.5, 64, 1);
    CHECK(e.mean == 1.0);
    CHECK(e.std_error == 0.0);
    CHECK(e.skip_rate == 0.0);

    // q = 1 Fubini: mean matches the exact E|F|^2 (t-independent) within 5 SE
    euler::EulerParams p{200, -1, 0.1, 1.0, 0, 0.0};
    auto m = mo::mc_euler_integral_moment(Model::steinhaus, t, p, 1.0, 4000, 2);
    double exact = std::exp(
        expectations::log_mean_sq_product(Model::steinhaus, t, p.smooth_cutoff(), 0.1));
    CHECK(std::fabs(m.mean - exact) <= 5.0 * m.std_error);

    auto mr = mo::mc_euler_integral_moment(Model::rademacher, t, p, 1.0, 4000, 2);
    double exact_r = std::exp(
        expectations::log_mean_sq_product(Model::rademacher, t, p.smooth_cutoff(), 0.1));
    CHECK(std::fabs(mr.mean - exact_r) <= 5.0 * mr.std_error);
}

TEST_CASE("check_hypercontractive") {
    PrimeTable t = build_table(200);
    mo::Coeffs single = {{1, cplx(1.0, 0.0)}};
    auto r = mo::check_hypercontractive(Model::steinhaus, t, single, 2.0, 200, 9);
    CHECK(r.pass);
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.rhs == doctest::Approx(1.0));

    // random complex coefficients on n <= 100, q = 1.5, both models
    for (auto model : {Model::steinhaus, Model::rademacher}) {
        mo::Coeffs coeffs;
        for (uint64_t n = 1; n <= 100; ++n) {
            uint64_t w1 = detail::counter_word(1234, 1, n);
            uint64_t w2 = detail::counter_word(1234, 2, n);
            coeffs.emplace_back(n, cplx(static_cast<double>(w1 >> 11) * 0x1.0p-52 - 1.0,
                                        static_cast<double>(w2 >> 11) * 0x1.0p-52 - 1.0));
        }
        auto rep = mo::check_hypercontractive(model, t, coeffs, 1.5, 10000, 77);
        CHECK(rep.pass);
    }

    // Rademacher q = 1 with squarefree support: equality up to MC noise
    mo::Coeffs sf = {{1, cplx(1, 0)}, {2, cplx(0, 1)}, {3, cplx(1, 1)}, {6, cplx(-1, 0)}};
    auto eq = mo::check_hypercontractive(Model::rademacher, t, sf, 1.0, 20000, 5);
    CHECK(eq.pass);
    CHECK(std::fabs(eq.lhs - eq.rhs) <= 3.0 * eq.slack_used);
}

TEST_CASE("check_khintchine_lower") {
    PrimeTable t = build_table(200);
    mo::Coeffs single = {{5, cplx(2.0, 0.0)}};
    auto r = mo::check_khintchine_lower(Model::rademacher, t, single, 2.0, 500, 3);
    CHECK(r.pass);
    CHECK(r.lhs == doctest::Approx(16.0));  // |2 eps|^4 = 16 always
    CHECK(r.rhs == doctest::Approx(16.0));

    for (auto model : {Model::steinhaus, Model::rademacher}) {
        mo::Coeffs coeffs;
        for (uint64_t n = 1; n <= 50; ++n) {
            uint64_t w = detail::counter_word(99, n, 0);
            coeffs.emplace_back(n, cplx(static_cast<double>(w >> 11) * 0x1.0p-52 - 1.0, 0.3));
        }
        auto rep = mo::check_khintchine_lower(model, t, coeffs, 2.5, 8000, 41);
        CHECK(rep.pass);
        // q = 1 orthogonality: equality within noise
        auto rep1 = mo::check_khintchine_lower(model, t, coeffs, 1.0, 8000, 41);
        CHECK(rep1.pass);
        CHECK(std::fabs(rep1.lhs - rep1.rhs) <= 3.0 * rep1.slack_used + 1e-9);
    }
}

TEST_CASE("check_doob") {
    // constant chain
    std::vector<std::vector<double>> constant(100, std::vector<double>{2.5, 2.5, 2.5});
    auto r = mo::check_doob(constant, 2.0);
    CHECK(r.pass);
    CHECK(r.lhs == doctest::Approx(6.25));
    CHECK(r.rhs == doctest::Approx(25.0));

    // two-step chain X0 = 1, X1 in {0, 2} equiprobable, p = 2:
    // E max^2 = 2.5 <= 4 E X1^2 = 8
    std::vector<std::vector<double>> twostep;
    for (int i = 0; i < 500; ++i) twostep.push_back({1.0, i % 2 ? 0.0 : 2.0});
    auto r2 = mo::check_doob(twostep, 2.0);
    CHECK(r2.pass);
    CHECK(r2.lhs == doctest::Approx(2.5));
    CHECK(r2.rhs == doctest::Approx(8.0));

    // decreasing chain: not certifiable as a submartingale -> skipped
    std::vector<std::vector<double>> shrinking(200, std::vector<double>{2.0, 1.0});
    auto r3 = mo::check_doob(shrinking, 2.0);
    CHECK(r3.skipped);

    // synthetic submartingale: squared centered random walk
    std::vector<std::vector<double>> walks;
    for (uint64_t r4 = 0; r4 < 2000; ++r4) {
        double s = 0.0;
        std::vector<double> row;
        for (uint64_t k = 0; k < 6; ++k) {
            s += (detail::counter_word(5150, r4, k) >> 63) ? 1.0 : -1.0;
            row.push_back(s * s);
        }
        walks.push_back(row);
    }
    auto r5 = mo::check_doob(walks, 1.5);
    CHECK(r5.pass);

    CHECK_THROWS_AS((void)mo::check_doob(constant, 1.0), domain_error);
}

TEST_CASE("tilted chain doob input") {
    PrimeTable t = build_table(1000);
    euler::EulerParams p{1000, -1, 0.0, 1.5, 0, 0.0};
    euler::TiltedChainParams chain{1.5, 1};
    auto input = mo::make_tilted_doob_input(Model::steinhaus, t, p, chain, 2000, 8);
    REQUIRE(input.chains.size() == 2000);
    REQUIRE(input.lambda.size() == chain.D());
    // normalized chain: importance-weighted mean of each X_d is 1
    auto rep = mo::check_doob(input.chains, 1.01, &input.weights);
    CHECK_FALSE(rep.skipped);
    CHECK(rep.pass);
}

TEST_CASE("check_parseval") {
    // single coefficient: both sides 1/(2 sigma)
    mo::Coeffs one = {{1, cplx(1.0, 0.0)}};
    for (double sigma : {0.1, 0.5, 2.0}) {
        auto r = mo::check_parseval(one, sigma);
        CHECK(r.pass);
        CHECK(r.lhs == doctest::Approx(1.0 / (2.0 * sigma)).epsilon(1e-12));
        CHECK(std::fabs(r.rhs - r.lhs) <= 1e-6 * r.lhs);
    }

    // a1 = a2 = 1 at sigma = 1/2: closed form LHS = 2.5
    mo::Coeffs two = {{1, cplx(1.0, 0.0)}, {2, cplx(1.0, 0.0)}};
    auto r2 = mo::check_parseval(two, 0.5);
    CHECK(r2.pass);
    CHECK(r2.lhs == doctest::Approx(2.5).epsilon(1e-12));

    // homogeneity: doubling the coefficients quadruples both sides
    mo::Coeffs dbl = {{1, cplx(2.0, 0.0)}, {2, cplx(2.0, 0.0)}};
    auto r3 = mo::check_parseval(dbl, 0.5);
    CHECK(r3.lhs == doctest::Approx(4.0 * r2.lhs).epsilon(1e-12));
    CHECK(r3.rhs == doctest::Approx(4.0 * r2.rhs).epsilon(1e-9));

    // random vector with imaginary parts
    mo::Coeffs rnd;
    for (uint64_t n = 1; n <= 40; ++n) {
        uint64_t w1 = detail::counter_word(31, 1, n);
        uint64_t w2 = detail::counter_word(31, 2, n);
        rnd.emplace_back(n, cplx(static_cast<double>(w1 >> 11) * 0x1.0p-52 - 1.0,
                                 static_cast<double>(w2 >> 11) * 0x1.0p-52 - 1.0));
    }
    for (double sigma : {0.1, 0.5, 2.0}) CHECK(mo::check_parseval(rnd, sigma).pass);
}

TEST_CASE("verify_proposition") {
    PrimeTable t = build_table(10000);

    // P3 first bound at q = 1, Steinhaus, x = 1e4
    auto p3 = mo::verify_proposition(mo::Proposition::P3, Model::steinhaus, t, 10000, 1.0,
                                     4.0, 400, 21, 0.05);
    CHECK(p3.pass);
    CHECK(p3.lhs > 0.0);
    CHECK(p3.rhs > 0.0);

    // degenerate guard: Vq > log x skips the second form with a note
    auto far = mo::verify_proposition(mo::Proposition::P3, Model::steinhaus, t, 10000, 1.5,
                                      8.0, 200, 22, 0.05);
    CHECK(far.note.find("second form skipped") != std::string::npos);

    // P1 at q = 1.5, x = 1e4 (L = 0: single k = 0 term)
    auto p1 = mo::verify_proposition(mo::Proposition::P1, Model::steinhaus, t, 10000, 1.5,
                                     4.0, 400, 23, 4.0);
    CHECK(p1.pass);

    // Rademacher forms
    auto p2 = mo::verify_proposition(mo::Proposition::P2, Model::rademacher, t, 1000, 1.5,
                                     4.0, 200, 24, 4.0);
    CHECK(p2.pass);
    auto p4 = mo::verify_proposition(mo::Proposition::P4, Model::rademacher, t, 1000, 1.2,
                                     4.0, 200, 25, 0.05);
    CHECK(p4.pass);

    CHECK_THROWS_AS((void)mo::verify_proposition(mo::Proposition::P1, Model::rademacher, t,
                                                 1000, 1.5, 4.0, 100, 1, 1.0),
                    domain_error);
}
