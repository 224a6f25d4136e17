#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <vector>

#include "rmf/common.hpp"
#include "rmf/primes.hpp"

namespace rmf::oracle {

using bigint = boost::multiprecision::cpp_int;

struct DivisorSpec {
    uint32_t order = 1;        // k in d_k
    double rough_bound = 1.0;  // prime factors restricted to (rough, smooth]
    double smooth_bound = 0.0;
};

// #{(n_1,...,n_2q), n_i <= x : prod_{i<=q} n_i = prod_{i>q} n_i}, via the
// representation-count identity sum_P r(P)^2. Needs a dense table of size
// x^q, so the budget is x^q <= 2^27 (q = 1 is closed-form floor(x)).
bigint steinhaus_moment_exact(uint64_t x, uint32_t q);

// # of 2q-tuples of squarefree n_i <= x whose product is a perfect square,
// via a DP over prime-parity masks. Budget pi(x) <= 25.
bigint rademacher_moment_exact(const PrimeTable& table, uint64_t x, uint32_t q);

// k-fold divisor function, d_k(p^a) = binom(a+k-1, k-1).
bigint divisor_dk(const PrimeTable& table, uint64_t n, uint32_t k);

// sum over n <= x_cap with all prime factors in (rough, smooth] of
// d_k(n) n^-(1+shift); shift = -1 gives the unweighted sum of d_k(n).
// Budget: at most 1e7 admissible n enumerated.
double smooth_divisor_sum(const PrimeTable& table, const DivisorSpec& spec,
                          double shift, double x_cap);

// ratio of  sum_{u <= d <= v, p|d => y <= p <= z} m^Omega(d)  to
// (v-u) m / log y * prod_{y <= p <= z} (1 - m/p)^-1.
double ntr1_ratio(const PrimeTable& table, uint32_t m, double y, double z,
                  double u, double v, double delta = 0.5);

// (sum |a_n|^2 d_ceil(q)(n))^q for Steinhaus, d_{2 ceil(q) - 1} for Rademacher.
double hypercontractive_rhs(const PrimeTable& table,
                            const std::vector<std::pair<uint64_t, std::complex<double>>>& coeffs,
                            double q, Model model);

// The fully computable Rankin chain: an upper bound B for log || sum f(n) ||_2q,
// i.e. log E|sum_{n<=x} f(n)|^2q <= 2q * B. Every step is a numerically
// evaluated inequality over enumerated primes and smooth numbers.
double rankin_moment_bound(const PrimeTable& table, uint64_t x, double q, Model model);

}  // namespace rmf::oracle
