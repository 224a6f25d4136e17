#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmf/common.hpp"
#include "rmf/euler.hpp"
#include "rmf/primes.hpp"
#include "rmf/sampler.hpp"

namespace rmf::moments {

struct MomentEstimate {
    uint64_t replicas = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double median_of_means = 0.0;  // over 32 buckets; NaN when replicas < 32
    double q = 0.0;
    uint64_t seed = 0;
    Model model = Model::steinhaus;
    double skip_rate = 0.0;  // fraction of replicas skipped on singularities
};

struct VerificationReport {
    std::string statement;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack_used = 1.0;  // constant the inequality was checked with
    bool pass = false;
    bool skipped = false;  // hypothesis could not be certified
    std::string note;
};

// mean of |S(x)|^2q over independent replicas (streams seed-derived, merged
// pairwise in index order: identical output for any thread count).
MomentEstimate mc_moment(Model model, const PrimeTable& table, uint64_t x, double q,
                         uint64_t replicas, uint64_t seed);

struct TailEstimate {
    double estimate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 1.0;
    uint64_t hits = 0;
    uint64_t replicas = 0;
};

// P(|S(x)| >= lambda sqrt x) with a Wilson 95% interval.
TailEstimate tail_probability(Model model, const PrimeTable& table, uint64_t x,
                              double lambda, uint64_t replicas, uint64_t seed);

// mean of (int_{N-1/2}^{N+1/2} |F_k|^2 dt)^q. Replicas hitting a Steinhaus
// singularity are skipped and counted; more than 0.1% skipped aborts.
MomentEstimate mc_euler_integral_moment(Model model, const PrimeTable& table,
                                        const euler::EulerParams& params, double q,
                                        uint64_t replicas, uint64_t seed);

using Coeffs = std::vector<std::pair<uint64_t, std::complex<double>>>;

// MC E|sum a_n f(n)|^2q <= (sum |a_n|^2 d_k(n))^q with a 3-SE margin.
VerificationReport check_hypercontractive(Model model, const PrimeTable& table,
                                          const Coeffs& coeffs, double q,
                                          uint64_t replicas, uint64_t seed);

// E|sum a_n eps_n|^2q >= (sum |a_n|^2)^q for independent unit signs/phases.
VerificationReport check_khintchine_lower(Model model, const PrimeTable& table,
                                          const Coeffs& coeffs, double q,
                                          uint64_t replicas, uint64_t seed);

// Doob: E(max_k X_k)^p <= (p/(p-1))^p E X_n^p over replica rows of a
// nonnegative submartingale; optional importance weights (tilted measure).
// A chain whose weighted means decrease beyond 3 SE cannot be certified as a
// submartingale and yields a skipped report.
VerificationReport check_doob(const std::vector<std::vector<double>>& chains, double p,
                              const std::vector<double>* weights = nullptr);

struct TiltedDoobInput {
    std::vector<std::vector<double>> chains;  // X_d = L_d / lambda_d, cutoff-increasing
    std::vector<double> weights;              // w = |F_k(1/2+sigma)|^2 per replica
    std::vector<double> lambda;               // importance-weighted lambda_d estimates
};

// Builds the section-5 tilted chain input: L_d sampled per replica, lambda_d
// estimated under the tilted measure via the weights w.
TiltedDoobInput make_tilted_doob_input(Model model, const PrimeTable& table,
                                       const euler::EulerParams& params,
                                       const euler::TiltedChainParams& chain,
                                       uint64_t replicas, uint64_t seed);

// Both sides of the Parseval identity for a finite Dirichlet polynomial:
// closed-form x-integral vs t-quadrature with an analytic tail correction.
// pass requires relative agreement <= 1e-6 (quadrature non-convergence is a
// diagnostic failure).
VerificationReport check_parseval(const Coeffs& coeffs, double sigma);

enum class Proposition { P1, P2, P3, P4 };

// Numeric two-sided verification of the Euler-product reduction:
//   P1/P2: ||sum f(n)||_2q <= c * sqrt(x/log x) (sum_k ||int|F_k|^2||_q^1/2 + 1)
//   P3/P4: ||sum f(n)||_2q >= c * sqrt(x/log x) ||int_1^{x^1/4}|S(z)|^2/z^2 dz||_q^1/2
// plus, whenever Vq <= log x, the second (Euler-product) form of P3/P4. All
// sides are Monte Carlo estimates; pass allows a 3-SE margin around the
// fitted constant.
VerificationReport verify_proposition(Proposition prop, Model model,
                                      const PrimeTable& table, uint64_t x, double q,
                                      double V, uint64_t replicas, uint64_t seed,
                                      double fitted_constant);

// Derives an independent 64-bit sub-seed for a named quantity.
inline uint64_t sub_seed(uint64_t seed, uint64_t tag) {
    return detail::mix64(seed ^ detail::mix64(tag));
}

}  // namespace rmf::moments
