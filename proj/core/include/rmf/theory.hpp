#pragma once

#include <cstdint>

#include "rmf/band.hpp"
#include "rmf/common.hpp"
#include "rmf/primes.hpp"

namespace rmf::theory {

inline constexpr double golden_q0 = 1.6180339887498948482;  // (1+sqrt 5)/2

// x is real throughout: the shapes are closed-form and the paper's ranges
// (x = e^{e^4} and the like) overflow integer types. Requires loglog x >= 1,
// i.e. x >= e^e (~15.2).

// log E|sum_{n<=x} f(n)|^2q for Steinhaus f:
// center = q log x + (q-1)^2 loglog x - q^2 log q - q^2 loglog(2q), slack q^2.
// The loglog(2q) term is kept verbatim at q = 1 (where it is negative);
// the q^2 slack absorbs it.
PredictionBand theorem1_prediction(double x, double q);

// Rademacher analogue with the exponent max{(q-1)^2, q(2q-3)} and the
// (1 + min{loglog x, 1/|q-q0|}) factor near the golden ratio.
PredictionBand theorem2_prediction(double x, double q);

// the factor log(1 + min{loglog x, 1/|q-q0|}) alone (exposed separately so a
// fit may treat its constant independently of the main slack).
double theorem2_min_factor(double x, double q);

// Corollary 1: bound for P(|sum f(n)| >= lambda sqrt x) up to a constant,
// plus the optimizing moment exponent q - 1 = log lambda / loglog x. strict
// enforces the stated range 2 <= lambda <= sqrt(log x); desk-scale sweeps
// evaluate the same shape outside it.
struct TailBound {
    double bound;        // lambda^-2 e^{-(log^2 lambda)/loglog x}
    double optimizer_q;  // 1 + log lambda / loglog x
};
TailBound corollary1_bound(double x, double lambda, bool strict = true);

// Key Proposition 1 band for log E(int |F_k|^2 dt)^q. strict enforces the
// stated parameter range -e^k/log x <= sigma <= 1/(100 log 2q).
PredictionBand key_prop1_bound(double x, double q, int k, double sigma,
                               bool strict = true);

// Key Proposition 2 band; N = 0 uses the Theorem-2-shaped exponents, |N| >= 1
// multiplies the KP1 shape by min{|N|^{1/100}, ...}^{q(q+1)}.
PredictionBand key_prop2_bound(double x, double q, int k, double sigma, int N,
                               bool strict = true);

// Fixed integer-q asymptotic shape (constants valid for q >= 2; Steinhaus
// q = 1 is the exact second moment, Rademacher q = 1 is routed to the exact
// squarefree-count identity and rejected here).
PredictionBand fixed_q_asymptotics(Model model, uint32_t q, double x);

// The per-prime Jensen lower-bound product (log scale), evaluated exactly
// over enumerated primes 100q^2 <= p <= x:
//   Steinhaus:  sum_p q^2 p^-(1+8Vq/log x)
//   Rademacher: log sum_{|k| <= (log x - 1)/2} exp{sum_p (q^2 + (q^2-q)
//               cos(2k log p/log x)) p^-(1+8Vq/log x)}
double lower_bound_product(Model model, const PrimeTable& table, uint64_t x,
                           double q, double V);

}  // namespace rmf::theory
