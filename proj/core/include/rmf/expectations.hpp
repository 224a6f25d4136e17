#pragma once

#include <cstdint>

#include "rmf/band.hpp"
#include "rmf/common.hpp"
#include "rmf/primes.hpp"

namespace rmf::expectations {

// Parameters of the "two point" Euler product expectation
//   E prod_{x_lo < p <= y_hi} |1 -+ f(p)/p^{1/2+sigma(+it)}|^{-+2alpha} ...
// t is the Steinhaus shift; Rademacher carries two shifts t1, t2.
struct TwoPointParams {
    double alpha = 0.0;
    double beta = 0.0;
    double sigma = 0.0;
    double t = 0.0;   // Steinhaus
    double t1 = 0.0;  // Rademacher
    double t2 = 0.0;
    double x_lo = 100.0;
    double y_hi = 100.0;

    void validate() const;              // range precondition of EPR1/EPR2
    void validate_second_form() const;  // additionally sigma <= 1/log y_hi
};

// E over theta of |1 - e^{i theta} p^{-(1/2+sigma)}|^{-2alpha}
//               * |1 - e^{i theta} p^{-(1/2+sigma+it)}|^{-2beta},
// by adaptive trapezoid (spectrally accurate for this periodic integrand)
// at relative tolerance 1e-10. Requires p^{1/2+sigma} > 1.
double steinhaus_prime_expectation(uint64_t p, double sigma, double t,
                                   double alpha, double beta);

// two-point average over f(p) = +-1, closed form.
double rademacher_prime_expectation(uint64_t p, double sigma, double t1, double t2,
                                    double alpha, double beta);

// log of the product of per-prime expectations over x_lo < p <= y_hi.
double exact_range_product(const TwoPointParams& params, Model model,
                           const PrimeTable& table);

// the exponential-sum first form of EPR1/EPR2 (log scale).
double epr_first_form(const TwoPointParams& params, Model model,
                      const PrimeTable& table);

// The asymptotic second form. For Rademacher the paper also gives a pair of
// upper/lower replacements for the error factor; extra_exponent/extra_log
// carry that widening ((|a^2-a|+|b^2-b|+4ab) * log min{log y/log x,
// 1 + (|t1|+|t2|)^{1/100}/log x}), zero in the Steinhaus case.
struct SecondForm {
    PredictionBand band;
    double extra_exponent = 0.0;
    double extra_log = 0.0;  // extra_exponent * log(min-base), >= 0

    double upper(double c) const { return band.upper(c) + extra_log; }
    double lower(double c) const { return band.lower(c) - extra_log; }
};

SecondForm epr_second_form(const TwoPointParams& params, Model model);

// Exact mean of a squared Euler factor at s = 1/2 + sigma (+ any imaginary
// shift; the mean is shift-independent):
//   Steinhaus  E|1 - f(p)p^-s|^-2 = (1 - p^-(1+2sigma))^-1
//   Rademacher E|1 + f(p)p^-s|^2  = 1 + p^-(1+2sigma)
double mean_sq_factor(Model model, double p, double sigma);

// log E|F|^2 for the product over primes p <= y.
double log_mean_sq_product(Model model, const PrimeTable& table, double y, double sigma);

}  // namespace rmf::expectations
