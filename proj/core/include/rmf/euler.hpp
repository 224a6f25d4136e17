#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "rmf/common.hpp"
#include "rmf/sampler.hpp"

namespace rmf::euler {

// Parameters of the partial Euler products F_k(s): the product runs over
// primes p <= y with y = x^{e^{-(k+1)}}; k = -1 gives the product over all
// p <= x. window_center shifts the unit-length t-integration window.
struct EulerParams {
    uint64_t x = 0;
    int k = -1;
    double sigma = 0.0;
    double q = 1.0;
    int window_center = 0;   // N
    double quad_step = 0.0;  // 0 -> default 1/(8 log x)

    double log_x() const { return std::log(static_cast<double>(x)); }
    double smooth_cutoff() const {  // y
        return std::pow(static_cast<double>(x), std::exp(-static_cast<double>(k + 1)));
    }
    // correlation length X = min{log x / e^{k+1}, 1/|sigma|}; sigma = 0 maps
    // to the first branch.
    double corr_length() const {
        double first = log_x() * std::exp(-static_cast<double>(k + 1));
        if (sigma == 0.0) return first;
        return std::min(first, 1.0 / std::fabs(sigma));
    }
    double step() const { return quad_step > 0.0 ? quad_step : 1.0 / (8.0 * log_x()); }
    void validate() const;
};

// Parameters of the tilted submartingale chain: C = e^{1/(q-1)},
// D = floor(1/(q-1)), d ranges over ((r-1)D, rD].
struct TiltedChainParams {
    double q = 1.5;  // must lie in (1, 2)
    uint32_t r = 1;

    double C() const { return std::exp(1.0 / (q - 1.0)); }
    uint32_t D() const { return static_cast<uint32_t>(std::floor(1.0 / (q - 1.0))); }
    void validate() const;
};

// log F_k(s): sum over p <= y of -log(1 - f(p)p^-s) (Steinhaus) or
// +log(1 + f(p)p^-s) (Rademacher). Throws singularity_error when a
// Steinhaus factor is within 1e-15 of zero.
cplx log_product(const MultiplicativeSample& sample, const EulerParams& params, cplx s);

// F_k(s) itself (exp of the log-space sum).
cplx evaluate_product(const MultiplicativeSample& sample, const EulerParams& params, cplx s);

// int_{N-1/2}^{N+1/2} |F_k(1/2 + sigma + it)|^2 dt by composite Simpson with
// the given step (halved internally to the nearest even panel count).
double integral_sq(const MultiplicativeSample& sample, const EulerParams& params);
double integral_sq_with_step(const MultiplicativeSample& sample, const EulerParams& params,
                             double step);

// sum over |n| <= X/2 + 1 of |F_k(1/2 + sigma + i(n/X + t))|^2, default t = 0.
double discretized_sum(const MultiplicativeSample& sample, const EulerParams& params,
                       double t = 0.0);

// G_d(m) = |prod over p <= e^{X/C^d} at shift im/X|^2 and H_d(m) = |F_k|^2/G.
struct SplitProduct {
    double G = 1.0;
    double H = 1.0;
};
SplitProduct split_product(const MultiplicativeSample& sample, const EulerParams& params,
                           uint32_t d, long long m);

// L_d = prod_{p <= e^{X/C^d}} |1 -+ f(p) p^{-(1/2+sigma)}|^{-+2(q-1)/1.01}
// for d in ((r-1)D, rD], listed with d DECREASING (cutoffs increasing), the
// order in which the chain is adapted to nested prime sets.
std::vector<double> tilted_chain(const MultiplicativeSample& sample,
                                 const EulerParams& params, const TiltedChainParams& chain);

}  // namespace rmf::euler
