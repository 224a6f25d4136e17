#include "rmf/euler.hpp"

#include <algorithm>
#include <cmath>

namespace rmf::euler {

void EulerParams::validate() const {
    if (x < 2) throw domain_error("EulerParams: need x >= 2");
    if (k < -1) throw domain_error("EulerParams: need k >= -1");
    if (q < 1.0) throw domain_error("EulerParams: need q >= 1");
    if (!(corr_length() > 0.0) || !std::isfinite(corr_length()))
        throw domain_error("EulerParams: correlation length must be finite positive");
}

void TiltedChainParams::validate() const {
    if (!(q > 1.0 && q < 2.0)) throw domain_error("TiltedChainParams: need 1 < q < 2");
    if (r < 1) throw domain_error("TiltedChainParams: need r >= 1");
}

namespace {

constexpr double kSingularTol = 1e-15;

// log of the product of Euler factors over primes <= cutoff at the point s,
// accumulated in log space. Factors are multiplied in batches of 16 before
// taking a log; each batch stays comfortably inside double range, so this
// is identical to summing per-factor logs up to rounding.
cplx log_factors(const MultiplicativeSample& sample, double cutoff, cplx s) {
    const PrimeTable& t = sample.table();
    bool steinhaus = sample.model() == Model::steinhaus;
    cplx acc(0.0, 0.0);
    cplx batch(1.0, 0.0);
    int in_batch = 0;
    for (uint32_t p : t.primes()) {
        double pd = p;
        if (pd > cutoff) break;
        cplx z = sample.prime_value(p) * std::exp(-s * std::log(pd));
        cplx factor = steinhaus ? (cplx(1.0, 0.0) - z) : (cplx(1.0, 0.0) + z);
        if (steinhaus && std::abs(factor) < kSingularTol)
            throw singularity_error("near-singular Steinhaus Euler factor", p);
        batch *= factor;
        if (++in_batch == 16) {
            acc += std::log(batch);
            batch = cplx(1.0, 0.0);
            in_batch = 0;
        }
    }
    if (in_batch) acc += std::log(batch);
    return steinhaus ? -acc : acc;
}

// |prod of factors|^2 at s = 1/2 + sigma + i*shift over p <= cutoff,
// via 2 Re log.
double abs_sq_factors(const MultiplicativeSample& sample, double cutoff, double sigma,
                      double shift) {
    cplx lg = log_factors(sample, cutoff, cplx(0.5 + sigma, shift));
    return std::exp(2.0 * lg.real());
}

}  // namespace

cplx log_product(const MultiplicativeSample& sample, const EulerParams& params, cplx s) {
    params.validate();
    if (!(s.real() > 0.0)) throw domain_error("log_product: need Re(s) > 0");
    return log_factors(sample, params.smooth_cutoff(), s);
}

cplx evaluate_product(const MultiplicativeSample& sample, const EulerParams& params, cplx s) {
    return std::exp(log_product(sample, params, s));
}

double integral_sq_with_step(const MultiplicativeSample& sample, const EulerParams& params,
                             double step) {
    params.validate();
    if (!(step > 0.0)) throw domain_error("integral_sq: need positive step");
    double y = params.smooth_cutoff();
    if (y < 2.0) return 1.0;  // empty product: |F|^2 = 1 over a unit window

    // even panel count >= 2 covering the unit window at the requested step
    int panels = static_cast<int>(std::ceil(1.0 / step));
    panels += panels & 1;
    if (panels < 2) panels = 2;
    double h = 1.0 / panels;
    double t0 = static_cast<double>(params.window_center) - 0.5;

    auto f = [&](double t) { return abs_sq_factors(sample, y, params.sigma, t); };

    // composite Simpson
    KahanSum s;
    s.add(f(t0));
    s.add(f(t0 + 1.0));
    for (int i = 1; i < panels; ++i) s.add(f(t0 + i * h) * ((i & 1) ? 4.0 : 2.0));
    return s.value() * h / 3.0;
}

double integral_sq(const MultiplicativeSample& sample, const EulerParams& params) {
    return integral_sq_with_step(sample, params, params.step());
}

double discretized_sum(const MultiplicativeSample& sample, const EulerParams& params,
                       double t) {
    params.validate();
    double y = params.smooth_cutoff();
    double X = params.corr_length();
    long long nmax = static_cast<long long>(std::floor(X / 2.0 + 1.0));
    KahanSum s;
    for (long long n = -nmax; n <= nmax; ++n) {
        if (y < 2.0) {
            s.add(1.0);
            continue;
        }
        s.add(abs_sq_factors(sample, y, params.sigma, static_cast<double>(n) / X + t));
    }
    return s.value();
}

SplitProduct split_product(const MultiplicativeSample& sample, const EulerParams& params,
                           uint32_t d, long long m) {
    params.validate();
    if (!(params.q > 1.0 && params.q < 2.0))
        throw domain_error("split_product: need 1 < q < 2 so C is defined");
    if (d < 1) throw domain_error("split_product: need d >= 1");
    double y = params.smooth_cutoff();
    double X = params.corr_length();
    double C = std::exp(1.0 / (params.q - 1.0));
    double small_cutoff = std::exp(X / std::pow(C, static_cast<double>(d)));
    double shift = static_cast<double>(m) / X;

    SplitProduct out;
    double full = (y < 2.0) ? 1.0 : abs_sq_factors(sample, y, params.sigma, shift);
    if (small_cutoff < 2.0) {
        out.G = 1.0;
        out.H = full;
        return out;
    }
    double cut = std::min(small_cutoff, y);
    out.G = abs_sq_factors(sample, cut, params.sigma, shift);
    out.H = full / out.G;
    return out;
}

std::vector<double> tilted_chain(const MultiplicativeSample& sample,
                                 const EulerParams& params, const TiltedChainParams& chain) {
    params.validate();
    chain.validate();
    double X = params.corr_length();
    double y = params.smooth_cutoff();
    double C = chain.C();
    uint32_t D = chain.D();
    double expo = 2.0 * (chain.q - 1.0) / 1.01;
    bool steinhaus = sample.model() == Model::steinhaus;

    std::vector<double> out;
    // d decreasing: cutoffs grow, so the chain is adapted to nested prime sets
    for (uint32_t d = chain.r * D; d > (chain.r - 1) * D; --d) {
        double cutoff = std::min(std::exp(X / std::pow(C, static_cast<double>(d))), y);
        if (cutoff < 2.0) {
            out.push_back(1.0);
            continue;
        }
        KahanSum lg;
        for (uint32_t p : sample.table().primes()) {
            double pd = p;
            if (pd > cutoff) break;
            double r = std::pow(pd, -(0.5 + params.sigma));
            cplx fp = sample.prime_value(p);
            double mod;
            if (steinhaus)
                mod = std::abs(cplx(1.0, 0.0) - fp * r);
            else
                mod = std::fabs(1.0 + fp.real() * r);
            if (mod < kSingularTol)
                throw singularity_error("near-singular factor in tilted chain", p);
            lg.add((steinhaus ? -expo : expo) * std::log(mod));
        }
        out.push_back(std::exp(lg.value()));
    }
    return out;
}

}  // namespace rmf::euler
