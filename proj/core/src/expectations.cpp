#include "rmf/expectations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rmf::expectations {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// x^-e for the exponents that actually occur on the calibration grids
// (0, 1/2, 1, 2); falls back to pow. The per-theta quadrature below is the
// hot loop of the EPR sweeps.
inline double neg_pow(double x, double e) {
    if (e == 0.0) return 1.0;
    if (e == 1.0) return 1.0 / x;
    if (e == 2.0) return 1.0 / (x * x);
    if (e == 0.5) return 1.0 / std::sqrt(x);
    return std::pow(x, -e);
}

}  // namespace

void TwoPointParams::validate() const {
    double m2 = std::max(alpha * alpha, beta * beta);
    if (alpha < 0.0 || beta < 0.0) throw domain_error("TwoPointParams: need alpha, beta >= 0");
    if (!(100.0 * (1.0 + m2) <= x_lo && x_lo <= y_hi))
        throw domain_error("TwoPointParams: need 100(1+max{a^2,b^2}) <= x_lo <= y_hi");
    if (!(sigma >= -1.0 / std::log(y_hi)))
        throw domain_error("TwoPointParams: need sigma >= -1/log y_hi");
}

void TwoPointParams::validate_second_form() const {
    validate();
    if (!(sigma <= 1.0 / std::log(y_hi)))
        throw domain_error("TwoPointParams: second form needs sigma <= 1/log y_hi");
}

double steinhaus_prime_expectation(uint64_t p, double sigma, double t,
                                   double alpha, double beta) {
    if (alpha < 0.0 || beta < 0.0)
        throw domain_error("steinhaus_prime_expectation: need alpha, beta >= 0");
    double pd = static_cast<double>(p);
    double r = std::pow(pd, -(0.5 + sigma));
    if (!(r < 1.0))
        throw domain_error("steinhaus_prime_expectation: need p^{1/2+sigma} > 1");
    if (alpha == 0.0 && beta == 0.0) return 1.0;

    double phi = t * std::log(pd);
    double r2 = r * r;

    // integrand g(theta) = (1-2r cos th + r^2)^-a (1-2r cos(th-phi)+r^2)^-b
    auto g = [&](double th) {
        double f1 = 1.0 - 2.0 * r * std::cos(th) + r2;
        double f2 = 1.0 - 2.0 * r * std::cos(th - phi) + r2;
        return neg_pow(f1, alpha) * neg_pow(f2, beta);
    };

    // trapezoid on the full period with node doubling; harmonics decay like
    // r^m so convergence is geometric.
    int n = 16;
    double h = two_pi / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += g(i * h);
    double prev = acc / n;
    for (int round = 0; round < 16; ++round) {
        double mid = 0.0;
        for (int i = 0; i < n; ++i) mid += g((i + 0.5) * h);
        n *= 2;
        h *= 0.5;
        acc += mid;
        double cur = acc / n;
        if (std::fabs(cur - prev) <= 1e-10 * std::fabs(cur)) return cur;
        prev = cur;
    }
    return prev;  // ~1e6 nodes reached; integrand is smooth so this is moot
}

double rademacher_prime_expectation(uint64_t p, double sigma, double t1, double t2,
                                    double alpha, double beta) {
    if (alpha < 0.0 || beta < 0.0)
        throw domain_error("rademacher_prime_expectation: need alpha, beta >= 0");
    double pd = static_cast<double>(p);
    double r = std::pow(pd, -(0.5 + sigma));
    if (!(p >= 3 || r < 1.0))
        throw domain_error("rademacher_prime_expectation: need p >= 3 or p^{1/2+sigma} > 1");
    double lp = std::log(pd);
    double c1 = std::cos(t1 * lp), c2 = std::cos(t2 * lp);
    double r2 = r * r;
    auto term = [&](double f) {
        double m1 = 1.0 + 2.0 * f * r * c1 + r2;
        double m2 = 1.0 + 2.0 * f * r * c2 + r2;
        return std::pow(m1, alpha) * std::pow(m2, beta);
    };
    return 0.5 * (term(1.0) + term(-1.0));
}

double exact_range_product(const TwoPointParams& params, Model model,
                           const PrimeTable& table) {
    params.validate();
    if (params.y_hi > static_cast<double>(table.limit()))
        throw range_error("exact_range_product: y_hi beyond table limit");
    const auto& ps = table.primes();
    auto it = std::upper_bound(ps.begin(), ps.end(), params.x_lo,
                               [](double v, uint32_t p) { return v < static_cast<double>(p); });
    std::vector<uint32_t> range(it, std::upper_bound(it, ps.end(), params.y_hi,
                                                     [](double v, uint32_t p) {
                                                         return v < static_cast<double>(p);
                                                     }));
    std::vector<double> logs = deterministic_map(range.size(), [&](std::size_t i) {
        uint64_t p = range[i];
        double e = (model == Model::steinhaus)
                       ? steinhaus_prime_expectation(p, params.sigma, params.t,
                                                     params.alpha, params.beta)
                       : rademacher_prime_expectation(p, params.sigma, params.t1,
                                                      params.t2, params.alpha, params.beta);
        return std::log(e);
    });
    return pairwise_sum(logs);
}

double epr_first_form(const TwoPointParams& params, Model model,
                      const PrimeTable& table) {
    params.validate();
    if (params.y_hi > static_cast<double>(table.limit()))
        throw range_error("epr_first_form: y_hi beyond table limit");
    double a = params.alpha, b = params.beta;
    KahanSum s;
    double expo = 1.0 + 2.0 * params.sigma;
    for (uint32_t p : table.primes()) {
        double pd = p;
        if (pd <= params.x_lo) continue;
        if (pd > params.y_hi) break;
        double lp = std::log(pd);
        double w;
        if (model == Model::steinhaus) {
            w = a * a + b * b + 2.0 * a * b * std::cos(params.t * lp);
        } else {
            w = a * a + b * b + (a * a - a) * std::cos(2.0 * params.t1 * lp) +
                (b * b - b) * std::cos(2.0 * params.t2 * lp) +
                2.0 * a * b * (std::cos((params.t1 + params.t2) * lp) +
                               std::cos((params.t1 - params.t2) * lp));
        }
        s.add(w * std::pow(pd, -expo));
    }
    return s.value();
}

namespace {

// log(1 + min{log y/log x, |t|^-1/log x}); the t = 0 branch is the ratio one
double log1p_min_branch(double ratio, double t, double logx) {
    double m = ratio;
    if (t != 0.0) m = std::min(m, 1.0 / (std::fabs(t) * logx));
    return std::log1p(m);
}

}  // namespace

SecondForm epr_second_form(const TwoPointParams& params, Model model) {
    params.validate_second_form();
    double a = params.alpha, b = params.beta;
    double logx = std::log(params.x_lo), logy = std::log(params.y_hi);
    double ratio = logy / logx;
    double maxab = std::max(std::max(a, b), std::max(a * a, b * b));

    SecondForm out;
    if (model == Model::steinhaus) {
        out.band.center = (a * a + b * b) * std::log(ratio) +
                          2.0 * a * b * log1p_min_branch(ratio, params.t, logx);
        out.band.slack_exponent =
            maxab * (1.0 + std::fabs(params.t) / std::pow(logx, 100.0));
        return out;
    }
    double t1 = params.t1, t2 = params.t2;
    out.band.center = (a * a - a) * log1p_min_branch(ratio, t1, logx) +
                      (b * b - b) * log1p_min_branch(ratio, t2, logx) +
                      (a * a + b * b) * std::log(ratio) +
                      2.0 * a * b * (log1p_min_branch(ratio, t1 + t2, logx) +
                                     log1p_min_branch(ratio, t1 - t2, logx));
    out.band.slack_exponent =
        maxab * (1.0 + (std::fabs(t1) + std::fabs(t2)) / std::pow(logx, 100.0));
    out.extra_exponent = std::fabs(a * a - a) + std::fabs(b * b - b) + 4.0 * a * b;
    double base = std::min(ratio, 1.0 + std::pow(std::fabs(t1) + std::fabs(t2), 0.01) / logx);
    out.extra_log = out.extra_exponent * std::log(base);
    return out;
}

double mean_sq_factor(Model model, double p, double sigma) {
    double r2 = std::pow(p, -(1.0 + 2.0 * sigma));
    if (model == Model::steinhaus) {
        if (r2 >= 1.0) throw domain_error("mean_sq_factor: divergent Steinhaus factor");
        return 1.0 / (1.0 - r2);
    }
    return 1.0 + r2;
}

double log_mean_sq_product(Model model, const PrimeTable& table, double y, double sigma) {
    if (y > static_cast<double>(table.limit()))
        throw range_error("log_mean_sq_product: y beyond table limit");
    KahanSum s;
    for (uint32_t p : table.primes()) {
        if (static_cast<double>(p) > y) break;
        s.add(std::log(mean_sq_factor(model, static_cast<double>(p), sigma)));
    }
    return s.value();
}

}  // namespace rmf::expectations
