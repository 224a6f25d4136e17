#include "rmf/theory.hpp"

#include <algorithm>
#include <cmath>

namespace rmf::theory {

namespace {

double loglog(double x) { return std::log(std::log(x)); }

void check_x(double x) {
    if (!(x > 0.0) || !(loglog(x) >= 1.0 - 1e-12))
        throw domain_error("prediction: need x >= e^e (~15.2)");
}

void check_q_range(double x, double q) {
    check_x(x);
    if (!(q >= 1.0)) throw domain_error("prediction: need q >= 1");
    double logx = std::log(x);
    // fitted range constant c = 1 in q <= c log x / loglog x; at desk scale
    // this only excludes blatantly degenerate q.
    if (q > logx / std::log(logx))
        throw domain_error("prediction: q beyond log x / loglog x range");
}

}  // namespace

PredictionBand theorem1_prediction(double x, double q) {
    check_q_range(x, q);
    double center = q * std::log(x) + (q - 1.0) * (q - 1.0) * loglog(x) -
                    q * q * std::log(q) - q * q * std::log(std::log(2.0 * q));
    return PredictionBand{center, q * q};
}

double theorem2_min_factor(double x, double q) {
    double m = std::min(loglog(x), 1.0 / std::max(std::fabs(q - golden_q0), 1e-300));
    return std::log1p(m);
}

PredictionBand theorem2_prediction(double x, double q) {
    check_q_range(x, q);
    double expo = std::max((q - 1.0) * (q - 1.0), q * (2.0 * q - 3.0));
    double center = -2.0 * q * q * std::log(q) - 2.0 * q * q * std::log(std::log(2.0 * q)) +
                    theorem2_min_factor(x, q) + q * std::log(x) + expo * loglog(x);
    return PredictionBand{center, q * q};
}

TailBound corollary1_bound(double x, double lambda, bool strict) {
    check_x(x);
    if (strict && !(lambda >= 2.0 && lambda <= std::sqrt(std::log(x))))
        throw domain_error("corollary1_bound: need 2 <= lambda <= sqrt(log x)");
    if (!(lambda > 1.0)) throw domain_error("corollary1_bound: need lambda > 1");
    double ll = loglog(x);
    double lg = std::log(lambda);
    return TailBound{std::exp(-lg * lg / ll) / (lambda * lambda), 1.0 + lg / ll};
}

namespace {

void check_keyprop_range(double x, double q, int k, double sigma, bool strict) {
    check_x(x);
    double logx = std::log(x);
    if (!(q >= 1.0 && q <= std::pow(logx, 100.0)))
        throw domain_error("key_prop: need 1 <= q <= log^100 x");
    int L = static_cast<int>(std::floor(loglog(x) / 10.0));
    if (k < -1 || k > L) throw domain_error("key_prop: need -1 <= k <= floor(loglog x/10)");
    if (strict) {
        double lo = -std::exp(static_cast<double>(k)) / logx;
        double hi = 1.0 / (100.0 * std::log(2.0 * q));
        if (!(sigma >= lo && sigma <= hi))
            throw domain_error("key_prop: sigma outside [-e^k/log x, 1/(100 log 2q)]");
    }
}

// log min{e^-(k+1), 1/(|sigma| log x)}
double log_min_scale(double x, int k, double sigma) {
    double first = -static_cast<double>(k + 1);
    if (sigma == 0.0) return first;
    double second = -std::log(std::fabs(sigma) * std::log(x));
    return std::min(first, second);
}

}  // namespace

PredictionBand key_prop1_bound(double x, double q, int k, double sigma, bool strict) {
    check_keyprop_range(x, q, k, sigma, strict);
    double logx = std::log(x);
    double center = -(q - 1.0) * std::log(logx) +
                    q * q * std::log(logx / std::log(2.0 * q)) +
                    (q * q - q + 1.0) * log_min_scale(x, k, sigma);
    return PredictionBand{center, q * q};
}

PredictionBand key_prop2_bound(double x, double q, int k, double sigma, int N,
                               bool strict) {
    check_keyprop_range(x, q, k, sigma, strict);
    double logx = std::log(x);
    if (N == 0) {
        double e1 = std::max(2.0 * q * q - q, q * q + 1.0);
        double e2 = std::max(2.0 * q * q - 2.0 * q, q * q - q + 1.0);
        double center = -q * std::log(logx) + theorem2_min_factor(x, q) +
                        e1 * std::log(logx / std::log(2.0 * q)) +
                        e2 * log_min_scale(x, k, sigma);
        return PredictionBand{center, q * q};
    }
    PredictionBand kp1 = key_prop1_bound(x, q, k, sigma, strict);
    double l2q = std::log(2.0 * q);
    double m = std::pow(std::fabs(static_cast<double>(N)), 0.01);
    m = std::min(m, logx / (std::exp(static_cast<double>(k + 1)) * l2q));
    if (sigma != 0.0) m = std::min(m, 1.0 / (std::fabs(sigma) * l2q));
    kp1.center += q * (q + 1.0) * std::log(m);
    return kp1;
}

PredictionBand fixed_q_asymptotics(Model model, uint32_t q, double x) {
    if (q < 1) throw domain_error("fixed_q_asymptotics: need integer q >= 1");
    check_x(x);
    double qd = q;
    if (model == Model::steinhaus) {
        if (q == 1) return PredictionBand{std::log(x), 1.0};  // exact E|S|^2 = floor(x)
        double center = qd * std::log(x) + (qd - 1.0) * (qd - 1.0) * loglog(x) -
                        qd * qd * std::log(qd) - qd * qd * std::log(std::log(qd));
        return PredictionBand{center, qd * qd};
    }
    if (q < 2)
        throw domain_error(
            "fixed_q_asymptotics: Rademacher q = 1 is the exact (6/pi^2)x identity, "
            "use the oracle");
    double center = qd * std::log(x) + qd * (2.0 * qd - 3.0) * loglog(x) -
                    2.0 * qd * qd * std::log(qd) - 2.0 * qd * qd * std::log(std::log(qd));
    return PredictionBand{center, qd * qd};
}

double lower_bound_product(Model model, const PrimeTable& table, uint64_t x,
                           double q, double V) {
    if (V < 1.0) throw domain_error("lower_bound_product: need V >= 1");
    if (x > table.limit()) throw range_error("lower_bound_product: x beyond table");
    double xd = static_cast<double>(x);
    double lo = 100.0 * q * q;
    if (lo >= xd) return 0.0;  // empty product
    double logx = std::log(xd);
    double expo = 1.0 + 8.0 * V * q / logx;

    if (model == Model::steinhaus) {
        KahanSum s;
        for (uint32_t p : table.primes()) {
            double pd = p;
            if (pd < lo) continue;
            if (pd > xd) break;
            s.add(q * q * std::pow(pd, -expo));
        }
        return s.value();
    }

    // Rademacher: log sum over |k| <= (log x - 1)/2 of exp of the cosine sum.
    long long kmax = static_cast<long long>(std::floor((logx - 1.0) / 2.0));
    std::vector<double> exponents;
    for (long long kk = -kmax; kk <= kmax; ++kk) {
        KahanSum s;
        for (uint32_t p : table.primes()) {
            double pd = p;
            if (pd < lo) continue;
            if (pd > xd) break;
            double lp = std::log(pd);
            s.add((q * q + (q * q - q) * std::cos(2.0 * kk * lp / logx)) *
                  std::pow(pd, -expo));
        }
        exponents.push_back(s.value());
    }
    // log-sum-exp
    double m = *std::max_element(exponents.begin(), exponents.end());
    KahanSum acc;
    for (double e : exponents) acc.add(std::exp(e - m));
    return m + std::log(acc.value());
}

}  // namespace rmf::theory
