#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmf {

// Error taxonomy shared across the library. All are recoverable conditions
// signalled to the caller, not assertion failures.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct range_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};
// A Steinhaus Euler factor landed within rounding noise of zero.
struct singularity_error : std::runtime_error {
    singularity_error(const std::string& what, uint64_t prime)
        : std::runtime_error(what), p(prime) {}
    uint64_t p;
};

enum class Model { steinhaus, rademacher };

inline const char* model_name(Model m) {
    return m == Model::steinhaus ? "steinhaus" : "rademacher";
}

// Compensated (Kahan) accumulator. Long prime sums must not lose the
// tolerances the comparisons run at.
class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// Pairwise (tree) sum in a fixed order. Used to merge per-replica values so
// results do not depend on the worker count.
double pairwise_sum(std::span<const double> v);

// Fills out[i] = f(i) for i in [0, n), parallel over i. Each slot depends
// only on its own index, so the result is identical for any thread count.
template <class F>
std::vector<double> deterministic_map(std::size_t n, F&& f) {
    std::vector<double> out(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    return out;
}

}  // namespace rmf
