#pragma once

#include <cmath>

namespace rmf {

// A paper bound with an unspecified absolute constant: a log-scale central
// value plus the q-dependent exponent the constant multiplies. Once a
// constant c is supplied the band is [center - c*slack, center + c*slack].
struct PredictionBand {
    double center = 0.0;           // log-scale
    double slack_exponent = 0.0;   // e.g. q^2 for an e^{O(q^2)} statement

    double lower(double c) const { return center - c * slack_exponent; }
    double upper(double c) const { return center + c * slack_exponent; }
    bool contains(double log_value, double c) const {
        return log_value >= lower(c) && log_value <= upper(c);
    }
    // smallest constant that places log_value inside the band
    double required_constant(double log_value) const {
        if (slack_exponent == 0.0) return 0.0;
        return std::fabs(log_value - center) / slack_exponent;
    }
};

}  // namespace rmf
