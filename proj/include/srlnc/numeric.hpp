#pragma once

#include <cmath>

namespace srlnc::numeric {

// log of the binomial coefficient C(a, b), b <= a.
inline double log_binom(unsigned a, unsigned b) {
    return std::lgamma(double(a) + 1.0) - std::lgamma(double(b) + 1.0) -
           std::lgamma(double(a) - double(b) + 1.0);
}

// Kahan-compensated accumulator for sums whose terms alternate or span many
// magnitudes.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace srlnc::numeric
