#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "srlnc/analytic.hpp"

namespace srlnc::delivery {

// Full-rank probability of a k x n decoding matrix as a function of the
// number n of received packets. Provider instances close over (k, p, q) and
// memoize; they are cheap to call repeatedly but not thread-safe.
using RankProbFn = std::function<double(unsigned n)>;

struct DeliveryParams {
    unsigned k;      // source packets
    unsigned N;      // transmissions, N >= k
    double epsilon;  // iid erasure probability per transmission
};

// Probability that the survivors of N transmissions decode the message:
// binomial mixture of the rank curve over the reception count, clamped to
// [0, 1].
double delivery_probability(const DeliveryParams& params, const RankProbFn& rank_prob);

struct OverheadResult {
    double overhead = 0.0;       // E[T] - k, with T transmissions until decode
    double tail_mass = 0.0;      // decode-time mass beyond the last t evaluated
    unsigned horizon = 0;        // last t evaluated
    uint64_t clamped_steps = 0;  // negative decode-time pmf increments zeroed
};

struct OverheadConfig {
    double tail_tol = 1e-9;      // stop once 1 - P(decoded by t) falls below this
    unsigned horizon_factor = 50;  // hard cap at horizon_factor * k transmissions
};

// Thrown when the decode-time distribution has not concentrated below
// tail_tol by the hard cap; carries the partial accumulation.
class OverheadDivergence : public std::runtime_error {
public:
    OverheadDivergence(const std::string& msg, OverheadResult partial_result)
        : std::runtime_error(msg), partial(partial_result) {}

    OverheadResult partial;
};

// Average extra transmissions beyond k until decode, E[T] - k, summed as
// survival mass. Approximate rank curves can make the delivery curve dip as
// N grows; the curve is forced monotone and the clamped steps counted.
OverheadResult average_overhead(unsigned k, double epsilon, const RankProbFn& rank_prob,
                                const OverheadConfig& cfg = {});

// Curve comparison metrics; both throw on length mismatch or empty input.
double mse(std::span<const double> a, std::span<const double> b);
double max_abs_gap(std::span<const double> a, std::span<const double> b);

// Rank-curve providers.
RankProbFn stein_chen_aoo_provider(unsigned k, double p, unsigned q,
                                   analytic::AooConfig cfg);
RankProbFn stein_chen_fixed_provider(unsigned k, double p, unsigned q, unsigned m);
RankProbFn lower_bound_provider(unsigned k, double p, unsigned q);
RankProbFn upper_bound_provider(unsigned k, double p, unsigned q);
// Requires the uniform law p == 1/q; throws std::invalid_argument otherwise.
RankProbFn exact_classic_provider(unsigned k, double p, unsigned q);

}  // namespace srlnc::delivery
