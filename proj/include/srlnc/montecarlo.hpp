#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "srlnc/coding.hpp"
#include "srlnc/gf.hpp"

namespace srlnc::mc {

// Two-sided 99% normal quantile used for every confidence interval.
inline constexpr double kZ99 = 2.5758293035489004;

struct SimConfig {
    uint64_t trials = 10000;
    uint64_t master_seed = 1;
    unsigned max_transmissions = 0;  // 0 picks 50 * k
    unsigned workers = 0;            // 0 picks the hardware concurrency
};

struct Estimate {
    double mean = 0.0;
    double ci_half_width = 0.0;  // 99% normal approximation
    uint64_t trials = 0;
    uint64_t successes = 0;
};

// P(a fresh k x n decoding matrix is full rank). Results are bit-identical
// for a given (config, parameters) regardless of worker count: every trial
// owns an independent substream keyed by its index, and only integer counts
// are merged.
Estimate estimate_rank_prob(unsigned k, unsigned n, const gf::CodingDistribution& dist,
                            const SimConfig& cfg);

// P(decoding succeeds after N transmissions through an erasure channel with
// loss probability epsilon). One Bernoulli erasure draw per transmission;
// trials stop early once decoding completes.
Estimate estimate_delivery_prob(unsigned k, unsigned N, double epsilon,
                                const gf::CodingDistribution& dist, const SimConfig& cfg);

struct OverheadEstimate {
    double mean = 0.0;  // average transmissions beyond k until decode
    double ci_half_width = 0.0;
    uint64_t trials = 0;
    double censored_fraction = 0.0;  // trials still undecoded at the cap
    bool censor_warning = false;     // censored_fraction above 1%
};

// Average transmissions past k until decode. A censored trial contributes
// the cap as a lower bound on its decode time, biasing the mean low; the
// censored fraction is reported and the warning flag set above 1%.
OverheadEstimate estimate_overhead(unsigned k, double epsilon,
                                   const gf::CodingDistribution& dist, const SimConfig& cfg);

// Decode-time distribution from simulating each trial's transmission stream
// exactly once. Every point of the delivery curve and the overhead then come
// from the same trials (common random numbers), so curves are smooth in N.
struct RecoveryTimes {
    unsigned k = 0;
    uint64_t trials = 0;
    unsigned cap = 0;                  // horizon simulated
    std::vector<uint64_t> decoded_by;  // decoded_by[t]: trials decoded within t transmissions
    uint64_t censored = 0;             // undecoded at the cap

    // P(decoded within N transmissions); N past the cap reports the value
    // at the cap.
    double delivery_at(unsigned N) const;
    // Mean transmissions beyond k, counting censored trials at the cap.
    double mean_overhead() const;
};

RecoveryTimes recovery_times(unsigned k, double epsilon, const gf::CodingDistribution& dist,
                             const SimConfig& cfg);

// Occurrence statistics of minimal zero-sum row sets on random k x n binary
// matrices with no all-zero row (trials with one are excluded from the
// conditioned count).
struct MinimalSubsetStats {
    uint64_t trials = 0;
    uint64_t conditioned = 0;  // trials with no all-zero row
    uint64_t full_rank = 0;    // conditioned trials with no zero-sum set at all
    std::map<unsigned, uint64_t> counts;  // set size -> total sets observed
};

MinimalSubsetStats minimal_subset_stats(unsigned k, unsigned n,
                                        const gf::CodingDistribution& dist,
                                        const SimConfig& cfg);

}  // namespace srlnc::mc
