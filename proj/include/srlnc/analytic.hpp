#pragma once

#include <cstdint>
#include <vector>

namespace srlnc::analytic {

// Parameters of the rank model for one decoding matrix: k source packets,
// n received coded packets, per-entry zero probability p, field size q
// (a power of two in [2, 256]).
struct RankModelParams {
    unsigned k;
    unsigned n;
    double p;
    unsigned q;
};

// Probability that a fixed set of l rows of a width-n matrix sums to the
// zero vector under the iid coefficient law.
double rho(unsigned l, unsigned n, double p, unsigned q);

// pi~_l is the probability that a fixed set of l rows sums to zero while no
// proper nonempty subset of it does, i.e. the l rows form a minimal
// zero-sum set. Computed by peeling smaller minimal sets off rho_l
// recursively; tiny negative remainders from cancellation are clamped to
// zero and counted.
struct PiTable {
    unsigned n = 0;
    double p = 0.0;
    unsigned q = 0;
    std::vector<double> values;  // values[l - 1] = pi~_l
    uint64_t clamp_events = 0;

    double at(unsigned l) const { return values.at(l - 1); }
    unsigned length() const { return unsigned(values.size()); }
};

PiTable pi_tilde(unsigned max_l, unsigned n, double p, unsigned q);

// Process-wide cache of pi~ tables keyed by (n, p, q), grown on demand so
// sweeps over k reuse the shared prefix. Returned references stay valid for
// the life of the process.
const PiTable& pi_tilde_cached(unsigned max_l, unsigned n, double p, unsigned q);

// Expected number of minimal zero-sum row sets of each size l = 2 .. k,
// conditioned on no all-zero rows; index 0 holds l = 2. Throws
// std::domain_error for p == 1, where every row is all-zero and the
// conditioning event has probability zero.
std::vector<double> lambda_terms(const RankModelParams& params);

// Full-rank probability of a k x n decoding matrix under a Poisson model of
// its minimal zero-sum row sets, truncated at order m: sets of up to m + 1
// rows are accounted for (a zero-sum set of j rows makes j - 1 of them
// redundant, so order m certifies redundancy up to m). Orders m >= k
// coincide with the untruncated model. Requires m >= 2. Returns exactly 0
// for n < k and for p == 1.
double full_rank_prob_stein_chen(const RankModelParams& params, unsigned m);

// Stopping-rule knobs for choosing the truncation order automatically.
struct AooConfig {
    double tau;      // threshold on successive order-to-order differences
    unsigned m_hat;  // hard cap on the order, >= 2
};

// Smallest order at which the model has stopped moving: raising the order
// changes the probability by at most tau, and the changes are already
// shrinking. Falls back to min(m_hat, k) when no order qualifies.
unsigned solve_aoo(const RankModelParams& params, const AooConfig& cfg);

// Exact full-rank probability for the uniform coefficient law p == 1/q.
double full_rank_prob_exact_classic(unsigned k, unsigned n, unsigned q);

// Failure-probability terms used by the closed-form bounds: the chance that
// a k x t matrix fails to be full rank when every entry is forced to its
// most likely (eta_max) or least likely (eta_min) coefficient probability.
struct EtaBounds {
    double eta_max;
    double eta_min;
};

EtaBounds eta_bounds(unsigned t, unsigned k, double p, unsigned q);

// Closed-form lower and upper bounds on the full-rank probability, both
// clamped to [0, 1]. The lower bound charges the expected number of
// zero-sum row combinations; the upper bound charges only all-zero rows.
double full_rank_lower_bound(const RankModelParams& params);
double full_rank_upper_bound(const RankModelParams& params);

}  // namespace srlnc::analytic
