#include "srlnc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>

#include "srlnc/rng.hpp"

namespace srlnc::mc {
namespace {

void validate_common(const SimConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
}

void validate_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must be in [0, 1], got " +
                                    std::to_string(epsilon));
}

unsigned resolve_workers(unsigned requested, uint64_t trials) {
    unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return unsigned(std::min<uint64_t>(w, trials));
}

unsigned resolve_cap(unsigned requested, unsigned k) {
    return requested ? requested : 50 * k;
}

// Runs per_trial(trial_index, acc) over all trial indices, striped across
// workers. Each trial derives its own random substream from its index, and
// accumulators hold integers, so the merged result does not depend on the
// worker count or on scheduling.
template <class Acc, class PerTrial>
Acc accumulate_trials(uint64_t trials, unsigned workers, PerTrial per_trial) {
    workers = std::max(workers, 1u);
    std::vector<Acc> parts(workers);
    if (workers == 1) {
        for (uint64_t t = 0; t < trials; ++t) per_trial(t, parts[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                Acc& acc = parts[w];
                for (uint64_t t = w; t < trials; t += workers) per_trial(t, acc);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (unsigned w = 1; w < workers; ++w) parts[0].merge(parts[w]);
    return std::move(parts[0]);
}

double binomial_ci_half_width(uint64_t successes, uint64_t trials) {
    double mean = double(successes) / double(trials);
    return kZ99 * std::sqrt(mean * (1.0 - mean) / double(trials));
}

struct CountAcc {
    uint64_t successes = 0;
    coding::IncrementalDecoder* decoder = nullptr;  // per-worker scratch
    std::vector<uint8_t> column;

    void merge(const CountAcc& o) { successes += o.successes; }
};

// One rank trial: stream columns of a fresh matrix into the decoder until
// full rank is reached or has become impossible.
bool rank_trial(unsigned k, unsigned n, const gf::CodingDistribution& dist,
                uint64_t seed, coding::IncrementalDecoder& dec,
                std::vector<uint8_t>& col) {
    rng::Stream rs(seed);
    dec.reset();
    for (unsigned j = 0; j < n; ++j) {
        if (dec.rank() + (n - j) < k) return false;
        for (unsigned i = 0; i < k; ++i) col[i] = dist.sample(rs);
        if (dec.push(col.data()) == k) return true;
    }
    return false;
}

// One delivery trial: N transmission slots, each erased independently;
// survivors stream into the decoder.
bool delivery_trial(unsigned k, unsigned N, double epsilon,
                    const gf::CodingDistribution& dist, uint64_t seed,
                    coding::IncrementalDecoder& dec, std::vector<uint8_t>& col) {
    rng::Stream rs(seed);
    dec.reset();
    for (unsigned tx = 0; tx < N; ++tx) {
        if (dec.rank() + (N - tx) < k) return false;
        if (epsilon > 0.0 && rs.uniform() < epsilon) continue;
        for (unsigned i = 0; i < k; ++i) col[i] = dist.sample(rs);
        if (dec.push(col.data()) == k) return true;
    }
    return false;
}

// One decode-time trial: transmissions until full rank, or cap + 1 when the
// trial is censored at the cap.
unsigned decode_time_trial(unsigned k, unsigned cap, double epsilon,
                           const gf::CodingDistribution& dist, uint64_t seed,
                           coding::IncrementalDecoder& dec, std::vector<uint8_t>& col) {
    rng::Stream rs(seed);
    dec.reset();
    for (unsigned t = 1; t <= cap; ++t) {
        if (epsilon > 0.0 && rs.uniform() < epsilon) continue;
        for (unsigned i = 0; i < k; ++i) col[i] = dist.sample(rs);
        if (dec.push(col.data()) == k) return t;
    }
    return cap + 1;
}

template <class Acc>
void ensure_scratch(Acc& acc, unsigned k, const gf::Field& f) {
    if (!acc.decoder) {
        acc.decoder_storage = std::make_unique<coding::IncrementalDecoder>(k, f);
        acc.decoder = acc.decoder_storage.get();
        acc.column.resize(k);
    }
}

}  // namespace

Estimate estimate_rank_prob(unsigned k, unsigned n, const gf::CodingDistribution& dist,
                            const SimConfig& cfg) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    validate_common(cfg);
    if (n < k) return {0.0, 0.0, cfg.trials, 0};  // full rank is impossible

    struct Acc {
        uint64_t successes = 0;
        std::unique_ptr<coding::IncrementalDecoder> decoder_storage;
        coding::IncrementalDecoder* decoder = nullptr;
        std::vector<uint8_t> column;
        void merge(const Acc& o) { successes += o.successes; }
    };
    Acc total = accumulate_trials<Acc>(
        cfg.trials, resolve_workers(cfg.workers, cfg.trials), [&](uint64_t t, Acc& acc) {
            ensure_scratch(acc, k, dist.field());
            if (rank_trial(k, n, dist, rng::substream_seed(cfg.master_seed, t),
                           *acc.decoder, acc.column))
                ++acc.successes;
        });

    Estimate est;
    est.trials = cfg.trials;
    est.successes = total.successes;
    est.mean = double(total.successes) / double(cfg.trials);
    est.ci_half_width = binomial_ci_half_width(total.successes, cfg.trials);
    return est;
}

Estimate estimate_delivery_prob(unsigned k, unsigned N, double epsilon,
                                const gf::CodingDistribution& dist, const SimConfig& cfg) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (N < k)
        throw std::invalid_argument("N must be at least k; got N = " + std::to_string(N) +
                                    ", k = " + std::to_string(k));
    validate_epsilon(epsilon);
    validate_common(cfg);

    struct Acc {
        uint64_t successes = 0;
        std::unique_ptr<coding::IncrementalDecoder> decoder_storage;
        coding::IncrementalDecoder* decoder = nullptr;
        std::vector<uint8_t> column;
        void merge(const Acc& o) { successes += o.successes; }
    };
    Acc total = accumulate_trials<Acc>(
        cfg.trials, resolve_workers(cfg.workers, cfg.trials), [&](uint64_t t, Acc& acc) {
            ensure_scratch(acc, k, dist.field());
            if (delivery_trial(k, N, epsilon, dist, rng::substream_seed(cfg.master_seed, t),
                               *acc.decoder, acc.column))
                ++acc.successes;
        });

    Estimate est;
    est.trials = cfg.trials;
    est.successes = total.successes;
    est.mean = double(total.successes) / double(cfg.trials);
    est.ci_half_width = binomial_ci_half_width(total.successes, cfg.trials);
    return est;
}

OverheadEstimate estimate_overhead(unsigned k, double epsilon,
                                   const gf::CodingDistribution& dist,
                                   const SimConfig& cfg) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    validate_epsilon(epsilon);
    validate_common(cfg);
    unsigned cap = resolve_cap(cfg.max_transmissions, k);
    if (cap < k)
        throw std::invalid_argument("max_transmissions must be at least k");

    struct Acc {
        uint64_t sum_t = 0;   // exact integer sums keep the merge associative
        uint64_t sum_t2 = 0;
        uint64_t censored = 0;
        std::unique_ptr<coding::IncrementalDecoder> decoder_storage;
        coding::IncrementalDecoder* decoder = nullptr;
        std::vector<uint8_t> column;
        void merge(const Acc& o) {
            sum_t += o.sum_t;
            sum_t2 += o.sum_t2;
            censored += o.censored;
        }
    };
    Acc total = accumulate_trials<Acc>(
        cfg.trials, resolve_workers(cfg.workers, cfg.trials), [&](uint64_t t, Acc& acc) {
            ensure_scratch(acc, k, dist.field());
            unsigned T = decode_time_trial(k, cap, epsilon, dist,
                                           rng::substream_seed(cfg.master_seed, t),
                                           *acc.decoder, acc.column);
            if (T > cap) {
                ++acc.censored;
                T = cap;  // lower bound for a trial that never decoded
            }
            acc.sum_t += T;
            acc.sum_t2 += uint64_t(T) * T;
        });

    OverheadEstimate est;
    est.trials = cfg.trials;
    est.censored_fraction = double(total.censored) / double(cfg.trials);
    est.censor_warning = est.censored_fraction > 0.01;
    double mean_t = double(total.sum_t) / double(cfg.trials);
    est.mean = mean_t - double(k);
    if (cfg.trials > 1) {
        double var = (double(total.sum_t2) - double(total.sum_t) * mean_t) /
                     double(cfg.trials - 1);
        var = std::max(var, 0.0);
        est.ci_half_width = kZ99 * std::sqrt(var / double(cfg.trials));
    }
    return est;
}

double RecoveryTimes::delivery_at(unsigned N) const {
    if (trials == 0) return 0.0;
    unsigned t = std::min(N, cap);
    return double(decoded_by[t]) / double(trials);
}

double RecoveryTimes::mean_overhead() const {
    if (trials == 0) return 0.0;
    // Reconstruct sum of decode times from the cumulative counts:
    // sum T = sum_t t * (decoded exactly at t) + cap * censored.
    double sum_t = double(cap) * double(censored);
    for (unsigned t = 1; t <= cap; ++t) {
        uint64_t exactly = decoded_by[t] - decoded_by[t - 1];
        sum_t += double(t) * double(exactly);
    }
    return sum_t / double(trials) - double(k);
}

RecoveryTimes recovery_times(unsigned k, double epsilon,
                             const gf::CodingDistribution& dist, const SimConfig& cfg) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    validate_epsilon(epsilon);
    validate_common(cfg);
    unsigned cap = resolve_cap(cfg.max_transmissions, k);
    if (cap < k)
        throw std::invalid_argument("max_transmissions must be at least k");

    struct Acc {
        std::vector<uint64_t> exactly_at;  // decode-time histogram
        uint64_t censored = 0;
        std::unique_ptr<coding::IncrementalDecoder> decoder_storage;
        coding::IncrementalDecoder* decoder = nullptr;
        std::vector<uint8_t> column;
        void merge(const Acc& o) {
            if (exactly_at.size() < o.exactly_at.size())
                exactly_at.resize(o.exactly_at.size(), 0);
            for (size_t i = 0; i < o.exactly_at.size(); ++i) exactly_at[i] += o.exactly_at[i];
            censored += o.censored;
        }
    };
    Acc total = accumulate_trials<Acc>(
        cfg.trials, resolve_workers(cfg.workers, cfg.trials), [&](uint64_t t, Acc& acc) {
            ensure_scratch(acc, k, dist.field());
            if (acc.exactly_at.empty()) acc.exactly_at.assign(size_t(cap) + 1, 0);
            unsigned T = decode_time_trial(k, cap, epsilon, dist,
                                           rng::substream_seed(cfg.master_seed, t),
                                           *acc.decoder, acc.column);
            if (T > cap)
                ++acc.censored;
            else
                ++acc.exactly_at[T];
        });

    RecoveryTimes rt;
    rt.k = k;
    rt.trials = cfg.trials;
    rt.cap = cap;
    rt.censored = total.censored;
    rt.decoded_by.assign(size_t(cap) + 1, 0);
    if (total.exactly_at.empty()) total.exactly_at.assign(size_t(cap) + 1, 0);
    uint64_t running = 0;
    for (unsigned t = 0; t <= cap; ++t) {
        running += total.exactly_at[t];
        rt.decoded_by[t] = running;
    }
    return rt;
}

MinimalSubsetStats minimal_subset_stats(unsigned k, unsigned n,
                                        const gf::CodingDistribution& dist,
                                        const SimConfig& cfg) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    validate_common(cfg);
    if (dist.field().size() != 2)
        throw std::invalid_argument("minimal subset statistics need the binary field");

    struct Acc {
        uint64_t conditioned = 0;
        uint64_t full_rank = 0;
        std::vector<uint64_t> counts;  // by subset size
        void merge(const Acc& o) {
            conditioned += o.conditioned;
            full_rank += o.full_rank;
            if (counts.size() < o.counts.size()) counts.resize(o.counts.size(), 0);
            for (size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
        }
    };
    Acc total = accumulate_trials<Acc>(
        cfg.trials, resolve_workers(cfg.workers, cfg.trials), [&](uint64_t t, Acc& acc) {
            if (acc.counts.empty()) acc.counts.assign(size_t(k) + 1, 0);
            rng::Stream rs(rng::substream_seed(cfg.master_seed, t));
            coding::DecodingMatrix m = coding::generate_matrix(k, n, dist, rs);
            for (unsigned i = 0; i < k; ++i) {
                bool zero_row = true;
                for (unsigned j = 0; j < n && zero_row; ++j)
                    if (m.at(i, j)) zero_row = false;
                if (zero_row) return;  // excluded from the conditioned sample
            }
            ++acc.conditioned;
            auto sets = coding::count_minimal_zero_sum_subsets(m);
            if (sets.empty()) ++acc.full_rank;
            for (const auto& [size, count] : sets) acc.counts[size] += count;
        });

    MinimalSubsetStats out;
    out.trials = cfg.trials;
    out.conditioned = total.conditioned;
    out.full_rank = total.full_rank;
    for (unsigned size = 0; size < total.counts.size(); ++size)
        if (total.counts[size]) out.counts[size] = total.counts[size];
    return out;
}

}  // namespace srlnc::mc
