#include "srlnc/delivery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "srlnc/numeric.hpp"

namespace srlnc::delivery {
namespace {

using numeric::CompensatedSum;
using numeric::log_binom;

void validate_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must be in [0, 1], got " +
                                    std::to_string(epsilon));
}

// Wraps a rank curve with a per-instance memo; delivery and overhead sweeps
// revisit the same n many times.
RankProbFn memoized(std::function<double(unsigned)> fn) {
    auto memo = std::make_shared<std::map<unsigned, double>>();
    return [memo, fn = std::move(fn)](unsigned n) {
        auto it = memo->find(n);
        if (it != memo->end()) return it->second;
        double v = fn(n);
        memo->emplace(n, v);
        return v;
    };
}

}  // namespace

double delivery_probability(const DeliveryParams& pr, const RankProbFn& rank_prob) {
    if (pr.k < 1) throw std::invalid_argument("k must be at least 1");
    if (pr.N < pr.k)
        throw std::invalid_argument("N must be at least k; got N = " + std::to_string(pr.N) +
                                    ", k = " + std::to_string(pr.k));
    validate_epsilon(pr.epsilon);
    if (pr.epsilon == 0.0) return std::clamp(rank_prob(pr.N), 0.0, 1.0);
    if (pr.epsilon == 1.0) return 0.0;

    // Mix the rank curve over the binomial reception count; weights in the
    // log domain so wide N ranges cannot underflow pairwise.
    double log_keep = std::log1p(-pr.epsilon);
    double log_drop = std::log(pr.epsilon);
    CompensatedSum s;
    for (unsigned n = pr.k; n <= pr.N; ++n) {
        double r = rank_prob(n);
        if (r <= 0.0) continue;
        double logw = log_binom(pr.N, n) + double(n) * log_keep +
                      double(pr.N - n) * log_drop;
        s.add(r * std::exp(logw));
    }
    return std::clamp(s.sum, 0.0, 1.0);
}

OverheadResult average_overhead(unsigned k, double epsilon, const RankProbFn& rank_prob,
                                const OverheadConfig& cfg) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    validate_epsilon(epsilon);
    if (!(cfg.tail_tol > 0.0))
        throw std::invalid_argument("tail_tol must be positive");
    if (cfg.horizon_factor < 1)
        throw std::invalid_argument("horizon_factor must be at least 1");

    // E[T] = sum_{t >= 0} P(T > t), and T >= k always, so the overhead is
    // sum_{t >= k} (1 - F(t)) with F the monotone decode-by-t curve.
    OverheadResult out;
    CompensatedSum survival;
    double prev = 0.0;
    unsigned cap = cfg.horizon_factor * k;
    for (unsigned t = k; t <= cap; ++t) {
        double f = delivery_probability({k, t, epsilon}, rank_prob);
        if (f < prev) {
            f = prev;
            ++out.clamped_steps;
        }
        prev = f;
        survival.add(1.0 - f);
        out.horizon = t;
        out.overhead = survival.sum;
        out.tail_mass = 1.0 - f;
        if (out.tail_mass < cfg.tail_tol) return out;
    }
    throw OverheadDivergence("decode-time tail still " + std::to_string(out.tail_mass) +
                                 " after " + std::to_string(cap) + " transmissions",
                             out);
}

double mse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("curves differ in length: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    if (a.empty()) throw std::invalid_argument("curves must not be empty");
    CompensatedSum s;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s.add(d * d);
    }
    return s.sum / double(a.size());
}

double max_abs_gap(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("curves differ in length: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    if (a.empty()) throw std::invalid_argument("curves must not be empty");
    double g = 0.0;
    for (size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
    return g;
}

RankProbFn stein_chen_aoo_provider(unsigned k, double p, unsigned q,
                                   analytic::AooConfig cfg) {
    return memoized([=](unsigned n) {
        analytic::RankModelParams pr{k, n, p, q};
        if (n < k) return 0.0;
        unsigned m = analytic::solve_aoo(pr, cfg);
        return analytic::full_rank_prob_stein_chen(pr, m);
    });
}

RankProbFn stein_chen_fixed_provider(unsigned k, double p, unsigned q, unsigned m) {
    if (m < 2) throw std::invalid_argument("truncation order m must be at least 2");
    return memoized([=](unsigned n) {
        return analytic::full_rank_prob_stein_chen({k, n, p, q}, m);
    });
}

RankProbFn lower_bound_provider(unsigned k, double p, unsigned q) {
    return memoized([=](unsigned n) {
        return analytic::full_rank_lower_bound({k, n, p, q});
    });
}

RankProbFn upper_bound_provider(unsigned k, double p, unsigned q) {
    return memoized([=](unsigned n) {
        return analytic::full_rank_upper_bound({k, n, p, q});
    });
}

RankProbFn exact_classic_provider(unsigned k, double p, unsigned q) {
    if (p != 1.0 / double(q))
        throw std::invalid_argument("the exact product form holds only for p == 1/q; got p = " +
                                    std::to_string(p));
    return memoized([=](unsigned n) {
        return analytic::full_rank_prob_exact_classic(k, n, q);
    });
}

}  // namespace srlnc::delivery
