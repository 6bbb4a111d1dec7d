#include "srlnc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "srlnc/numeric.hpp"

namespace srlnc::analytic {
namespace {

using numeric::CompensatedSum;
using numeric::log_binom;

bool valid_field_size(unsigned q) {
    return q >= 2 && q <= 256 && (q & (q - 1)) == 0;
}

void validate(const RankModelParams& pr) {
    if (pr.k < 1) throw std::invalid_argument("k must be at least 1");
    if (!(pr.p >= 0.0 && pr.p <= 1.0))
        throw std::invalid_argument("p must be in [0, 1], got " + std::to_string(pr.p));
    if (!valid_field_size(pr.q))
        throw std::invalid_argument("q must be a power of two in [2, 256], got " +
                                    std::to_string(pr.q));
}

// Model values base * exp(-(lambda_2 + ... + lambda_j)) for j = 1 .. k,
// where base = (1 - p^n)^k is the no-all-zero-row probability. g[j] is the
// full-rank estimate once minimal zero-sum sets of up to j rows are charged;
// g[k] is the untruncated model. Plain left-to-right accumulation keeps the
// j = k entry bit-identical to evaluating the closed formula directly.
std::vector<double> g_sequence(const RankModelParams& pr) {
    std::vector<double> g(size_t(pr.k) + 1, 0.0);
    if (pr.n < pr.k || pr.p >= 1.0) return g;
    double pn = std::pow(pr.p, double(pr.n));
    double base = std::exp(double(pr.k) * std::log1p(-pn));
    g[1] = base;
    if (pr.k == 1) return g;
    std::vector<double> lam = lambda_terms(pr);
    double s = 0.0;
    for (unsigned j = 2; j <= pr.k; ++j) {
        s += lam[j - 2];
        g[j] = base * std::exp(-s);
    }
    return g;
}

}  // namespace

double rho(unsigned l, unsigned n, double p, unsigned q) {
    if (l < 1) throw std::invalid_argument("rho needs l >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must be in [0, 1], got " + std::to_string(p));
    if (!valid_field_size(q))
        throw std::invalid_argument("q must be a power of two in [2, 256], got " +
                                    std::to_string(q));
    // One column position of the l rows sums to zero with probability
    // (1/q) (1 + (q-1) b^l), b = 1 - q(1-p)/(q-1); columns are independent.
    double b = 1.0 - double(q) * (1.0 - p) / double(q - 1);
    double per_column = (1.0 + double(q - 1) * std::pow(b, double(l))) / double(q);
    return std::pow(per_column, double(n));
}

PiTable pi_tilde(unsigned max_l, unsigned n, double p, unsigned q) {
    if (max_l < 1) throw std::invalid_argument("pi_tilde needs max_l >= 1");
    PiTable t;
    t.n = n;
    t.p = p;
    t.q = q;
    t.values.reserve(max_l);

    std::vector<double> rhos(size_t(max_l) + 1, 0.0);
    for (unsigned l = 1; l <= max_l; ++l) rhos[l] = rho(l, n, p, q);

    // binom[s] holds C(l - 1, s) for the l currently being built, updated in
    // place Pascal-style so the whole table costs O(max_l^2).
    std::vector<double> binom(max_l, 0.0);
    binom[0] = 1.0;
    for (unsigned l = 1; l <= max_l; ++l) {
        if (l >= 2)
            for (unsigned s = l - 1; s >= 1; --s) binom[s] += binom[s - 1];
        // A zero-sum set of l rows either is minimal or contains a minimal
        // set through a distinguished row; subtract each way of completing
        // the remaining s rows to an independent zero-sum set.
        CompensatedSum acc;
        acc.add(rhos[l]);
        for (unsigned s = 1; s + 1 <= l; ++s)
            acc.add(-binom[s] * rhos[s] * t.values[l - s - 1]);
        double v = acc.sum;
        if (v < 0.0) {
            v = 0.0;
            ++t.clamp_events;
        }
        t.values.push_back(v);
    }
    return t;
}

const PiTable& pi_tilde_cached(unsigned max_l, unsigned n, double p, unsigned q) {
    static std::mutex mu;
    static std::map<std::tuple<unsigned, double, unsigned>, std::unique_ptr<PiTable>> cache;
    // Superseded tables are kept alive so references handed out earlier
    // never dangle; growth doubles, so the retired list stays short.
    static std::vector<std::unique_ptr<PiTable>> retired;

    std::lock_guard lock(mu);
    auto& slot = cache[{n, p, q}];
    if (!slot || slot->length() < max_l) {
        unsigned target = slot ? std::max(max_l, slot->length() * 2) : max_l;
        auto fresh = std::make_unique<PiTable>(pi_tilde(target, n, p, q));
        if (slot) retired.push_back(std::move(slot));
        slot = std::move(fresh);
    }
    return *slot;
}

std::vector<double> lambda_terms(const RankModelParams& pr) {
    validate(pr);
    if (pr.p == 1.0)
        throw std::domain_error(
            "p == 1 makes every row all-zero; conditioning on nonzero rows is degenerate");
    double pn = std::pow(pr.p, double(pr.n));
    if (pn >= 1.0)
        throw std::domain_error("zero-width rows make the conditioning event degenerate");
    const PiTable& pt = pi_tilde_cached(pr.k, pr.n, pr.p, pr.q);
    double log_cond = std::log1p(-pn);  // log(1 - p^n)
    std::vector<double> lam;
    lam.reserve(pr.k >= 2 ? pr.k - 1 : 0);
    // lambda_l = C(k, l) pi~_l / (1 - p^n)^l, assembled in the log domain so
    // large k and n stay finite.
    for (unsigned l = 2; l <= pr.k; ++l)
        lam.push_back(std::exp(log_binom(pr.k, l) - double(l) * log_cond) * pt.at(l));
    return lam;
}

double full_rank_prob_stein_chen(const RankModelParams& pr, unsigned m) {
    validate(pr);
    if (m < 2) throw std::invalid_argument("truncation order m must be at least 2");
    std::vector<double> g = g_sequence(pr);
    return g[std::min<size_t>(size_t(m) + 1, pr.k)];
}

unsigned solve_aoo(const RankModelParams& pr, const AooConfig& cfg) {
    validate(pr);
    if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0))
        throw std::invalid_argument("tau must be in [0, 1], got " + std::to_string(cfg.tau));
    if (cfg.m_hat < 2) throw std::invalid_argument("m_hat must be at least 2");
    if (pr.k < 2) return 2;  // the model is already exact at order 2
    unsigned cap = std::min(cfg.m_hat, pr.k);
    std::vector<double> g = g_sequence(pr);
    double prev_step = 0.0;
    for (unsigned j = 2; j <= cap; ++j) {
        double step = g[j - 1] - g[j];
        if (step <= cfg.tau && (j == 2 || prev_step >= step)) return j;
        prev_step = step;
    }
    return cap;
}

double full_rank_prob_exact_classic(unsigned k, unsigned n, unsigned q) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (!valid_field_size(q))
        throw std::invalid_argument("q must be a power of two in [2, 256], got " +
                                    std::to_string(q));
    if (n < k) return 0.0;
    double logq = std::log(double(q));
    double r = 1.0;
    for (unsigned t = 0; t < k; ++t)
        r *= -std::expm1((double(t) - double(n)) * logq);  // 1 - q^(t - n)
    return r;
}

namespace {

double eta_one(unsigned t, unsigned k, double a) {
    double prod = 1.0;
    for (unsigned w = 0; w < k; ++w)
        prod *= 1.0 - std::pow(a, double(t) - double(w));
    return std::clamp(1.0 - prod, 0.0, 1.0);
}

}  // namespace

EtaBounds eta_bounds(unsigned t, unsigned k, double p, unsigned q) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must be in [0, 1], got " + std::to_string(p));
    if (!valid_field_size(q))
        throw std::invalid_argument("q must be a power of two in [2, 256], got " +
                                    std::to_string(q));
    double other = (1.0 - p) / double(q - 1);
    return {eta_one(t, k, std::max(p, other)), eta_one(t, k, std::min(p, other))};
}

double full_rank_lower_bound(const RankModelParams& pr) {
    validate(pr);
    if (pr.n < pr.k) return 0.0;
    double eta = eta_bounds(pr.n, pr.k, pr.p, pr.q).eta_max;
    // Expected number of row combinations that sum to zero; each size-t
    // combination can be scaled (q - 1)^(t - 1) ways.
    CompensatedSum s;
    double log_qm1 = std::log(double(pr.q - 1));
    for (unsigned t = 1; t <= pr.k; ++t)
        s.add(std::exp(log_binom(pr.k, t) + double(t - 1) * log_qm1) *
              rho(t, pr.n, pr.p, pr.q));
    double failure = std::min(eta, s.sum);
    return std::clamp(1.0 - failure, 0.0, 1.0);
}

double full_rank_upper_bound(const RankModelParams& pr) {
    validate(pr);
    if (pr.n < pr.k) return 0.0;
    double eta = eta_bounds(pr.n, pr.k, pr.p, pr.q).eta_min;
    // The sum over counts of all-zero rows telescopes to 1 - (1 - p^n)^k.
    double pn = std::pow(pr.p, double(pr.n));
    double zero_row_mass = -std::expm1(double(pr.k) * std::log1p(-pn));
    double failure = std::max(eta, zero_row_mass);
    return std::clamp(1.0 - failure, 0.0, 1.0);
}

}  // namespace srlnc::analytic
