#include "srlnc/experiments.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "srlnc/delivery.hpp"

namespace srlnc::experiments {
namespace {

// Shortest round-trip representation, locale-independent, so output bytes
// depend only on the values.
std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

unsigned degree_for_q(unsigned q) {
    for (unsigned e = 1; e <= 8; ++e)
        if ((1u << e) == q) return e;
    throw std::invalid_argument("q must be a power of two in [2, 256], got " +
                                std::to_string(q));
}

struct Grids {
    unsigned n_start, n_end, n_step;
    std::vector<double> ps;
    analytic::AooConfig aoo;
};

Grids resolve_grids(const RunConfig& cfg, bool n_needs_k) {
    Grids g;
    g.n_start = cfg.n_start ? cfg.n_start : cfg.k;
    g.n_end = cfg.n_end ? cfg.n_end : g.n_start + 30;
    g.n_step = cfg.n_step ? cfg.n_step : 1;
    if (g.n_end < g.n_start)
        throw std::invalid_argument("grid end " + std::to_string(g.n_end) +
                                    " is below grid start " + std::to_string(g.n_start));
    if (n_needs_k && g.n_start < cfg.k)
        throw std::invalid_argument("transmission grid must start at or above k");
    g.ps = cfg.ps.empty() ? std::vector<double>{cfg.p} : cfg.ps;
    g.aoo = {cfg.tau, cfg.m_hat ? cfg.m_hat : std::max(cfg.k, 2u)};
    return g;
}

delivery::RankProbFn make_provider(Method m, const RunConfig& cfg, double p,
                                   const analytic::AooConfig& aoo) {
    switch (m) {
        case Method::SteinChen:
            if (cfg.fixed_m)
                return delivery::stein_chen_fixed_provider(cfg.k, p, cfg.q, *cfg.fixed_m);
            return delivery::stein_chen_aoo_provider(cfg.k, p, cfg.q, aoo);
        case Method::LowerBound:
            return delivery::lower_bound_provider(cfg.k, p, cfg.q);
        case Method::UpperBound:
            return delivery::upper_bound_provider(cfg.k, p, cfg.q);
        case Method::ExactClassic:
            return delivery::exact_classic_provider(cfg.k, p, cfg.q);
        case Method::MonteCarlo:
            break;
    }
    throw std::logic_error("no analytic provider for this method");
}

std::vector<double> csv_fraction_grid(unsigned lo_pct, unsigned hi_pct, unsigned step_pct) {
    std::vector<double> out;
    for (unsigned i = lo_pct; i <= hi_pct; i += step_pct) out.push_back(double(i) / 100.0);
    return out;
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::SteinChen: return "stein-chen";
        case Method::LowerBound: return "lower-bound";
        case Method::UpperBound: return "upper-bound";
        case Method::ExactClassic: return "exact-classic";
        case Method::MonteCarlo: return "monte-carlo";
    }
    return "?";
}

std::vector<Method> parse_methods(const std::string& list) {
    std::vector<Method> out;
    size_t pos = 0;
    while (pos <= list.size()) {
        size_t comma = list.find(',', pos);
        std::string name = list.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (name == "stein-chen") out.push_back(Method::SteinChen);
        else if (name == "lower-bound") out.push_back(Method::LowerBound);
        else if (name == "upper-bound") out.push_back(Method::UpperBound);
        else if (name == "exact-classic") out.push_back(Method::ExactClassic);
        else if (name == "monte-carlo") out.push_back(Method::MonteCarlo);
        else
            throw std::invalid_argument(
                "unknown method '" + name +
                "' (expected stein-chen, lower-bound, upper-bound, exact-classic or monte-carlo)");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("method list is empty");
    return out;
}

const char* rank_csv_header() { return "K,n,q,p,method,value,ci_half_width,m_star\n"; }
const char* delivery_csv_header() { return "K,q,p,epsilon,N,method,value,ci_half_width\n"; }
const char* overhead_csv_header() {
    return "K,q,p,epsilon,method,value,ci_half_width,censored_fraction\n";
}
const char* score_csv_header() { return "K,q,p,epsilon,method,mse,max_abs_gap\n"; }

void run_rank(const RunConfig& cfg, std::ostream& out) {
    Grids g = resolve_grids(cfg, false);
    const gf::Field& f = gf::field(degree_for_q(cfg.q));
    for (Method method : cfg.methods) {
        for (double p : g.ps) {
            gf::CodingDistribution dist(f, p);
            delivery::RankProbFn provider;
            if (method != Method::MonteCarlo) provider = make_provider(method, cfg, p, g.aoo);
            for (unsigned n = g.n_start; n <= g.n_end; n += g.n_step) {
                std::string value, ci, m_star;
                if (method == Method::MonteCarlo) {
                    mc::Estimate est = mc::estimate_rank_prob(cfg.k, n, dist, cfg.sim);
                    value = fmt(est.mean);
                    ci = fmt(est.ci_half_width);
                } else if (method == Method::SteinChen) {
                    unsigned m = cfg.fixed_m
                                     ? *cfg.fixed_m
                                     : analytic::solve_aoo({cfg.k, n, p, cfg.q}, g.aoo);
                    value = fmt(analytic::full_rank_prob_stein_chen({cfg.k, n, p, cfg.q}, m));
                    m_star = std::to_string(m);
                } else {
                    value = fmt(provider(n));
                }
                out << cfg.k << ',' << n << ',' << cfg.q << ',' << fmt(p) << ','
                    << method_name(method) << ',' << value << ',' << ci << ',' << m_star
                    << '\n';
            }
        }
    }
}

void run_delivery(const RunConfig& cfg, std::ostream& out) {
    Grids g = resolve_grids(cfg, true);
    const gf::Field& f = gf::field(degree_for_q(cfg.q));
    for (Method method : cfg.methods) {
        for (double p : g.ps) {
            gf::CodingDistribution dist(f, p);
            if (method == Method::MonteCarlo) {
                // One decode-time simulation serves the whole N grid, so the
                // curve shares its random numbers across points.
                mc::SimConfig sim = cfg.sim;
                sim.max_transmissions = g.n_end;
                mc::RecoveryTimes rt = mc::recovery_times(cfg.k, cfg.epsilon, dist, sim);
                for (unsigned N = g.n_start; N <= g.n_end; N += g.n_step) {
                    double v = rt.delivery_at(N);
                    double ci = mc::kZ99 * std::sqrt(v * (1.0 - v) / double(rt.trials));
                    out << cfg.k << ',' << cfg.q << ',' << fmt(p) << ',' << fmt(cfg.epsilon)
                        << ',' << N << ',' << method_name(method) << ',' << fmt(v) << ','
                        << fmt(ci) << '\n';
                }
                continue;
            }
            delivery::RankProbFn provider = make_provider(method, cfg, p, g.aoo);
            for (unsigned N = g.n_start; N <= g.n_end; N += g.n_step) {
                double v = delivery::delivery_probability({cfg.k, N, cfg.epsilon}, provider);
                out << cfg.k << ',' << cfg.q << ',' << fmt(p) << ',' << fmt(cfg.epsilon)
                    << ',' << N << ',' << method_name(method) << ',' << fmt(v) << ",\n";
            }
        }
    }
}

void run_overhead(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    Grids g = resolve_grids(cfg, false);
    const gf::Field& f = gf::field(degree_for_q(cfg.q));
    std::vector<double> eps_grid =
        cfg.epsilons.empty() ? std::vector<double>{cfg.epsilon} : cfg.epsilons;
    for (Method method : cfg.methods) {
        for (double p : g.ps) {
            gf::CodingDistribution dist(f, p);
            delivery::RankProbFn provider;
            if (method != Method::MonteCarlo)
                provider = make_provider(method, cfg, p, g.aoo);  // shared across epsilons
            for (double eps : eps_grid) {
                std::string value, ci, censored;
                if (method == Method::MonteCarlo) {
                    mc::OverheadEstimate est = mc::estimate_overhead(cfg.k, eps, dist, cfg.sim);
                    value = fmt(est.mean);
                    ci = fmt(est.ci_half_width);
                    censored = fmt(est.censored_fraction);
                    if (est.censor_warning)
                        diag << "warning: " << fmt(est.censored_fraction * 100.0)
                             << "% of trials hit the transmission cap at K=" << cfg.k
                             << " p=" << fmt(p) << " epsilon=" << fmt(eps)
                             << "; the mean is biased low\n";
                } else {
                    value = fmt(delivery::average_overhead(cfg.k, eps, provider).overhead);
                }
                out << cfg.k << ',' << cfg.q << ',' << fmt(p) << ',' << fmt(eps) << ','
                    << method_name(method) << ',' << value << ',' << ci << ',' << censored
                    << '\n';
            }
        }
    }
}

void run_score(const RunConfig& cfg, std::ostream& out) {
    Grids g = resolve_grids(cfg, true);
    const gf::Field& f = gf::field(degree_for_q(cfg.q));

    for (double p : g.ps) {
        // Reference curve: one decode-time simulation serves every method.
        gf::CodingDistribution dist(f, p);
        mc::SimConfig sim = cfg.sim;
        sim.max_transmissions = g.n_end;
        mc::RecoveryTimes rt = mc::recovery_times(cfg.k, cfg.epsilon, dist, sim);
        std::vector<double> sim_curve;
        for (unsigned N = g.n_start; N <= g.n_end; N += g.n_step)
            sim_curve.push_back(rt.delivery_at(N));

        for (Method method : cfg.methods) {
            if (method == Method::MonteCarlo) continue;  // it is the reference
            delivery::RankProbFn provider = make_provider(method, cfg, p, g.aoo);
            std::vector<double> model_curve;
            for (unsigned N = g.n_start; N <= g.n_end; N += g.n_step)
                model_curve.push_back(
                    delivery::delivery_probability({cfg.k, N, cfg.epsilon}, provider));
            out << cfg.k << ',' << cfg.q << ',' << fmt(p) << ',' << fmt(cfg.epsilon) << ','
                << method_name(method) << ',' << fmt(delivery::mse(model_curve, sim_curve))
                << ',' << fmt(delivery::max_abs_gap(model_curve, sim_curve)) << '\n';
        }
    }
}

std::vector<std::string> preset_names() {
    return {"fig1", "fig2a", "fig2b", "fig3", "fig4", "fig5"};
}

Preset preset(const std::string& name) {
    auto aoo_cap = [](unsigned k) { return (3 * k + 3) / 4; };  // ceil(3k/4)
    Preset ps;
    if (name == "fig1") {
        // Truncation-order contours: the rank model on an n grid, one sweep
        // per fixed order.
        ps.command = "rank";
        for (unsigned m = 2; m <= 20; ++m) {
            RunConfig r;
            r.k = 20;
            r.q = 2;
            r.p = 0.8;
            r.n_start = 20;
            r.n_end = 32;
            r.methods = {Method::SteinChen};
            r.fixed_m = m;
            ps.runs.push_back(r);
        }
    } else if (name == "fig2a" || name == "fig2b") {
        ps.command = "delivery";
        for (unsigned k : {10u, 20u, 50u}) {
            RunConfig r;
            r.k = k;
            r.q = 2;
            r.p = (name == "fig2a") ? 0.7 : 0.9;
            r.epsilon = 0.1;
            r.n_start = k;
            r.n_end = k + 30;
            r.methods = {Method::SteinChen, Method::LowerBound, Method::UpperBound,
                         Method::MonteCarlo};
            r.tau = 1e-10;
            r.m_hat = aoo_cap(k);
            ps.runs.push_back(r);
        }
    } else if (name == "fig3") {
        ps.command = "delivery";
        for (unsigned k : {20u, 50u}) {
            for (double p : {0.7, 0.9}) {
                RunConfig r;
                r.k = k;
                r.q = 16;
                r.p = p;
                r.epsilon = 0.1;
                r.n_start = k;
                r.n_end = k + 30;
                r.methods = {Method::SteinChen, Method::LowerBound, Method::UpperBound,
                             Method::MonteCarlo};
                r.tau = 1e-10;
                r.m_hat = aoo_cap(k);
                ps.runs.push_back(r);
            }
        }
    } else if (name == "fig4") {
        // Delivery probability against sparsity at a fixed transmission
        // count per message size.
        ps.command = "delivery";
        for (unsigned q : {2u, 16u}) {
            for (auto [k, N] : {std::pair<unsigned, unsigned>{20, 25}, {50, 55}}) {
                RunConfig r;
                r.k = k;
                r.q = q;
                r.epsilon = 0.1;
                r.n_start = N;
                r.n_end = N;
                r.ps = csv_fraction_grid(5, 95, 5);
                r.methods = {Method::SteinChen, Method::LowerBound, Method::UpperBound,
                             Method::MonteCarlo};
                r.tau = 1e-10;
                r.m_hat = aoo_cap(k);
                ps.runs.push_back(r);
            }
        }
    } else if (name == "fig5") {
        ps.command = "overhead";
        for (unsigned k : {20u, 50u, 100u}) {
            for (double p : {0.7, 0.9}) {
                RunConfig r;
                r.k = k;
                r.q = 2;
                r.p = p;
                r.epsilons = csv_fraction_grid(0, 30, 5);
                r.methods = {Method::SteinChen, Method::MonteCarlo};
                r.tau = 1e-10;
                r.m_hat = aoo_cap(k);
                ps.runs.push_back(r);
            }
        }
    } else {
        throw std::invalid_argument("unknown preset '" + name +
                                    "' (expected fig1, fig2a, fig2b, fig3, fig4 or fig5)");
    }
    return ps;
}

}  // namespace srlnc::experiments
