// Command-line front end: rank, delivery, overhead and score sweeps with
// CSV output. Exit codes: 0 success, 1 invalid configuration, 2 runtime
// failure (e.g. an overhead sweep that never converges).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "srlnc/delivery.hpp"
#include "srlnc/experiments.hpp"

namespace {

using srlnc::experiments::Preset;
using srlnc::experiments::RunConfig;

struct CliOptions {
    RunConfig base;
    std::string methods = "stein-chen";
    std::string preset;
    std::string output = "-";
    unsigned fixed_m = 0;
    uint64_t trials = 10000;
    uint64_t seed = 1;
    unsigned max_transmissions = 0;
};

void add_common_options(CLI::App* sub, CliOptions& opt) {
    sub->add_option("--K", opt.base.k, "source packets per message")
        ->check(CLI::PositiveNumber);
    sub->add_option("--q", opt.base.q, "field size, a power of two in [2, 256]");
    sub->add_option("--p", opt.base.p, "probability of a zero coding coefficient");
    sub->add_option("--epsilon", opt.base.epsilon, "per-transmission erasure probability");
    sub->add_option("--N-start", opt.base.n_start,
                    "first grid point (received packets for rank, transmissions otherwise)");
    sub->add_option("--N-end", opt.base.n_end, "last grid point");
    sub->add_option("--N-step", opt.base.n_step, "grid stride")->check(CLI::PositiveNumber);
    sub->add_option("--methods", opt.methods,
                    "comma-separated subset of stein-chen, lower-bound, upper-bound, "
                    "exact-classic, monte-carlo");
    sub->add_option("--tau", opt.base.tau, "stopping-rule threshold for the rank model");
    sub->add_option("--m-hat", opt.base.m_hat, "cap on the rank model truncation order");
    sub->add_option("--fixed-m", opt.fixed_m,
                    "fixed truncation order, bypassing the stopping rule");
    sub->add_option("--trials", opt.trials, "Monte Carlo trials per estimate")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "master seed for Monte Carlo substreams");
    sub->add_option("--max-transmissions", opt.max_transmissions,
                    "cap on simulated transmissions per trial (0 picks 50K)");
    sub->add_option("--preset", opt.preset,
                    "parameter preset: fig1, fig2a, fig2b, fig3, fig4 or fig5");
    sub->add_option("--output", opt.output, "output file, or - for stdout");
}

// Overlays every flag the user typed onto a preset run, so presets stay
// overridable.
void apply_overrides(const CLI::App* sub, const CliOptions& opt, RunConfig& run) {
    if (sub->count("--K")) run.k = opt.base.k;
    if (sub->count("--q")) run.q = opt.base.q;
    if (sub->count("--p")) {
        run.p = opt.base.p;
        run.ps.clear();
    }
    if (sub->count("--epsilon")) {
        run.epsilon = opt.base.epsilon;
        run.epsilons.clear();
    }
    if (sub->count("--N-start")) run.n_start = opt.base.n_start;
    if (sub->count("--N-end")) run.n_end = opt.base.n_end;
    if (sub->count("--N-step")) run.n_step = opt.base.n_step;
    if (sub->count("--methods")) run.methods = srlnc::experiments::parse_methods(opt.methods);
    if (sub->count("--tau")) run.tau = opt.base.tau;
    if (sub->count("--m-hat")) run.m_hat = opt.base.m_hat;
    if (sub->count("--fixed-m")) run.fixed_m = opt.fixed_m;
    run.sim.trials = opt.trials;
    run.sim.master_seed = opt.seed;
    run.sim.max_transmissions = opt.max_transmissions;
}

int run_command(const CLI::App* sub, const std::string& command, CliOptions& opt) {
    std::vector<RunConfig> runs;
    if (!opt.preset.empty()) {
        Preset ps = srlnc::experiments::preset(opt.preset);
        bool compatible = ps.command == command ||
                          (command == "score" && ps.command == "delivery");
        if (!compatible)
            throw std::invalid_argument("preset '" + opt.preset + "' belongs to the " +
                                        ps.command + " command");
        runs = std::move(ps.runs);
    } else {
        RunConfig base = opt.base;
        base.methods = srlnc::experiments::parse_methods(opt.methods);
        if (opt.fixed_m) base.fixed_m = opt.fixed_m;
        runs = {base};
    }
    for (RunConfig& run : runs) apply_overrides(sub, opt, run);

    std::ofstream file;
    if (opt.output != "-") {
        file.open(opt.output);
        if (!file) throw std::invalid_argument("cannot open output file " + opt.output);
    }
    std::ostream& out = (opt.output == "-") ? std::cout : file;

    if (command == "rank") out << srlnc::experiments::rank_csv_header();
    else if (command == "delivery") out << srlnc::experiments::delivery_csv_header();
    else if (command == "overhead") out << srlnc::experiments::overhead_csv_header();
    else out << srlnc::experiments::score_csv_header();

    for (const RunConfig& run : runs) {
        if (command == "rank") srlnc::experiments::run_rank(run, out);
        else if (command == "delivery") srlnc::experiments::run_delivery(run, out);
        else if (command == "overhead") srlnc::experiments::run_overhead(run, out, std::cerr);
        else srlnc::experiments::run_score(run, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse random linear network coding reliability models"};
    app.require_subcommand(1);

    CliOptions opt;
    auto* rank = app.add_subcommand("rank", "full-rank probability against received packets");
    auto* delivery =
        app.add_subcommand("delivery", "delivery probability against transmissions");
    auto* overhead =
        app.add_subcommand("overhead", "average extra transmissions until decode");
    auto* score = app.add_subcommand("score", "model accuracy against simulation");
    for (CLI::App* sub : {rank, delivery, overhead, score}) add_common_options(sub, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const CLI::App* sub = app.get_subcommands().front();
    try {
        return run_command(sub, sub->get_name(), opt);
    } catch (const srlnc::delivery::OverheadDivergence& e) {
        std::cerr << "error: " << e.what() << " (partial overhead " << e.partial.overhead
                  << ")\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
