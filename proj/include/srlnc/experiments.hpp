#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "srlnc/montecarlo.hpp"

namespace srlnc::experiments {

enum class Method { SteinChen, LowerBound, UpperBound, ExactClassic, MonteCarlo };

const char* method_name(Method m);
// Parses a comma-separated list of method names; throws on an unknown name.
std::vector<Method> parse_methods(const std::string& list);

// One sweep: a parameter point plus the grids to walk. Rank sweeps walk the
// received-packet grid, delivery and score sweeps walk the transmission
// grid, overhead sweeps walk the erasure grid. A nonempty p grid repeats the
// sweep per sparsity value.
struct RunConfig {
    unsigned k = 20;
    unsigned q = 2;
    double p = 0.8;
    double epsilon = 0.1;
    unsigned n_start = 0;  // 0 defaults to k
    unsigned n_end = 0;    // 0 defaults to n_start + 30
    unsigned n_step = 1;
    std::vector<Method> methods{Method::SteinChen};
    double tau = 1e-4;
    unsigned m_hat = 0;               // 0 defaults to k
    std::optional<unsigned> fixed_m;  // bypass the stopping rule
    std::vector<double> ps;           // optional p grid
    std::vector<double> epsilons;     // overhead: erasure grid
    mc::SimConfig sim;
};

// CSV writers, one row schema each; headers are emitted by the caller via
// the *_header functions so several runs can share one stream. Output is
// locale-independent and byte-stable for a fixed configuration.
const char* rank_csv_header();
const char* delivery_csv_header();
const char* overhead_csv_header();
const char* score_csv_header();

void run_rank(const RunConfig& cfg, std::ostream& out);
void run_delivery(const RunConfig& cfg, std::ostream& out);
void run_overhead(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
void run_score(const RunConfig& cfg, std::ostream& out);

// Named parameter presets reproducing the reference figure grids. Each
// preset belongs to one command and expands to one or more runs.
struct Preset {
    std::string command;
    std::vector<RunConfig> runs;
};

Preset preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace srlnc::experiments
