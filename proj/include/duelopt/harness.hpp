#ifndef DUELOPT_HARNESS_HPP
#define DUELOPT_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duelopt/objectives.hpp"
#include "duelopt/optimizers.hpp"
#include "duelopt/oracles.hpp"

namespace duelopt {

struct ExperimentConfig {
    std::string objective = "quadratic";  // quadratic | sinsum | l2l1
    int dim = 32;
    std::string algo = "batched";  // pngd | batched | battling | batched-strong | battling-strong
    int m = 6;
    double nu = 0.0;
    double eps = 0.01;
    std::optional<long long> budget;  // rounds override; rejected for the -strong algos
    std::string domain;               // "all" | "ball:R" | "box:LO:HI"; empty = objective default
    double w1_fill = 0.5;
    std::optional<Vector> w1;  // explicit start, overrides w1_fill
    std::uint64_t seed = 0;
    std::string out;  // CSV path; empty = no file written
    long long record_stride = 1;
    double resample_delta = 0.01;
};

struct SweepConfig {
    ExperimentConfig base;
    std::vector<int> m_values;
    std::vector<double> nu_values;  // exactly one of the two lists may be non-empty
    std::string out_dir;            // per-setting CSVs plus summary.csv; empty = no files
};

struct ExperimentResult {
    Trace trace;
    QueryLedger ledger;
    double f_w1 = 0.0;
    std::optional<double> known_min;
    SmoothParams smooth;                    // the params actually run (non-phased algos)
    std::optional<PhaseSchedule> schedule;  // set for the -strong algos
};

struct SweepRow {
    double value;  // the swept m or nu
    long long rounds_to_eps;  // -1 when the target is never reached
    std::uint64_t duel_queries;
    std::uint64_t multiwise_queries;
};

Objective make_objective(const std::string& name, int d);

// empty spec picks the objective default: box [-pi, pi]^d for sinsum, all
// space otherwise
Domain make_domain(const std::string& spec, int d, const std::string& objective_name);

// first recorded round with f_runmin - known_min <= eps, or -1
long long rounds_to_eps(const Trace& trace, double known_min, double eps);

// Runs one configured experiment; writes the trace CSV when cfg.out is set.
// Config problems throw std::invalid_argument, I/O problems std::runtime_error.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// One run per swept value (seed = base seed + index); writes per-setting
// traces and summary.csv under cfg.out_dir when set, and returns the summary.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

void write_trace_csv(const std::string& path, const Trace& trace,
                     std::optional<double> known_min, double f_w1);

}  // namespace duelopt

#endif
