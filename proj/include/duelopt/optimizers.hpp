#ifndef DUELOPT_OPTIMIZERS_HPP
#define DUELOPT_OPTIMIZERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "duelopt/oracles.hpp"
#include "duelopt/querysets.hpp"
#include "duelopt/vectorspace.hpp"

namespace duelopt {

enum class Mode { Single, Batched, Battling };

const char* mode_name(Mode mode);

// floor(log2 m) for m >= 1; the number of sign bits one multiwise winner yields
int log2_floor(int m);

struct SmoothParams {
    Mode mode = Mode::Single;
    double eta = 0.0;
    double gamma = 0.0;
    long long T = 0;  // round budget
    int m = 1;        // batch / query-set size (ignored in single mode)
    int l_m = 0;      // floor(log2 m), set for battling mode
};

struct PhaseSchedule {
    Mode mode = Mode::Batched;
    int m = 1;
    int k_eps = 0;  // phase count; 0 means the trivial single-phase fallback
    long long t_base = 0;

    struct Phase {
        double eta;
        double gamma;
        long long t;
        double eps;
    };
    std::vector<Phase> phases;

    long long total_rounds() const;
};

struct TraceRecord {
    long long round;
    std::uint64_t duel_queries;      // cumulative, from the oracle ledger
    std::uint64_t multiwise_queries;
    double f_w;       // objective at the current iterate
    double f_runmin;  // objective at the running-minimum candidate
};

struct Trace {
    std::vector<TraceRecord> records;
    Vector final_point;  // the running minimum after the last round
    std::vector<std::string> warnings;
};

struct RunControl {
    double resample_delta = 0.01;  // per logical duel when the oracle is noisy
    long long record_stride = 1;   // keep every k-th row; round 0 and phase ends always kept
};

// Step size, perturbation radius and round budget for the smooth (non-phased)
// algorithms. D is the squared distance ||w1 - x*||^2. The budget scales as
// ceil(400 d beta D / ((sqrt 2 - 1) eps k)) with k the per-round sign yield:
// m for batched, floor(log2 m) for battling, 1 for single.
SmoothParams params_smooth(double eps, double beta, int d, double D, int m, Mode mode);

// Phase-wise schedule for strongly convex objectives. Needs eps < alpha to be
// non-trivial; otherwise collapses to one smooth phase at eps. Only batched
// and battling modes are supported as phase bases.
PhaseSchedule params_strong(double eps, double alpha, double beta, int d, double D, int m,
                            Mode mode);

// One pairwise sign query per round plus the running-minimum duel: 2T duels.
Trace pngd_run(ComparisonOracle& oracle, const Domain& dom, const Vector& w1,
               const SmoothParams& p, Rng& rng, const RunControl& ctl = {});

// m sign queries per round plus the running-minimum duel: (m+1)T duels.
Trace batched_ngd_run(ComparisonOracle& oracle, const Domain& dom, const Vector& w1,
                      const SmoothParams& p, Rng& rng, const RunControl& ctl = {});

// One 2^{l_m}-point multiwise query per round plus the running-minimum duel:
// T multiwise queries and T duels.
Trace battling_ngd_run(ComparisonOracle& oracle, const Domain& dom, const Vector& w1,
                       const SmoothParams& p, Rng& rng, const RunControl& ctl = {});

// Runs the base algorithm once per phase, warm-starting each phase from the
// previous phase's running minimum. base must match sched.mode.
Trace phased_run(Mode base, ComparisonOracle& oracle, const Domain& dom, const Vector& w1,
                 const PhaseSchedule& sched, Rng& rng, const RunControl& ctl = {});

}  // namespace duelopt

#endif
