#ifndef DUELOPT_ORACLES_HPP
#define DUELOPT_ORACLES_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "duelopt/objectives.hpp"
#include "duelopt/vectorspace.hpp"

namespace duelopt {

struct QueryLedger {
    std::uint64_t duel_queries = 0;
    std::uint64_t multiwise_queries = 0;
    std::uint64_t total_feedback_bits = 0;
};

// Number of repeated comparisons needed so a majority vote recovers the true
// sign with probability >= 1 - delta under flip noise nu (Hoeffding bound).
long long resample_count(double nu, double delta);

// Comparison-feedback channel over one objective. Owns its noise source and
// the query ledger; one instance per run, never shared across threads.
class ComparisonOracle {
public:
    ComparisonOracle(Objective obj, double nu, std::uint64_t seed);

    // sign(f(x) - f(y)) with sign(0) = +1, flipped with probability nu
    int compare(const Vector& x, const Vector& y);

    // one independent compare per pair
    std::vector<int> batched_compare(const std::vector<std::pair<Vector, Vector>>& pairs);

    // index of the arg min (ties -> lowest index); with probability nu a
    // uniformly random non-minimizing index instead
    int battling_winner(const std::vector<Vector>& points);

    // majority sign over resample_count(nu, delta) repeated compares
    int resampled_compare(const Vector& x, const Vector& y, double delta);

    const Objective& objective() const { return obj_; }
    double nu() const { return nu_; }
    const QueryLedger& ledger() const { return ledger_; }

private:
    void check_point(const Vector& v, const char* who) const;

    Objective obj_;
    double nu_;
    Rng rng_;
    QueryLedger ledger_;
};

}  // namespace duelopt

#endif
