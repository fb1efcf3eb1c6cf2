#include "duelopt/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace duelopt {

long long resample_count(double nu, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("resample_count: delta must lie in (0, 1)");
    if (!(nu >= 0.0 && nu < 0.5))
        throw std::invalid_argument("resample_count: nu must lie in [0, 0.5)");
    double margin = 0.5 - nu;
    return static_cast<long long>(std::ceil(std::log(2.0 / delta) / (2.0 * margin * margin)));
}

ComparisonOracle::ComparisonOracle(Objective obj, double nu, std::uint64_t seed)
    : obj_(std::move(obj)), nu_(nu), rng_(seed) {
    if (!(nu_ >= 0.0 && nu_ < 0.5))
        throw std::invalid_argument("ComparisonOracle: nu must lie in [0, 0.5)");
}

void ComparisonOracle::check_point(const Vector& v, const char* who) const {
    if (static_cast<int>(v.size()) != obj_.dim)
        throw std::invalid_argument(std::string(who) + ": point dimension does not match objective");
}

int ComparisonOracle::compare(const Vector& x, const Vector& y) {
    check_point(x, "compare");
    check_point(y, "compare");
    double diff = obj_.eval(x) - obj_.eval(y);
    int s = diff >= 0.0 ? 1 : -1;  // sign(0) = +1
    // nu = 0 consumes no randomness, keeping noiseless streams aligned
    if (nu_ > 0.0 && rng_.uniform() < nu_)
        s = -s;
    ledger_.duel_queries += 1;
    ledger_.total_feedback_bits += 1;
    return s;
}

std::vector<int> ComparisonOracle::batched_compare(
    const std::vector<std::pair<Vector, Vector>>& pairs) {
    if (pairs.empty())
        throw std::invalid_argument("batched_compare: pair list must be non-empty");
    std::vector<int> out;
    out.reserve(pairs.size());
    for (const auto& [x, y] : pairs)
        out.push_back(compare(x, y));
    return out;
}

int ComparisonOracle::battling_winner(const std::vector<Vector>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("battling_winner: need at least 2 points");
    for (const Vector& p : points)
        check_point(p, "battling_winner");
    size_t best = 0;
    double fbest = obj_.eval(points[0]);
    for (size_t i = 1; i < points.size(); ++i) {
        double fi = obj_.eval(points[i]);
        if (fi < fbest) {  // strict: ties keep the lowest index
            fbest = fi;
            best = i;
        }
    }
    size_t winner = best;
    if (nu_ > 0.0 && rng_.uniform() < nu_) {
        // uniform over the non-minimizing indices
        size_t k = static_cast<size_t>(rng_.uniform() * static_cast<double>(points.size() - 1));
        if (k >= points.size() - 1)
            k = points.size() - 2;
        winner = k < best ? k : k + 1;
    }
    ledger_.multiwise_queries += 1;
    ledger_.total_feedback_bits += 1;
    return static_cast<int>(winner);
}

int ComparisonOracle::resampled_compare(const Vector& x, const Vector& y, double delta) {
    long long n = resample_count(nu_, delta);
    long long plus = 0;
    for (long long i = 0; i < n; ++i)
        if (compare(x, y) > 0)
            ++plus;
    return 2 * plus >= n ? 1 : -1;  // majority; ties -> +1
}

}  // namespace duelopt
