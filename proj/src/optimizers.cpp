#include "duelopt/optimizers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace duelopt {

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::Single: return "single";
        case Mode::Batched: return "batched";
        case Mode::Battling: return "battling";
    }
    return "?";
}

int log2_floor(int m) {
    if (m < 1)
        throw std::invalid_argument("log2_floor: m must be >= 1");
    int l = 0;
    while ((1LL << (l + 1)) <= m)
        ++l;
    return l;
}

long long PhaseSchedule::total_rounds() const {
    long long sum = 0;
    for (const Phase& ph : phases)
        sum += ph.t;
    return sum;
}

SmoothParams params_smooth(double eps, double beta, int d, double D, int m, Mode mode) {
    if (!(eps > 0.0))
        throw std::invalid_argument("params_smooth: eps must be > 0");
    if (!(beta > 0.0))
        throw std::invalid_argument("params_smooth: beta must be > 0");
    if (d < 1)
        throw std::invalid_argument("params_smooth: d must be >= 1");
    if (!(D > 0.0))
        throw std::invalid_argument("params_smooth: D must be > 0");
    if (m < 1)
        throw std::invalid_argument("params_smooth: m must be >= 1");

    SmoothParams p;
    p.mode = mode;
    double eta_denom = 20.0 * std::sqrt(static_cast<double>(d) * beta);
    // shared factor of every gamma formula: eps^{3/2} sqrt(2/beta) / (D^2 sqrt(log 480))
    double gamma_num = std::pow(eps, 1.5) * std::sqrt(2.0 / beta) /
                       (D * D * std::sqrt(std::log(480.0)));
    double k;  // sign bits per round
    switch (mode) {
        case Mode::Single:
            p.m = 1;
            p.l_m = 0;
            k = 1.0;
            p.eta = std::sqrt(eps) / eta_denom;
            p.gamma = gamma_num / (480.0 * beta * d);
            break;
        case Mode::Batched:
            if (m > d)
                throw std::invalid_argument("params_smooth: batched mode requires m <= d (m = " +
                                            std::to_string(m) + ", d = " + std::to_string(d) + ")");
            p.m = m;
            p.l_m = 0;
            k = static_cast<double>(m);
            p.eta = m * std::sqrt(eps) / eta_denom;
            p.gamma = gamma_num / (960.0 * beta * d * std::sqrt(static_cast<double>(d)));
            break;
        case Mode::Battling: {
            if (m < 2)
                throw std::invalid_argument("params_smooth: battling mode requires m >= 2");
            int l = log2_floor(m);
            if (l > d)
                throw std::invalid_argument(
                    "params_smooth: battling mode requires floor(log2 m) <= d (m = " +
                    std::to_string(m) + ", d = " + std::to_string(d) + ")");
            p.m = m;
            p.l_m = l;
            k = static_cast<double>(l);
            p.eta = l * std::sqrt(eps) / eta_denom;
            p.gamma = gamma_num /
                      (960.0 * beta * d * l * std::sqrt(static_cast<double>(d) * l));
            break;
        }
        default:
            throw std::invalid_argument("params_smooth: unknown mode");
    }
    double t_real = 400.0 * d * beta * D / ((std::sqrt(2.0) - 1.0) * eps * k);
    p.T = static_cast<long long>(std::ceil(t_real));
    return p;
}

PhaseSchedule params_strong(double eps, double alpha, double beta, int d, double D, int m,
                            Mode mode) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("params_strong: alpha must be > 0");
    if (!(eps > 0.0))
        throw std::invalid_argument("params_strong: eps must be > 0");
    if (mode != Mode::Batched && mode != Mode::Battling)
        throw std::invalid_argument("params_strong: mode must be batched or battling");

    PhaseSchedule sched;
    sched.mode = mode;
    sched.m = m;

    double root2m1 = std::sqrt(2.0) - 1.0;
    {
        // validates beta/d/D/m as a side effect
        SmoothParams probe = params_smooth(eps, beta, d, D, m, mode);
        (void)probe;
    }
    sched.t_base = static_cast<long long>(std::ceil(800.0 * d * beta / (root2m1 * alpha)));

    int k_eps = static_cast<int>(std::ceil(std::log2(alpha / eps)));
    if (k_eps < 1) {
        // eps >= alpha: nothing to phase over, fall back to one smooth run
        sched.k_eps = 0;
        SmoothParams p = params_smooth(eps, beta, d, D, m, mode);
        sched.phases.push_back({p.eta, p.gamma, p.T, eps});
        return sched;
    }
    sched.k_eps = k_eps;

    long long t1 = static_cast<long long>(std::ceil(static_cast<double>(sched.t_base) * D));
    if (t1 < sched.t_base)
        t1 = sched.t_base;  // D < 1: keep eps_1 <= 1 meaningful
    double eps_k = 400.0 * d * beta * D / (root2m1 * static_cast<double>(t1));
    for (int k = 1; k <= k_eps; ++k) {
        long long tk = (k == 1) ? t1 : 2 * sched.t_base;
        if (k > 1)
            eps_k /= 2.0;
        SmoothParams pk = params_smooth(eps_k, beta, d, D, m, mode);
        sched.phases.push_back({pk.eta, pk.gamma, tk, eps_k});
    }
    return sched;
}

namespace {

void validate_run(const ComparisonOracle& oracle, const Domain& dom, const Vector& w1,
                  const SmoothParams& p) {
    int d = dom.dim;
    if (static_cast<int>(w1.size()) != d)
        throw std::invalid_argument("run: w1 dimension does not match the domain");
    if (oracle.objective().dim != d)
        throw std::invalid_argument("run: objective dimension does not match the domain");
    if (!(p.eta > 0.0) || !std::isfinite(p.eta))
        throw std::invalid_argument("run: eta must be positive and finite");
    if (!(p.gamma > 0.0) || !std::isfinite(p.gamma))
        throw std::invalid_argument("run: gamma must be positive and finite");
    if (p.T < 0)
        throw std::invalid_argument("run: T must be >= 0");
    if (p.m < 1)
        throw std::invalid_argument("run: m must be >= 1");
    if (p.mode == Mode::Batched && p.m > d)
        throw std::invalid_argument("run: batched mode requires m <= d");
    if (p.mode == Mode::Battling) {
        if (p.m < 2)
            throw std::invalid_argument("run: battling mode requires m >= 2");
        int l = log2_floor(p.m);
        if (l > d)
            throw std::invalid_argument("run: battling mode requires floor(log2 m) <= d");
        if (p.l_m != 0 && p.l_m != l)
            throw std::invalid_argument("run: l_m does not match floor(log2 m)");
    }
    Vector proj = project(dom, w1);
    for (int i = 0; i < d; ++i)
        if (proj[i] != w1[i])
            throw std::invalid_argument("run: w1 lies outside the domain");
}

int duel(ComparisonOracle& oracle, const Vector& x, const Vector& y, double delta) {
    if (oracle.nu() > 0.0)
        return oracle.resampled_compare(x, y, delta);
    return oracle.compare(x, y);
}

// repeat the multiwise query and take the most frequent winner (lowest index on ties)
int modal_winner(ComparisonOracle& oracle, const std::vector<Vector>& points, long long reps) {
    std::vector<long long> votes(points.size(), 0);
    for (long long r = 0; r < reps; ++r)
        ++votes[static_cast<size_t>(oracle.battling_winner(points))];
    size_t best = 0;
    for (size_t i = 1; i < votes.size(); ++i)
        if (votes[i] > votes[best])
            best = i;
    return static_cast<int>(best);
}

void record_row(Trace& tr, const ComparisonOracle& oracle, long long round, const Vector& w,
                const Vector& runmin) {
    const Objective& f = oracle.objective();
    tr.records.push_back({round, oracle.ledger().duel_queries, oracle.ledger().multiwise_queries,
                          f(w), f(runmin)});
}

// The shared round loop. Mutates w and runmin in place so phases can chain;
// round numbers in the trace are offset + t.
void run_rounds(ComparisonOracle& oracle, const Domain& dom, const SmoothParams& p, Rng& rng,
                const RunControl& ctl, long long offset, Vector& w, Vector& runmin, Trace& tr) {
    int d = dom.dim;
    int l = p.mode == Mode::Battling ? log2_floor(p.m) : 0;
    for (long long t = 1; t <= p.T; ++t) {
        Vector g(d, 0.0);
        if (p.mode == Mode::Single) {
            Vector u = sample_sphere(d, 1.0, rng);
            Vector xp = w, xm = w;
            axpy(p.gamma, u, xp);
            axpy(-p.gamma, u, xm);
            int o = duel(oracle, xp, xm, ctl.resample_delta);
            g = scale(u, static_cast<double>(o));
        } else if (p.mode == Mode::Batched) {
            std::vector<Vector> us(p.m);
            for (int i = 0; i < p.m; ++i)
                us[i] = sample_sphere(d, 1.0, rng);
            std::vector<int> os(p.m);
            if (oracle.nu() > 0.0) {
                for (int i = 0; i < p.m; ++i) {
                    Vector xp = w, xm = w;
                    axpy(p.gamma, us[i], xp);
                    axpy(-p.gamma, us[i], xm);
                    os[i] = oracle.resampled_compare(xp, xm, ctl.resample_delta);
                }
            } else {
                std::vector<std::pair<Vector, Vector>> pairs;
                pairs.reserve(p.m);
                for (int i = 0; i < p.m; ++i) {
                    Vector xp = w, xm = w;
                    axpy(p.gamma, us[i], xp);
                    axpy(-p.gamma, us[i], xm);
                    pairs.emplace_back(std::move(xp), std::move(xm));
                }
                os = oracle.batched_compare(pairs);
            }
            for (int i = 0; i < p.m; ++i)
                axpy(static_cast<double>(os[i]) / p.m, us[i], g);
        } else {
            double r = 1.0 / std::sqrt(static_cast<double>(l));
            std::vector<Vector> dirs(l);
            for (int i = 0; i < l; ++i)
                dirs[i] = sample_sphere(d, r, rng);
            StructuredQuerySet qs = build_query_set(w, p.gamma, dirs);
            int winner;
            if (oracle.nu() > 0.0)
                winner = modal_winner(oracle, qs.points,
                                      resample_count(oracle.nu(), ctl.resample_delta));
            else
                winner = oracle.battling_winner(qs.points);
            std::vector<Vector> gs = extract_gradient_estimates(qs, winner);
            for (int i = 0; i < l; ++i)
                axpy(1.0 / l, gs[i], g);
        }

        axpy(-p.eta, g, w);
        w = project(dom, w);

        // keep the better of the incumbent and the fresh iterate
        if (duel(oracle, runmin, w, ctl.resample_delta) > 0)
            runmin = w;

        long long round = offset + t;
        if (ctl.record_stride <= 1 || round % ctl.record_stride == 0 || t == p.T)
            record_row(tr, oracle, round, w, runmin);
    }
}

Trace run_smooth(ComparisonOracle& oracle, const Domain& dom, const Vector& w1,
                 const SmoothParams& p, Rng& rng, const RunControl& ctl) {
    validate_run(oracle, dom, w1, p);
    Trace tr;
    if (p.T == 0) {
        tr.final_point = w1;
        return tr;
    }
    Vector w = w1;
    Vector runmin = w1;
    record_row(tr, oracle, 0, w, runmin);
    run_rounds(oracle, dom, p, rng, ctl, 0, w, runmin, tr);
    tr.final_point = runmin;
    return tr;
}

}  // namespace

Trace pngd_run(ComparisonOracle& oracle, const Domain& dom, const Vector& w1,
               const SmoothParams& p, Rng& rng, const RunControl& ctl) {
    if (p.mode != Mode::Single)
        throw std::invalid_argument("pngd_run: params mode must be single");
    return run_smooth(oracle, dom, w1, p, rng, ctl);
}

Trace batched_ngd_run(ComparisonOracle& oracle, const Domain& dom, const Vector& w1,
                      const SmoothParams& p, Rng& rng, const RunControl& ctl) {
    if (p.mode != Mode::Batched)
        throw std::invalid_argument("batched_ngd_run: params mode must be batched");
    return run_smooth(oracle, dom, w1, p, rng, ctl);
}

Trace battling_ngd_run(ComparisonOracle& oracle, const Domain& dom, const Vector& w1,
                       const SmoothParams& p, Rng& rng, const RunControl& ctl) {
    if (p.mode != Mode::Battling)
        throw std::invalid_argument("battling_ngd_run: params mode must be battling");
    return run_smooth(oracle, dom, w1, p, rng, ctl);
}

Trace phased_run(Mode base, ComparisonOracle& oracle, const Domain& dom, const Vector& w1,
                 const PhaseSchedule& sched, Rng& rng, const RunControl& ctl) {
    if (base != Mode::Batched && base != Mode::Battling)
        throw std::invalid_argument("phased_run: base must be batched or battling");
    if (sched.mode != base)
        throw std::invalid_argument("phased_run: schedule was built for a different mode");
    if (sched.phases.empty())
        throw std::invalid_argument("phased_run: schedule has no phases");

    Trace tr;
    if (!oracle.objective().alpha)
        tr.warnings.push_back(
            "objective '" + oracle.objective().name +
            "' has no strong-convexity constant; the phase schedule has no guarantee here");

    Vector w = w1;
    long long offset = 0;
    bool first = true;
    for (const PhaseSchedule::Phase& ph : sched.phases) {
        SmoothParams p;
        p.mode = base;
        p.m = sched.m;
        p.l_m = base == Mode::Battling ? log2_floor(sched.m) : 0;
        p.eta = ph.eta;
        p.gamma = ph.gamma;
        p.T = ph.t;
        validate_run(oracle, dom, w, p);
        if (first) {
            record_row(tr, oracle, 0, w, w);
            first = false;
        }
        Vector runmin = w;
        run_rounds(oracle, dom, p, rng, ctl, offset, w, runmin, tr);
        offset += ph.t;
        w = runmin;  // warm start the next phase from this phase's best point
    }
    tr.final_point = w;
    return tr;
}

}  // namespace duelopt
