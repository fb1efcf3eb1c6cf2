#include "duelopt/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace duelopt {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double parse_real(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument(std::string("bad ") + what + " value '" + s + "'");
    }
}

struct AlgoKind {
    Mode mode;
    bool strong;
};

AlgoKind parse_algo(const std::string& algo) {
    if (algo == "pngd")
        return {Mode::Single, false};
    if (algo == "batched")
        return {Mode::Batched, false};
    if (algo == "battling")
        return {Mode::Battling, false};
    if (algo == "batched-strong")
        return {Mode::Batched, true};
    if (algo == "battling-strong")
        return {Mode::Battling, true};
    throw std::invalid_argument(
        "unknown algo '" + algo +
        "' (pngd, batched, battling, batched-strong, battling-strong)");
}

// splitmix64 step; keeps the direction stream decoupled from the oracle's
// noise stream even though both derive from the one config seed
std::uint64_t mix_seed(std::uint64_t s) {
    s += 0x9e3779b97f4a7c15ULL;
    s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ULL;
    s = (s ^ (s >> 27)) * 0x94d049bb133111ebULL;
    return s ^ (s >> 31);
}

constexpr long long kDefaultRoundCap = 1000000;

}  // namespace

Objective make_objective(const std::string& name, int d) {
    if (name == "quadratic")
        return make_quadratic(d);
    if (name == "sinsum")
        return make_sinsum(d);
    if (name == "l2l1")
        return make_l2l1(d);
    throw std::invalid_argument("unknown objective '" + name + "' (quadratic, sinsum, l2l1)");
}

Domain make_domain(const std::string& spec, int d, const std::string& objective_name) {
    if (spec.empty()) {
        if (objective_name == "sinsum")
            return Domain::box(Vector(d, -std::numbers::pi), Vector(d, std::numbers::pi));
        return Domain::all_space(d);
    }
    if (spec == "all")
        return Domain::all_space(d);
    if (spec.rfind("ball:", 0) == 0) {
        double r = parse_real(spec.substr(5), "ball radius");
        return Domain::ball(Vector(d, 0.0), r);
    }
    if (spec.rfind("box:", 0) == 0) {
        std::string rest = spec.substr(4);
        size_t sep = rest.find(':');
        if (sep == std::string::npos)
            throw std::invalid_argument("bad domain spec '" + spec + "' (want box:LO:HI)");
        double lo = parse_real(rest.substr(0, sep), "box lo");
        double hi = parse_real(rest.substr(sep + 1), "box hi");
        return Domain::box(Vector(d, lo), Vector(d, hi));
    }
    throw std::invalid_argument("bad domain spec '" + spec + "' (all | ball:R | box:LO:HI)");
}

long long rounds_to_eps(const Trace& trace, double known_min, double eps) {
    for (const TraceRecord& r : trace.records)
        if (r.f_runmin - known_min <= eps)
            return r.round;
    return -1;
}

void write_trace_csv(const std::string& path, const Trace& trace,
                     std::optional<double> known_min, double f_w1) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);  // open() below reports real failures
    }
    std::ofstream ofs(path);
    if (!ofs)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    ofs << "round,duel_queries,multiwise_queries,f_w,f_runmin";
    if (known_min)
        ofs << ",subopt";
    ofs << "\n";
    auto row = [&](long long round, std::uint64_t dq, std::uint64_t mq, double fw, double fr) {
        ofs << round << ',' << dq << ',' << mq << ',' << fmt_double(fw) << ','
            << fmt_double(fr);
        if (known_min)
            ofs << ',' << fmt_double(fr - *known_min);
        ofs << "\n";
    };
    if (trace.records.empty())
        row(0, 0, 0, f_w1, f_w1);  // zero-budget run: just the starting point
    for (const TraceRecord& r : trace.records)
        row(r.round, r.duel_queries, r.multiwise_queries, r.f_w, r.f_runmin);
    ofs.flush();
    if (!ofs.good())
        throw std::runtime_error("write failed for '" + path + "'");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.dim < 1)
        throw std::invalid_argument("dim must be >= 1");
    if (cfg.record_stride < 1)
        throw std::invalid_argument("record_stride must be >= 1");

    Objective obj = make_objective(cfg.objective, cfg.dim);
    Domain dom = make_domain(cfg.domain, cfg.dim, cfg.objective);
    AlgoKind kind = parse_algo(cfg.algo);

    Vector w1;
    if (cfg.w1) {
        if (static_cast<int>(cfg.w1->size()) != cfg.dim)
            throw std::invalid_argument("w1 length does not match dim");
        w1 = *cfg.w1;
    } else {
        w1 = Vector(cfg.dim, cfg.w1_fill);
    }

    if (!obj.known_minimizer)
        throw std::invalid_argument("objective '" + cfg.objective +
                                    "' has no known minimizer to size the schedule");
    Vector diff = sub(w1, *obj.known_minimizer);
    double D = dot(diff, diff);
    if (!(D > 0.0))
        throw std::invalid_argument("w1 coincides with the known minimizer; nothing to run");

    std::vector<std::string> warnings;
    double alpha = 0.0;
    if (kind.strong) {
        if (cfg.budget)
            throw std::invalid_argument("budget override is not supported for '" + cfg.algo +
                                        "'; the phase schedule fixes the rounds");
        if (obj.alpha) {
            alpha = *obj.alpha;
        } else {
            alpha = obj.beta;
            warnings.push_back("objective '" + cfg.objective +
                               "' has no strong-convexity constant; assuming alpha = beta = " +
                               fmt_double(obj.beta));
        }
    }

    ExperimentResult res;
    res.known_min = obj.known_min_value;
    res.f_w1 = obj(w1);

    RunControl ctl;
    ctl.record_stride = cfg.record_stride;
    ctl.resample_delta = cfg.resample_delta;

    ComparisonOracle oracle(obj, cfg.nu, cfg.seed);
    Rng rng(mix_seed(cfg.seed));

    if (kind.strong) {
        PhaseSchedule sched =
            params_strong(cfg.eps, alpha, obj.beta, cfg.dim, D, cfg.m, kind.mode);
        long long total = sched.total_rounds();
        if (total > kDefaultRoundCap) {
            long long left = kDefaultRoundCap;
            std::vector<PhaseSchedule::Phase> kept;
            for (const PhaseSchedule::Phase& ph : sched.phases) {
                if (left <= 0)
                    break;
                PhaseSchedule::Phase q = ph;
                if (q.t > left)
                    q.t = left;
                left -= q.t;
                kept.push_back(q);
            }
            sched.phases = std::move(kept);
            warnings.push_back("phase schedule of " + std::to_string(total) +
                               " rounds capped at " + std::to_string(kDefaultRoundCap));
        }
        res.trace = phased_run(kind.mode, oracle, dom, w1, sched, rng, ctl);
        res.schedule = std::move(sched);
    } else {
        SmoothParams p = params_smooth(cfg.eps, obj.beta, cfg.dim, D, cfg.m, kind.mode);
        if (cfg.budget) {
            if (*cfg.budget < 0)
                throw std::invalid_argument("budget must be >= 0");
            p.T = *cfg.budget;
        } else if (p.T > kDefaultRoundCap) {
            warnings.push_back("theorem budget of " + std::to_string(p.T) +
                               " rounds capped at " + std::to_string(kDefaultRoundCap));
            p.T = kDefaultRoundCap;
        }
        switch (kind.mode) {
            case Mode::Single:
                res.trace = pngd_run(oracle, dom, w1, p, rng, ctl);
                break;
            case Mode::Batched:
                res.trace = batched_ngd_run(oracle, dom, w1, p, rng, ctl);
                break;
            case Mode::Battling:
                res.trace = battling_ngd_run(oracle, dom, w1, p, rng, ctl);
                break;
        }
        res.smooth = p;
    }

    res.trace.warnings.insert(res.trace.warnings.begin(), warnings.begin(), warnings.end());
    res.ledger = oracle.ledger();

    if (!cfg.out.empty())
        write_trace_csv(cfg.out, res.trace, res.known_min, res.f_w1);
    return res;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    bool sweep_m = !cfg.m_values.empty();
    bool sweep_nu = !cfg.nu_values.empty();
    if (sweep_m == sweep_nu)
        throw std::invalid_argument("sweep needs exactly one of m_values / nu_values");
    size_t n = sweep_m ? cfg.m_values.size() : cfg.nu_values.size();

    if (!cfg.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.out_dir, ec);
    }

    std::vector<SweepRow> rows;
    for (size_t i = 0; i < n; ++i) {
        ExperimentConfig ec = cfg.base;
        ec.seed = cfg.base.seed + i;
        std::string tag;
        double value;
        if (sweep_m) {
            ec.m = cfg.m_values[i];
            value = static_cast<double>(ec.m);
            tag = "m_" + std::to_string(ec.m);
        } else {
            ec.nu = cfg.nu_values[i];
            value = ec.nu;
            tag = "nu_" + fmt_double(ec.nu);
        }
        ec.out = cfg.out_dir.empty() ? std::string() : cfg.out_dir + "/" + tag + ".csv";

        ExperimentResult res = run_experiment(ec);
        if (!res.known_min)
            throw std::invalid_argument("sweep objective needs a known minimum for rounds_to_eps");
        long long cross = rounds_to_eps(res.trace, *res.known_min, ec.eps);

        SweepRow row;
        row.value = value;
        row.rounds_to_eps = cross;
        row.duel_queries = res.ledger.duel_queries;
        row.multiwise_queries = res.ledger.multiwise_queries;
        if (cross >= 0) {
            // report the query cost at the crossing, not the whole budget
            for (const TraceRecord& r : res.trace.records) {
                if (r.round == cross) {
                    row.duel_queries = r.duel_queries;
                    row.multiwise_queries = r.multiwise_queries;
                    break;
                }
            }
        }
        rows.push_back(row);
    }

    if (!cfg.out_dir.empty()) {
        std::string path = cfg.out_dir + "/summary.csv";
        std::ofstream ofs(path);
        if (!ofs)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        ofs << (sweep_m ? "m" : "nu") << ",rounds_to_eps,duel_queries,multiwise_queries\n";
        for (const SweepRow& r : rows) {
            if (sweep_m)
                ofs << static_cast<long long>(r.value);
            else
                ofs << fmt_double(r.value);
            ofs << ',' << r.rounds_to_eps << ',' << r.duel_queries << ','
                << r.multiwise_queries << "\n";
        }
        ofs.flush();
        if (!ofs.good())
            throw std::runtime_error("write failed for '" + path + "'");
    }
    return rows;
}

}  // namespace duelopt
