// Command line driver: `duelopt run` executes one configured experiment and
// writes its trace CSV, `duelopt sweep` repeats a base config over a list of
// m or nu values. JSON config file keys match the ExperimentConfig fields;
// command line flags win over file values.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "duelopt/harness.hpp"

using nlohmann::json;

namespace {

void apply_experiment_json(duelopt::ExperimentConfig& cfg, const json& j, bool& seed_seen) {
    if (!j.is_object())
        throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, val] : j.items()) {
        if (key == "objective")
            cfg.objective = val.get<std::string>();
        else if (key == "dim")
            cfg.dim = val.get<int>();
        else if (key == "algo")
            cfg.algo = val.get<std::string>();
        else if (key == "m")
            cfg.m = val.get<int>();
        else if (key == "nu")
            cfg.nu = val.get<double>();
        else if (key == "eps")
            cfg.eps = val.get<double>();
        else if (key == "budget")
            cfg.budget = val.get<long long>();
        else if (key == "domain")
            cfg.domain = val.get<std::string>();
        else if (key == "w1_fill")
            cfg.w1_fill = val.get<double>();
        else if (key == "w1")
            cfg.w1 = val.get<std::vector<double>>();
        else if (key == "seed") {
            cfg.seed = val.get<std::uint64_t>();
            seed_seen = true;
        } else if (key == "out")
            cfg.out = val.get<std::string>();
        else if (key == "record_stride")
            cfg.record_stride = val.get<long long>();
        else if (key == "resample_delta")
            cfg.resample_delta = val.get<double>();
        else
            throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("cannot read config file '" + path + "'");
    return json::parse(f);
}

void print_warnings(const duelopt::Trace& trace) {
    for (const std::string& w : trace.warnings)
        std::cerr << "warning: " << w << "\n";
}

int do_run(const duelopt::ExperimentConfig& cfg) {
    duelopt::ExperimentResult res = duelopt::run_experiment(cfg);
    print_warnings(res.trace);
    long long rounds = res.trace.records.empty() ? 0 : res.trace.records.back().round;
    double f_final =
        res.trace.records.empty() ? res.f_w1 : res.trace.records.back().f_runmin;
    std::printf("algo=%s objective=%s dim=%d m=%d nu=%.12g rounds=%lld duels=%llu "
                "multiwise=%llu f_runmin=%.12g",
                cfg.algo.c_str(), cfg.objective.c_str(), cfg.dim, cfg.m, cfg.nu, rounds,
                static_cast<unsigned long long>(res.ledger.duel_queries),
                static_cast<unsigned long long>(res.ledger.multiwise_queries), f_final);
    if (res.known_min)
        std::printf(" subopt=%.12g", f_final - *res.known_min);
    std::printf("\n");
    if (!cfg.out.empty())
        std::printf("trace: %s\n", cfg.out.c_str());
    return 0;
}

int do_sweep(const duelopt::SweepConfig& cfg) {
    std::vector<duelopt::SweepRow> rows = duelopt::run_sweep(cfg);
    bool sweep_m = !cfg.m_values.empty();
    for (const duelopt::SweepRow& r : rows) {
        if (sweep_m)
            std::printf("m=%lld", static_cast<long long>(r.value));
        else
            std::printf("nu=%.12g", r.value);
        std::printf(" rounds_to_eps=%lld duels=%llu multiwise=%llu\n", r.rounds_to_eps,
                    static_cast<unsigned long long>(r.duel_queries),
                    static_cast<unsigned long long>(r.multiwise_queries));
    }
    if (!cfg.out_dir.empty())
        std::printf("summary: %s/summary.csv\n", cfg.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex optimization from comparison feedback"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "run one experiment, write its trace CSV");
    std::string run_config;
    std::string objective, algo, domain, out;
    int dim = 0, m = 0;
    double nu = 0.0, eps = 0.0, w1_fill = 0.0;
    long long budget = 0, stride = 0;
    std::uint64_t seed = 0;
    run->add_option("--config", run_config, "JSON config file");
    CLI::Option* o_objective = run->add_option("--objective", objective, "quadratic | sinsum | l2l1");
    CLI::Option* o_dim = run->add_option("--dim", dim, "problem dimension");
    CLI::Option* o_algo = run->add_option(
        "--algo", algo, "pngd | batched | battling | batched-strong | battling-strong");
    CLI::Option* o_m = run->add_option("--m", m, "batch / query-set size");
    CLI::Option* o_nu = run->add_option("--nu", nu, "oracle flip probability in [0, 0.5)");
    CLI::Option* o_eps = run->add_option("--eps", eps, "target suboptimality");
    CLI::Option* o_budget = run->add_option("--budget", budget, "round budget override");
    CLI::Option* o_seed = run->add_option("--seed", seed, "rng seed (required)");
    CLI::Option* o_w1_fill = run->add_option("--w1-fill", w1_fill, "start point fill value");
    CLI::Option* o_domain = run->add_option("--domain", domain, "all | ball:R | box:LO:HI");
    CLI::Option* o_out = run->add_option("--out", out, "trace CSV path");
    CLI::Option* o_stride = run->add_option("--record-stride", stride, "trace row stride");

    CLI::App* sweep = app.add_subcommand("sweep", "run a base config over m or nu values");
    std::string sweep_config, sweep_out_dir;
    sweep->add_option("--config", sweep_config, "JSON sweep config file")->required();
    CLI::Option* o_out_dir = sweep->add_option("--out-dir", sweep_out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            duelopt::ExperimentConfig cfg;
            bool seed_seen = false;
            if (!run_config.empty())
                apply_experiment_json(cfg, load_json(run_config), seed_seen);
            if (o_objective->count())
                cfg.objective = objective;
            if (o_dim->count())
                cfg.dim = dim;
            if (o_algo->count())
                cfg.algo = algo;
            if (o_m->count())
                cfg.m = m;
            if (o_nu->count())
                cfg.nu = nu;
            if (o_eps->count())
                cfg.eps = eps;
            if (o_budget->count())
                cfg.budget = budget;
            if (o_seed->count()) {
                cfg.seed = seed;
                seed_seen = true;
            }
            if (o_w1_fill->count())
                cfg.w1_fill = w1_fill;
            if (o_domain->count())
                cfg.domain = domain;
            if (o_out->count())
                cfg.out = out;
            if (o_stride->count())
                cfg.record_stride = stride;
            if (!seed_seen)
                throw std::invalid_argument("seed is required (--seed or config file)");
            return do_run(cfg);
        }

        // sweep
        duelopt::SweepConfig cfg;
        json j = load_json(sweep_config);
        if (!j.is_object())
            throw std::invalid_argument("sweep config must be a JSON object");
        bool seed_seen = false;
        for (const auto& [key, val] : j.items()) {
            if (key == "base")
                apply_experiment_json(cfg.base, val, seed_seen);
            else if (key == "m_values")
                cfg.m_values = val.get<std::vector<int>>();
            else if (key == "nu_values")
                cfg.nu_values = val.get<std::vector<double>>();
            else if (key == "out_dir")
                cfg.out_dir = val.get<std::string>();
            else
                throw std::invalid_argument("unknown sweep config key '" + key + "'");
        }
        if (o_out_dir->count())
            cfg.out_dir = sweep_out_dir;
        if (!seed_seen)
            throw std::invalid_argument("seed is required in the sweep base config");
        return do_sweep(cfg);
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
