// Command-line harness: trace generation, policy runs, fractional solves,
// rounding, certificate checks, duels and benchmark grids.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mmp/adversary.hpp"
#include "mmp/frac_solver.hpp"
#include "mmp/offline.hpp"
#include "mmp/pd_policy.hpp"
#include "mmp/policy.hpp"
#include "mmp/report.hpp"
#include "mmp/rounding.hpp"
#include "mmp/trace.hpp"

namespace {

using namespace mmp;

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "text";
    double tol = 1e-6;
};

void emit(const GlobalOpts& opts, const ExperimentReport& report) {
    std::string text = opts.format == "json" ? report.to_json() : report.to_text();
    if (opts.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream file(opts.out);
        if (!file) throw TraceError("cannot open " + opts.out + " for writing");
        file << text << "\n";
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TraceError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

int cmd_gen(const GlobalOpts& opts, const std::string& adv, int k, int m, int n_pages,
            long long n_target, long long length, int reps, const std::string& vs,
            const std::string& meta_path) {
    AdversaryRun run;
    if (adv == "cruel") {
        int n = n_pages > 0 ? n_pages : k + 1;
        if (n != k + 1) throw TraceError("cruel uses exactly k+1 pages");
        std::vector<PageId> pages(n);
        for (int i = 0; i < n; ++i) pages[i] = i + 1;
        auto policy = make_policy(vs, k, n, opts.seed);
        CruelResult cruel = cruel_sequence(*policy, pages, n_target, length);
        run.k = k;
        run.pages = n;
        run.requests = cruel.requests;
    } else if (adv == "det-layered") {
        LayeredConfig cfg{k, m, n_target, opts.seed};
        long long universe = 1;
        for (int i = 0; i < m; ++i) universe *= (k + 1);
        auto policy = make_policy(vs, k, static_cast<int>(universe), opts.seed);
        run = det_layered(*policy, cfg);
    } else if (adv == "rand-layered") {
        run = rand_layered_k2({2, m, n_target, opts.seed});
    } else if (adv == "rand-uniform") {
        run = rand_layered_uniform({k, m, n_target, opts.seed});
    } else if (adv == "intro-lru") {
        int n = n_pages > 0 ? n_pages : m * k + 1;
        run = intro_lru_bad(n, k);
    } else if (adv == "intro-greedy") {
        auto policy = make_policy(vs.empty() ? "greedy-min-faults" : vs, 2,
                                  3 * (reps + 1), opts.seed);
        run = intro_greedy_bad(*policy, n_target, reps);
    } else if (adv == "random") {
        run = uniform_random_trace(k, n_pages, length, opts.seed);
    } else {
        throw TraceError("unknown adversary: " + adv);
    }

    if (run.requests.empty()) {
        std::cerr << "degenerate configuration: empty trace, nothing written\n";
        return 1;
    }
    RequestTrace trace = run.to_trace();
    if (opts.out.empty()) {
        save_trace(trace, std::cout);
    } else {
        save_trace_file(trace, opts.out);
    }
    if (!meta_path.empty() && !run.metadata.phases.empty()) {
        save_layered_metadata(run.metadata, meta_path);
    }
    return 0;
}

int cmd_run(const GlobalOpts& opts, const std::string& trace_path,
            const std::string& policy_spec) {
    auto start = std::chrono::steady_clock::now();
    RequestTrace trace = load_trace_file(trace_path);
    auto policy = make_policy(policy_spec, trace.k, trace.pages, opts.seed);
    CostVector costs = run_policy(*policy, trace);

    ExperimentReport report;
    report.command = "run";
    report.config["trace"] = trace_path;
    report.config["policy"] = policy_spec;
    report.config["k"] = std::to_string(trace.k);
    report.config["n"] = std::to_string(trace.pages);
    report.config["T"] = std::to_string(trace.length());
    report.config["seed"] = std::to_string(opts.seed);
    report.config["cost_model"] = "fetch";
    report.algorithms.push_back(summarize(policy_spec, costs, true, opts.seed));
    report.wall_ms = elapsed_ms(start);
    emit(opts, report);
    return 0;
}

int cmd_frac(const GlobalOpts& opts, const std::string& trace_path,
             const std::string& objective, const std::string& dump_path,
             const std::string& cert_path) {
    auto start = std::chrono::steady_clock::now();
    RequestTrace trace = load_trace_file(trace_path);
    RequestIndex index(trace);
    ConvexObjective obj = ConvexObjective::for_trace(index, objective);
    SolverParams params = default_params(trace.k, obj.q(), trace.length());
    FracRun run = run_fractional(trace, obj, params);

    ExperimentReport report;
    report.command = "frac";
    report.config["trace"] = trace_path;
    report.config["objective"] = objective;
    report.config["q"] = std::to_string(obj.q());
    report.config["k"] = std::to_string(trace.k);
    report.config["n"] = std::to_string(trace.pages);
    report.config["T"] = std::to_string(trace.length());
    report.config["r"] = std::to_string(params.r);
    report.config["delta"] = std::to_string(params.delta);
    report.config["cost_model"] = "eviction";
    report.algorithms.push_back(summarize("fractional", run.cost));

    report.has_certificate = true;
    report.certificate = {run.certificate.primal,         run.certificate.dual_linear,
                          run.certificate.dual_conjugate, run.certificate.dual,
                          run.certificate.ratio,          run.certificate.bound};

    auto add_check = [&](const CheckReport& check) {
        report.checks.push_back({check.name, check.pass, check.worst_slack});
        report.pass = report.pass && check.pass;
    };
    add_check(feasibility_check(run.state, index));
    add_check(dual_slack_check(run.state, opts.tol));
    add_check(verify_x_lower_bound(run.state, opts.tol * trace.k));
    add_check(per_round_rate_check(run.state));

    CheckSummary weak{"weak-duality",
                      !run.certificate.dual_finite ||
                          run.certificate.primal >=
                              run.certificate.dual -
                                  1e-9 * std::max(1.0, run.certificate.primal),
                      run.certificate.primal - run.certificate.dual};
    report.checks.push_back(weak);
    report.pass = report.pass && weak.pass;

    if (run.certificate.dual > 1e-9) {
        CheckSummary ratio{"ratio-bound", run.certificate.ratio <= run.certificate.bound,
                           run.certificate.bound - run.certificate.ratio};
        report.checks.push_back(ratio);
        report.pass = report.pass && ratio.pass;
    }

    // Against the exact optimum when the instance is small enough.
    try {
        OfflineSchedule opt = brute_force_minmax_opt(trace, 1e6);
        double frac_minmax = minmax_cost(run.cost);
        double minmax_bound =
            2.0 * std::exp(1.0) * std::log(static_cast<double>(index.distinct_total())) *
            std::log(static_cast<double>(trace.k) + 1.0);
        report.offline.push_back(summarize(opt.algorithm, opt.costs));
        report.config["minmax_bound_vs_opt"] = std::to_string(minmax_bound);
        CheckSummary vs_opt{"frac-vs-opt", frac_minmax <= minmax_bound * opt.minmax + 0.01,
                            minmax_bound * opt.minmax + 0.01 - frac_minmax};
        report.checks.push_back(vs_opt);
        report.pass = report.pass && vs_opt.pass;
    } catch (const TraceError&) {
        // instance too large for the exhaustive reference; skip silently
    }

    if (!dump_path.empty()) save_fractional_dump(run.state, dump_path);
    if (!cert_path.empty()) {
        std::ofstream cert_file(cert_path);
        if (!cert_file) throw TraceError("cannot open " + cert_path + " for writing");
        cert_file << certificate_json(run.state, run.certificate) << "\n";
    }

    report.wall_ms = elapsed_ms(start);
    emit(opts, report);
    return report.pass ? 0 : 1;
}

int cmd_round(const GlobalOpts& opts, const std::string& trace_path,
              const std::string& objective, const std::string& mode, double beta,
              const std::string& schedule_path) {
    auto start = std::chrono::steady_clock::now();
    RequestTrace trace = load_trace_file(trace_path);
    RequestIndex index(trace);
    ConvexObjective obj = ConvexObjective::for_trace(index, objective);
    SolverParams params = default_params(trace.k, obj.q(), trace.length());
    FracRun run = run_fractional(trace, obj, params);

    ExperimentReport report;
    report.command = "round";
    report.config["trace"] = trace_path;
    report.config["objective"] = objective;
    report.config["mode"] = mode;
    report.config["k"] = std::to_string(trace.k);
    report.config["n"] = std::to_string(trace.pages);
    report.config["T"] = std::to_string(trace.length());
    report.config["cost_model"] = "fetch";
    report.algorithms.push_back(summarize("fractional", run.cost));

    IntegralRun integral;
    if (mode == "det") {
        DetRoundResult det = round_deterministic(run.state, index);
        integral = std::move(det.run);
        report.checks.push_back({det.threshold_invariant.name,
                ⁣                 det.threshold_invariant.pass,
                                 det.threshold_invariant.worst_slack});
        report.pass = report.pass && det.threshold_invariant.pass;
    } else if (mode == "rand") {
        double b = beta > 0.0 ? beta : default_beta(trace.pages, trace.k);
        report.config["beta"] = std::to_string(b);
        RandRoundResult rand = round_randomized(run.state, index, b, opts.seed);
        integral = std::move(rand.run);
        report.config["resets"] = std::to_string(integral.resets);
        CheckSummary size_check{"cache-size", integral.max_cache_size <= trace.k,
                                static_cast<double>(trace.k - integral.max_cache_size)};
        report.checks.push_back(size_check);
        report.pass = report.pass && size_check.pass;
    } else {
        throw TraceError("mode must be det or rand");
    }
    report.algorithms.push_back(
        summarize(integral.algorithm, integral.fetch_faults, mode == "rand", opts.seed));

    if (!schedule_path.empty()) save_schedule(integral, schedule_path);
    report.wall_ms = elapsed_ms(start);
    emit(opts, report);
    return report.pass ? 0 : 1;
}

int cmd_duel(const GlobalOpts& opts, const std::string& adv, const std::string& policy_spec,
             int k, int m, long long n_target, int seeds, double slack) {
    auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.command = "duel";
    report.config["adversary"] = adv;
    report.config["policy"] = policy_spec;
    report.config["k"] = std::to_string(k);
    report.config["m"] = std::to_string(m);
    report.config["N"] = std::to_string(n_target);
    report.config["slack"] = std::to_string(slack);
    report.config["seed"] = std::to_string(opts.seed);

    if (adv == "det-layered") {
        DetDuelResult duel =
            duel_det_layered(policy_spec, {k, m, n_target, opts.seed}, slack);
        if (duel.degenerate) {
            report.config["degenerate"] = "true";
            report.pass = false;
            emit(opts, report);
            return 1;
        }
        report.config["T"] = std::to_string(duel.trace_length);
        report.config["final_page"] = std::to_string(duel.final_page);
        report.config["ratio"] = std::to_string(duel.ratio);
        report.config["target_ratio"] = std::to_string(duel.target);
        AlgorithmSummary policy_sum;
        policy_sum.name = policy_spec;
        policy_sum.minmax = duel.policy_minmax;
        report.algorithms.push_back(policy_sum);
        AlgorithmSummary off;
        off.name = "layered-offline";
        off.minmax = duel.offline_minmax;
        report.offline.push_back(off);
        report.checks.push_back({"policy-cost-exact",
                                 duel.policy_minmax == static_cast<double>(m) * n_target,
                                 0.0});
        report.checks.push_back({"offline-bound", duel.offline_minmax <= duel.offline_bound,
                                 duel.offline_bound - duel.offline_minmax});
        report.checks.push_back({"ratio-target", duel.ratio >= slack * duel.target,
                                 duel.ratio - slack * duel.target});
        report.pass = duel.pass;
    } else if (adv == "rand-layered") {
        RandDuelResult duel =
            duel_rand_layered(policy_spec, {2, m, n_target, opts.seed}, seeds);
        if (duel.degenerate) {
            report.config["degenerate"] = "true";
            report.pass = false;
            emit(opts, report);
            return 1;
        }
        report.config["seeds"] = std::to_string(duel.seeds);
        report.config["mean_final_faults"] = std::to_string(duel.mean_final_faults);
        report.config["stderr_final_faults"] = std::to_string(duel.stderr_final_faults);
        report.config["target_mean"] = std::to_string(duel.target_mean);
        report.checks.push_back({"adversary-cost",
                                 duel.max_adversary_cost <= duel.adversary_bound,
                                 duel.adversary_bound - duel.max_adversary_cost});
        report.checks.push_back({"mean-final-faults",
                                 duel.mean_final_faults >= 0.95 * duel.target_mean,
                                 duel.mean_final_faults - 0.95 * duel.target_mean});
        for (const auto& check : report.checks) report.pass = report.pass && check.pass;
    } else {
        throw TraceError("duel supports det-layered and rand-layered");
    }
    report.wall_ms = elapsed_ms(start);
    emit(opts, report);
    return report.pass ? 0 : 1;
}

int cmd_certify(const GlobalOpts& opts, const std::string& trace_path,
                const std::string& objective, const std::string& dump_path,
                const std::string& cert_path) {
    auto start = std::chrono::steady_clock::now();
    RequestTrace trace = load_trace_file(trace_path);
    RequestIndex index(trace);
    ConvexObjective obj = ConvexObjective::for_trace(index, objective);
    CertifyResult result = certify(trace, obj, read_file(dump_path), read_file(cert_path));

    ExperimentReport report;
    report.command = "certify";
    report.config["trace"] = trace_path;
    report.config["dump"] = dump_path;
    report.config["cert"] = cert_path;
    report.config["objective"] = objective;
    for (const auto& check : result.reports) {
        report.checks.push_back({check.name, check.pass, check.worst_slack});
    }
    report.pass = result.pass;
    report.wall_ms = elapsed_ms(start);
    emit(opts, report);
    return result.pass ? 0 : 1;
}

int cmd_bench(const GlobalOpts& opts, const std::string& suite_path, int workers) {
    BenchResult result = run_bench_suite(read_file(suite_path), workers);
    if (opts.out.empty()) {
        std::cout << result.csv;
    } else {
        std::ofstream out(opts.out);
        if (!out) throw TraceError("cannot open " + opts.out + " for writing");
        out << result.csv;
    }
    return result.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"min-max paging toolkit"};
    app.require_subcommand(1);

    GlobalOpts opts;
    app.add_option("--seed", opts.seed, "root RNG seed");
    app.add_option("--out", opts.out, "output path (default stdout)");
    app.add_option("--format", opts.format, "report format: json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--tol", opts.tol, "certificate tolerance");

    // gen
    auto* gen = app.add_subcommand("gen", "generate an adversarial trace");
    std::string adv, vs = "lru", meta_path;
    int k = 2, m = 1, n_pages = 0, reps = 0, seeds = 1, workers = 0;
    long long n_target = 100, length = 0;
    gen->add_option("--adv", adv,
                    "cruel|det-layered|rand-layered|rand-uniform|intro-lru|intro-greedy|random")
        ->required();
    gen->add_option("--k", k, "cache size");
    gen->add_option("--m", m, "layers");
    gen->add_option("--n-pages", n_pages, "page universe");
    gen->add_option("--N", n_target, "fault target / request budget");
    gen->add_option("--T", length, "length cap");
    gen->add_option("--reps", reps, "repetitions (intro-greedy)");
    gen->add_option("--vs", vs, "victim policy for adaptive generators");
    gen->add_option("--meta", meta_path, "sidecar metadata path (layered)");

    // run
    auto* runc = app.add_subcommand("run", "replay a trace through a policy");
    std::string trace_path, policy_spec = "lru";
    runc->add_option("--trace", trace_path, "trace file")->required();
    runc->add_option("--policy", policy_spec, "policy spec")->required();

    // frac
    auto* frac = app.add_subcommand("frac", "fractional primal-dual solve");
    std::string objective = "minmax", dump_path, cert_path;
    frac->add_option("--trace", trace_path, "trace file")->required();
    frac->add_option("--objective", objective, "l1 | lq:<q> | minmax");
    frac->add_option("--dump", dump_path, "write the solution trajectory");
    frac->add_option("--cert", cert_path, "write the certificate JSON");

    // round
    auto* round = app.add_subcommand("round", "round a fractional solution online");
    std::string mode = "det", schedule_path;
    double beta = 0.0;
    round->add_option("--trace", trace_path, "trace file")->required();
    round->add_option("--objective", objective, "l1 | lq:<q> | minmax");
    round->add_option("--mode", mode, "det | rand")->check(CLI::IsMember({"det", "rand"}));
    round->add_option("--beta", beta, "eviction aggressiveness (default 4 ln(nk))");
    round->add_option("--schedule", schedule_path, "write the integral schedule");

    // duel
    auto* duel = app.add_subcommand("duel", "adversary vs policy with offline reference");
    double slack = 0.9;
    duel->add_option("--adv", adv, "det-layered | rand-layered")->required();
    duel->add_option("--policy", policy_spec, "policy spec")->required();
    duel->add_option("--k", k, "cache size");
    duel->add_option("--m", m, "layers");
    duel->add_option("--N", n_target, "fault target");
    duel->add_option("--seeds", seeds, "seed count (randomized adversaries)");
    duel->add_option("--slack", slack, "ratio slack factor");

    // certify
    auto* cert = app.add_subcommand("certify", "re-check a fractional dump");
    cert->add_option("--trace", trace_path, "trace file")->required();
    cert->add_option("--objective", objective, "objective used for the solve");
    cert->add_option("--dump", dump_path, "solution trajectory")->required();
    cert->add_option("--cert", cert_path, "certificate JSON")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "run a suite grid, emit CSV");
    std::string suite_path;
    bench->add_option("--suite", suite_path, "suite JSON")->required();
    bench->add_option("--workers", workers, "worker override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            return cmd_gen(opts, adv, k, m, n_pages, n_target, length, reps, vs, meta_path);
        }
        if (runc->parsed()) return cmd_run(opts, trace_path, policy_spec);
        if (frac->parsed()) return cmd_frac(opts, trace_path, objective, dump_path, cert_path);
        if (round->parsed()) {
            return cmd_round(opts, trace_path, objective, mode, beta, schedule_path);
        }
        if (duel->parsed()) {
            return cmd_duel(opts, adv, policy_spec, k, m, n_target, seeds, slack);
        }
        if (cert->parsed()) {
            return cmd_certify(opts, trace_path, objective, dump_path, cert_path);
        }
        if (bench->parsed()) return cmd_bench(opts, suite_path, workers);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
