#ifndef MMP_REPORT_HPP
#define MMP_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mmp/adversary.hpp"
#include "mmp/frac_solver.hpp"
#include "mmp/offline.hpp"
#include "mmp/trace.hpp"

namespace mmp {

struct AlgorithmSummary {
    std::string name;
    double minmax = 0.0;
    double l1 = 0.0;
    std::vector<double> per_page;  // index 0 unused
    std::uint64_t seed = 0;
    bool seeded = false;

    bool operator==(const AlgorithmSummary&) const = default;
};

struct CheckSummary {
    std::string name;
    bool pass = true;
    double margin = 0.0;

    bool operator==(const CheckSummary&) const = default;
};

struct CertificateSummary {
    double primal = 0.0;
    double dual_linear = 0.0;
    double dual_conjugate = 0.0;
    double dual = 0.0;
    double ratio = 0.0;
    double bound = 0.0;

    bool operator==(const CertificateSummary&) const = default;
};

// Self-contained record of one experiment: configuration echo, costs,
// certificate values and invariant outcomes. Serializes losslessly.
struct ExperimentReport {
    std::string command;
    std::map<std::string, std::string> config;  // parameters + seeds, echoed verbatim
    std::vector<AlgorithmSummary> algorithms;
    std::vector<AlgorithmSummary> offline;
    bool has_certificate = false;
    CertificateSummary certificate;
    std::vector<CheckSummary> checks;
    bool pass = true;
    double wall_ms = 0.0;

    bool operator==(const ExperimentReport&) const = default;

    std::string to_json() const;
    static ExperimentReport from_json(const std::string& text);
    std::string to_text() const;
};

AlgorithmSummary summarize(const std::string& name, const CostVector& costs,
                           bool seeded = false, std::uint64_t seed = 0);

// ---- duel experiments -------------------------------------------------

struct DetDuelResult {
    double policy_minmax = 0.0;
    double offline_minmax = 0.0;
    double offline_bound = 0.0;   // m + 2(N-1)/(k-1) + 2
    double ratio = 0.0;
    double target = 0.0;          // (k-1) m N / ((k-1)(m+2) + 2(N-1))
    double slack = 0.9;
    Round trace_length = 0;
    PageId final_page = 0;
    bool degenerate = false;
    bool pass = false;
};

DetDuelResult duel_det_layered(const std::string& policy_spec, const LayeredConfig& config,
                               double slack = 0.9);

struct RandDuelResult {
    int seeds = 0;
    double mean_final_faults = 0.0;
    double stderr_final_faults = 0.0;
    double min_final_faults = 0.0;
    double max_adversary_cost = 0.0;  // max over seeds of offline minmax
    double adversary_bound = 0.0;     // m + N
    double target_mean = 0.0;         // m N / 2
    bool degenerate = false;
};

RandDuelResult duel_rand_layered(const std::string& policy_spec, const LayeredConfig& config,
                                 int num_seeds);

// ---- bench ------------------------------------------------------------

// Suite files are JSON: {"suite": name, "slack": 0.9, "cases": [{...}]}.
// Each case: {"case","kind","policy","k","m","n","T","N","seed","reps"}
// with fields used as the kind requires. One CSV row per case:
//   suite,case,algorithm,k,n,T,seed,minmax_cost,l1_cost,offline_minmax,
//   ratio,bound,pass,runtime_ms
struct BenchResult {
    std::string csv;
    bool all_pass = true;
};

BenchResult run_bench_suite(const std::string& suite_json, int workers_override = 0);

// MINMAX_PAGING_WORKERS, clamped to [1, hardware]; 0 picks the default.
int bench_worker_count(int override_value);

} // namespace mmp

#endif
