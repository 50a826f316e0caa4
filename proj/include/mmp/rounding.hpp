#ifndef MMP_ROUNDING_HPP
#define MMP_ROUNDING_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mmp/frac_solver.hpp"
#include "mmp/rng.hpp"
#include "mmp/trace.hpp"

namespace mmp {

struct ScheduleStep {
    bool fault = false;
    PageId evicted = 0;
    std::vector<PageId> cache;  // sorted snapshot after the round
};

struct IntegralRun {
    std::string algorithm;
    CostVector fetch_faults;          // fetch model, first touches included
    std::vector<ScheduleStep> schedule;
    std::uint64_t seed = 0;
    long long resets = 0;             // randomized rounding only
    int max_cache_size = 0;
};

// Deterministic k-threshold rounding: the integral cache always holds every
// page whose fractional in-cache share exceeds 1 - 1/k (x < 1/k - tol); on a
// fault the evicted page is a cached one with x >= 1/k - tol, largest x
// first, ties to the smallest id.
struct DetRoundResult {
    IntegralRun run;
    CheckReport threshold_invariant;  // cache covers the must-hold set, |must-hold| <= k
};

DetRoundResult round_deterministic(const FractionalState& state, const RequestIndex& index);

// Randomized rounding: y_p(t) = min(beta x_p(t), 1); on each round every
// cached non-requested page is evicted independently with probability
// (y_p(t) - y_p(t-1)) / (1 - y_p(t-1)), and a size overflow is repaired by
// evicting the page with the largest y (ties to the smallest id).
struct RandRoundResult {
    IntegralRun run;
    // Per column (round-ordered coordinates): 1 when the page was evicted by
    // the probabilistic step during that request window.
    std::vector<unsigned char> window_evicted;
};

double default_beta(int pages, int k);  // 4 ln(n k)

RandRoundResult round_randomized(const FractionalState& state, const RequestIndex& index,
                                 double beta, std::uint64_t seed);

// Snaps a fractional solution onto the 1/(4k) grid:
//   x* = 0            when x < 1/(8k)
//   x* = min(ceil(8k x)/(4k), 1) otherwise.
// Returned per column in round order, exact multiples of 1/(4k).
std::vector<double> discretize_quarter_k(const std::vector<double>& x, int k);

// Feasibility of an arbitrary per-column solution against the covering rows.
CheckReport solution_feasibility(const std::vector<double>& x, const RequestIndex& index,
                                 double tol = 1e-9);

// Monte Carlo check that E[max_p Y_p] <= e max_p E[Y_p] + ln(n) when the
// Y_{p,j} are independent Bernoulli with the given means.
struct ConcentrationReport {
    double empirical_max_mean = 0.0;
    double bound = 0.0;
    double slack = 0.0;  // 3 standard errors of the empirical mean
    bool pass = false;
    long long trials = 0;
};

ConcentrationReport max_fault_concentration_check(
    const std::vector<std::vector<double>>& window_means, long long trials,
    std::uint64_t seed);

void dump_schedule(const IntegralRun& run, std::ostream& out);
void save_schedule(const IntegralRun& run, const std::string& path);

} // namespace mmp

#endif
