#ifndef MMP_OFFLINE_HPP
#define MMP_OFFLINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "mmp/layered_metadata.hpp"
#include "mmp/trace.hpp"

namespace mmp {

// Per-round decisions of an offline run. evicted[t-1] is the page removed in
// round t (0 when none); replaying the decisions reproduces `costs` exactly.
struct OfflineSchedule {
    std::string algorithm;
    std::vector<PageId> evicted;
    CostVector costs;
    double minmax = 0.0;
    double total = 0.0;
};

// Fault counters are fetch-model: each request to an absent page counts 1.

// Offline heuristic for the min-max objective. On a fault with a full cache,
// evicts from S = {cached q : c_q < max_r c_r} (the whole cache when S is
// empty) the page whose next request lies farthest in the future;
// never-requested-again counts as infinity, ties go to the smallest id.
OfflineSchedule greedy_lfd(const RequestTrace& trace);

// Classic paging optimum (fewest total faults): evict the page needed
// farthest in the future.
OfflineSchedule belady(const RequestTrace& trace);

// Exact min-max optimum by depth-first search over eviction choices with
// branch-and-bound on the running max (GreedyLFD seeds the incumbent).
// search_cap guards the k^(faulting rounds) explosion; throws TraceError
// when the instance is too large.
OfflineSchedule brute_force_minmax_opt(const RequestTrace& trace,
                                       double search_cap = 1e7);

// Clairvoyant serving strategy for layered adversarial traces: per phase the
// promoted page is pinned into one slot after its first request, and the
// remaining pages are served by a fresh GreedyLFD on k-1 slots.
CostVector layered_offline_cost(const RequestTrace& trace, const LayeredMetadata& meta);

// Upper bound of the GreedyLFD cost lemma for sequences over k+1 pages:
// 2 (T - 2k - 1) / (2k + k (k+1)) + 2.
double greedy_lfd_bound(int k, Round length);

} // namespace mmp

#endif
