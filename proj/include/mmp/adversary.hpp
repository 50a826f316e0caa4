#ifndef MMP_ADVERSARY_HPP
#define MMP_ADVERSARY_HPP

#include <cstdint>
#include <vector>

#include "mmp/layered_metadata.hpp"
#include "mmp/policy.hpp"
#include "mmp/trace.hpp"

namespace mmp {

struct LayeredConfig {
    int k = 2;
    int m = 1;             // layers
    long long N = 100;     // per-phase fault target / request budget
    std::uint64_t seed = 1;
};

// Generated adversarial input. Adaptive generators drive the victim policy
// while emitting, so its fault counters already hold the final costs.
struct AdversaryRun {
    int k = 1;
    int pages = 0;
    std::vector<PageId> requests;
    LayeredMetadata metadata;   // layered variants only
    PageId promoted_final = 0;  // layered variants only

    RequestTrace to_trace() const {
        RequestTrace trace;
        trace.k = k;
        trace.pages = pages;
        trace.requests = requests;
        trace.validate();
        return trace;
    }
};

struct CruelResult {
    std::vector<PageId> requests;
    PageId promoted = 0;  // first page to reach the fault target, 0 if none
};

// Requests the one page of page_set the policy does not hold, after emitting
// the whole set once. Stops when a page accumulates fault_target faults
// counted from the start of this call (0 = no target), or at max_length
// requests (0 = no cap). With an under-filled cache the smallest absent
// page of the set is requested.
CruelResult cruel_sequence(OnlinePolicy& policy, const std::vector<PageId>& page_set,
                           long long fault_target, Round max_length);

// Layered deterministic construction over n = (k+1)^m pages: per phase, play
// the cruel strategy on a block of k+1 pages until one reaches N fresh
// faults; promote it into the next layer. The victim policy is (re)initialized.
AdversaryRun det_layered(OnlinePolicy& policy, const LayeredConfig& config);

// Oblivious randomized construction for k = 2 over n = 3^m pages: each phase
// issues N round-robin passes over its 3-page block, then promotes a
// uniformly random member.
AdversaryRun rand_layered_k2(const LayeredConfig& config);

// Uniform-random variant over n = (k+1)^m pages: each phase issues N
// requests drawn uniformly from its block, then promotes a uniform member.
// Experimental generator; no bound is asserted for it.
AdversaryRun rand_layered_uniform(const LayeredConfig& config);

// The LRU separation sequence (p0, p1..pk, p0, p_{k+1}..p_{2k}, p0, ...)
// over n = m k + 1 pages; p0 = 1.
AdversaryRun intro_lru_bad(int n, int k);

// The fault-count-greedy separation (k = 2): three pages round-robin N
// times, then for each repetition two fresh pages until the policy caches
// both, then a three-page round-robin with a third fresh page.
AdversaryRun intro_greedy_bad(OnlinePolicy& policy, long long N, int repetitions);

// Plain uniform trace over n pages; shared by benchmarks and tests.
AdversaryRun uniform_random_trace(int k, int n, Round length, std::uint64_t seed);

} // namespace mmp

#endif
