#include "mmp/offline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace mmp {

namespace {

constexpr Round kNever = std::numeric_limits<Round>::max();

struct CoreResult {
    std::vector<PageId> evicted;  // per position, 0 = none
    CostVector costs;
};

enum class EvictRule { GreedyLfd, Belady };

// Shared simulation for GreedyLFD and Belady over a raw sequence (positions
// 0-based). next_request[pos (by page)] is maintained with per-page cursors.
CoreResult run_offline(const std::vector<PageId>& seq, int capacity, int max_id,
                       EvictRule rule) {
    CoreResult res;
    res.evicted.assign(seq.size(), 0);
    res.costs = CostVector(max_id);

    std::vector<std::vector<Round>> occ(max_id + 1);
    for (Round i = 0; i < static_cast<Round>(seq.size()); ++i) occ[seq[i]].push_back(i);
    std::vector<size_t> cursor(max_id + 1, 0);

    auto next_after = [&](PageId p, Round pos) -> Round {
        auto& list = occ[p];
        size_t& c = cursor[p];
        while (c < list.size() && list[c] <= pos) ++c;
        return c < list.size() ? list[c] : kNever;
    };

    std::vector<PageId> cache;
    cache.reserve(capacity);
    double max_cost = 0.0;

    for (Round pos = 0; pos < static_cast<Round>(seq.size()); ++pos) {
        PageId p = seq[pos];
        if (std::find(cache.begin(), cache.end(), p) != cache.end()) continue;
        res.costs[p] += 1.0;
        max_cost = std::max(max_cost, res.costs[p]);
        if (static_cast<int>(cache.size()) < capacity) {
            cache.push_back(p);
            continue;
        }
        PageId victim = 0;
        Round victim_next = -1;
        for (PageId q : cache) {
            if (rule == EvictRule::GreedyLfd && res.costs[q] >= max_cost) continue;
            Round nq = next_after(q, pos);
            if (nq > victim_next || (nq == victim_next && (victim == 0 || q < victim))) {
                victim = q;
                victim_next = nq;
            }
        }
        if (victim == 0) {
            // All cached pages sit at the running maximum; fall back to the
            // whole cache.
            for (PageId q : cache) {
                Round nq = next_after(q, pos);
                if (nq > victim_next || (nq == victim_next && (victim == 0 || q < victim))) {
                    victim = q;
                    victim_next = nq;
                }
            }
        }
        *std::find(cache.begin(), cache.end(), victim) = p;
        res.evicted[pos] = victim;
    }
    return res;
}

OfflineSchedule package(const std::string& name, CoreResult&& core) {
    OfflineSchedule sched;
    sched.algorithm = name;
    sched.evicted = std::move(core.evicted);
    sched.costs = std::move(core.costs);
    sched.minmax = minmax_cost(sched.costs);
    sched.total = l1_cost(sched.costs);
    return sched;
}

} // namespace

OfflineSchedule greedy_lfd(const RequestTrace& trace) {
    trace.validate();
    return package("greedy-lfd",
                   run_offline(trace.requests, trace.k, trace.pages, EvictRule::GreedyLfd));
}

OfflineSchedule belady(const RequestTrace& trace) {
    trace.validate();
    return package("belady",
                   run_offline(trace.requests, trace.k, trace.pages, EvictRule::Belady));
}

double greedy_lfd_bound(int k, Round length) {
    double kk = static_cast<double>(k);
    return 2.0 * (static_cast<double>(length) - 2.0 * kk - 1.0) /
               (2.0 * kk + kk * (kk + 1.0)) +
           2.0;
}

namespace {

struct BruteSearch {
    const std::vector<PageId>& seq;
    int k;
    std::vector<PageId> cache;
    std::vector<double> counts;
    std::vector<PageId> evicted;
    std::vector<PageId> best_evicted;
    double best;  // incumbent minmax (strictly improving)

    void run(Round pos, double running_max) {
        if (running_max >= best) return;  // bound
        if (pos == static_cast<Round>(seq.size())) {
            best = running_max;
            best_evicted = evicted;
            return;
        }
        PageId p = seq[pos];
        if (std::find(cache.begin(), cache.end(), p) != cache.end()) {
            run(pos + 1, running_max);
            return;
        }
        counts[p] += 1.0;
        double new_max = std::max(running_max, counts[p]);
        if (new_max >= best) {
            counts[p] -= 1.0;
            return;
        }
        if (static_cast<int>(cache.size()) < k) {
            cache.push_back(p);
            run(pos + 1, new_max);
            cache.pop_back();
        } else {
            // Try farthest-next-request victims first; good incumbents early
            // keep the bound tight.
            std::vector<std::pair<Round, int>> order;
            order.reserve(cache.size());
            for (int i = 0; i < static_cast<int>(cache.size()); ++i) {
                PageId q = cache[i];
                Round nq = kNever;
                // next occurrence of q after pos
                for (Round j = pos + 1; j < static_cast<Round>(seq.size()); ++j) {
                    if (seq[j] == q) { nq = j; break; }
                }
                order.emplace_back(nq == kNever ? kNever : nq, i);
            }
            std::sort(order.begin(), order.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            for (const auto& [unused, idx] : order) {
                (void)unused;
                PageId q = cache[idx];
                cache[idx] = p;
                evicted[pos] = q;
                run(pos + 1, new_max);
                evicted[pos] = 0;
                cache[idx] = q;
            }
        }
        counts[p] -= 1.0;
    }
};

} // namespace

OfflineSchedule brute_force_minmax_opt(const RequestTrace& trace, double search_cap) {
    trace.validate();
    Round T = trace.length();
    if (trace.k >= 2) {
        double branch_rounds = static_cast<double>(std::max<Round>(T - trace.k, 0));
        if (std::pow(static_cast<double>(trace.k), branch_rounds) > search_cap) {
            throw TraceError("instance too large for exhaustive min-max search");
        }
    }

    OfflineSchedule seed = greedy_lfd(trace);
    BruteSearch search{trace.requests, trace.k,
                       {}, std::vector<double>(trace.pages + 1, 0.0),
                       std::vector<PageId>(T, 0), seed.evicted, seed.minmax + 1.0};
    search.run(0, 0.0);

    // Replay the best schedule to recover exact counters.
    OfflineSchedule sched;
    sched.algorithm = "brute-force-minmax";
    sched.evicted = search.best_evicted;
    sched.costs = CostVector(trace.pages);
    std::vector<PageId> cache;
    for (Round pos = 0; pos < T; ++pos) {
        PageId p = trace.requests[pos];
        if (std::find(cache.begin(), cache.end(), p) != cache.end()) continue;
        sched.costs[p] += 1.0;
        PageId victim = sched.evicted[pos];
        if (victim != 0) {
            auto it = std::find(cache.begin(), cache.end(), victim);
            if (it == cache.end()) throw TraceError("corrupt brute-force schedule");
            *it = p;
        } else {
            cache.push_back(p);
        }
    }
    sched.minmax = minmax_cost(sched.costs);
    sched.total = l1_cost(sched.costs);
    return sched;
}

CostVector layered_offline_cost(const RequestTrace& trace, const LayeredMetadata& meta) {
    trace.validate();
    if (meta.phases.empty()) {
        throw TraceError("layered metadata has no phases; cannot reconstruct promotions");
    }
    if (meta.k < 2) throw TraceError("layered offline serving needs k >= 2");

    CostVector costs(trace.pages);
    for (const auto& ph : meta.phases) {
        if (ph.start < 1 || ph.end > trace.length() || ph.start > ph.end + 1) {
            throw TraceError("phase span outside trace");
        }
        // One fetch for the pinned page, which then stays for the phase.
        bool promoted_requested = false;
        std::vector<PageId> rest;
        rest.reserve(ph.end - ph.start + 1);
        for (Round t = ph.start; t <= ph.end; ++t) {
            PageId p = trace.requests[t - 1];
            if (p == ph.promoted) {
                promoted_requested = true;
            } else {
                rest.push_back(p);
            }
        }
        if (promoted_requested) costs[ph.promoted] += 1.0;
        if (rest.empty()) continue;
        CoreResult sub = run_offline(rest, meta.k - 1, trace.pages, EvictRule::GreedyLfd);
        for (int p = 1; p <= trace.pages; ++p) costs[p] += sub.costs[p];
    }
    return costs;
}

} // namespace mmp
