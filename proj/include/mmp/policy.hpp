#ifndef MMP_POLICY_HPP
#define MMP_POLICY_HPP

#include <cstdint>
#include <list>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mmp/rng.hpp"
#include "mmp/trace.hpp"

namespace mmp {

struct ServeResult {
    bool fault = false;
    PageId evicted = 0;  // 0 = none
};

// Online eviction policy behind one inspectable interface. Policies are
// stateful and single-threaded; adaptive adversaries own their instance and
// read cache() and fault counters between requests.
class OnlinePolicy {
public:
    virtual ~OnlinePolicy() = default;

    virtual void init(int k) = 0;
    virtual ServeResult serve(PageId p) = 0;
    virtual const std::unordered_set<PageId>& cache() const = 0;
    virtual std::string name() const = 0;

    double faults_on(PageId p) const {
        auto it = fault_counts_.find(p);
        return it == fault_counts_.end() ? 0.0 : it->second;
    }

    const std::unordered_map<PageId, double>& fault_counts() const { return fault_counts_; }

    CostVector cost_vector(int pages) const {
        CostVector cv(pages);
        for (const auto& [p, c] : fault_counts_) {
            if (p >= 1 && p <= pages) cv[p] = c;
        }
        return cv;
    }

protected:
    void record_fault(PageId p) { fault_counts_[p] += 1.0; }
    void check_ready(int k) const {
        if (k < 1) throw TraceError("policy used before init");
    }

    std::unordered_map<PageId, double> fault_counts_;
};

class LruPolicy final : public OnlinePolicy {
public:
    explicit LruPolicy(int k = 0) { if (k > 0) init(k); }
    void init(int k) override;
    ServeResult serve(PageId p) override;
    const std::unordered_set<PageId>& cache() const override { return cache_; }
    std::string name() const override { return "lru"; }

private:
    int k_ = 0;
    std::unordered_set<PageId> cache_;
    std::list<PageId> order_;  // front = most recent
    std::unordered_map<PageId, std::list<PageId>::iterator> where_;
};

class FifoPolicy final : public OnlinePolicy {
public:
    explicit FifoPolicy(int k = 0) { if (k > 0) init(k); }
    void init(int k) override;
    ServeResult serve(PageId p) override;
    const std::unordered_set<PageId>& cache() const override { return cache_; }
    std::string name() const override { return "fifo"; }

private:
    int k_ = 0;
    std::unordered_set<PageId> cache_;
    std::list<PageId> queue_;  // front = oldest
};

// Randomized marking: evicts a uniformly random unmarked page, unmarking the
// whole cache when every page is marked.
class MarkingPolicy final : public OnlinePolicy {
public:
    explicit MarkingPolicy(std::uint64_t seed, int k = 0) : rng_(seed) { if (k > 0) init(k); }
    void init(int k) override;
    ServeResult serve(PageId p) override;
    const std::unordered_set<PageId>& cache() const override { return cache_; }
    std::string name() const override { return "marking"; }
    std::uint64_t seed() const { return rng_.seed(); }

private:
    int k_ = 0;
    Rng rng_;
    std::unordered_set<PageId> cache_;
    std::unordered_set<PageId> marked_;
};

// Greedily keeps the pages with the most faults: evicts the cached page with
// the fewest accumulated faults, ties broken least-recently-used, then by
// smallest id.
class GreedyMinFaultsPolicy final : public OnlinePolicy {
public:
    explicit GreedyMinFaultsPolicy(int k = 0) { if (k > 0) init(k); }
    void init(int k) override;
    ServeResult serve(PageId p) override;
    const std::unordered_set<PageId>& cache() const override { return cache_; }
    std::string name() const override { return "greedy-min-faults"; }

private:
    int k_ = 0;
    std::uint64_t clock_ = 0;
    std::unordered_set<PageId> cache_;
    std::unordered_map<PageId, std::uint64_t> last_used_;
};

// Factory for the spec'd selection strings: lru, fifo, marking:<seed>,
// greedy-min-faults, minmax-pd. pages_hint sizes the growth exponent of the
// primal-dual policy (an online algorithm cannot learn n ahead of time);
// the other policies ignore it.
std::unique_ptr<OnlinePolicy> make_policy(const std::string& spec, int k,
                                          int pages_hint = 0,
                                          std::uint64_t default_seed = 1);

// Replays a trace through a policy; returns fetch-model fault counters.
CostVector run_policy(OnlinePolicy& policy, const RequestTrace& trace);

} // namespace mmp

#endif
