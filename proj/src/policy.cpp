#include "mmp/policy.hpp"

#include <algorithm>

namespace mmp {

void LruPolicy::init(int k) {
    check_ready(k);
    k_ = k;
    cache_.clear();
    order_.clear();
    where_.clear();
    fault_counts_.clear();
}

ServeResult LruPolicy::serve(PageId p) {
    check_ready(k_);
    ServeResult res;
    auto hit = where_.find(p);
    if (hit != where_.end()) {
        order_.erase(hit->second);
        order_.push_front(p);
        hit->second = order_.begin();
        return res;
    }
    res.fault = true;
    record_fault(p);
    if (static_cast<int>(cache_.size()) == k_) {
        PageId victim = order_.back();
        order_.pop_back();
        where_.erase(victim);
        cache_.erase(victim);
        res.evicted = victim;
    }
    cache_.insert(p);
    order_.push_front(p);
    where_[p] = order_.begin();
    return res;
}

void FifoPolicy::init(int k) {
    check_ready(k);
    k_ = k;
    cache_.clear();
    queue_.clear();
    fault_counts_.clear();
}

ServeResult FifoPolicy::serve(PageId p) {
    check_ready(k_);
    ServeResult res;
    if (cache_.count(p)) return res;
    res.fault = true;
    record_fault(p);
    if (static_cast<int>(cache_.size()) == k_) {
        PageId victim = queue_.front();
        queue_.pop_front();
        cache_.erase(victim);
        res.evicted = victim;
    }
    cache_.insert(p);
    queue_.push_back(p);
    return res;
}

void MarkingPolicy::init(int k) {
    check_ready(k);
    k_ = k;
    cache_.clear();
    marked_.clear();
    fault_counts_.clear();
}

ServeResult MarkingPolicy::serve(PageId p) {
    check_ready(k_);
    ServeResult res;
    if (cache_.count(p)) {
        marked_.insert(p);
        return res;
    }
    res.fault = true;
    record_fault(p);
    if (static_cast<int>(cache_.size()) == k_) {
        if (marked_.size() == cache_.size()) marked_.clear();
        std::vector<PageId> unmarked;
        unmarked.reserve(cache_.size());
        for (PageId q : cache_) {
            if (!marked_.count(q)) unmarked.push_back(q);
        }
        std::sort(unmarked.begin(), unmarked.end());
        PageId victim = unmarked[static_cast<size_t>(
            rng_.uniform_int(0, static_cast<std::int64_t>(unmarked.size()) - 1))];
        cache_.erase(victim);
        marked_.erase(victim);
        res.evicted = victim;
    }
    cache_.insert(p);
    marked_.insert(p);
    return res;
}

void GreedyMinFaultsPolicy::init(int k) {
    check_ready(k);
    k_ = k;
    clock_ = 0;
    cache_.clear();
    last_used_.clear();
    fault_counts_.clear();
}

ServeResult GreedyMinFaultsPolicy::serve(PageId p) {
    check_ready(k_);
    ++clock_;
    ServeResult res;
    if (cache_.count(p)) {
        last_used_[p] = clock_;
        return res;
    }
    res.fault = true;
    record_fault(p);
    if (static_cast<int>(cache_.size()) == k_) {
        PageId victim = 0;
        for (PageId q : cache_) {
            if (victim == 0) {
                victim = q;
                continue;
            }
            double fq = faults_on(q), fv = faults_on(victim);
            if (fq < fv) {
                victim = q;
            } else if (fq == fv) {
                std::uint64_t uq = last_used_[q], uv = last_used_[victim];
                if (uq < uv || (uq == uv && q < victim)) victim = q;
            }
        }
        cache_.erase(victim);
        res.evicted = victim;
    }
    cache_.insert(p);
    last_used_[p] = clock_;
    return res;
}

CostVector run_policy(OnlinePolicy& policy, const RequestTrace& trace) {
    trace.validate();
    for (PageId p : trace.requests) policy.serve(p);
    return policy.cost_vector(trace.pages);
}

} // namespace mmp
