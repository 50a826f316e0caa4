#include "mmp/pd_policy.hpp"

#include <cmath>

namespace mmp {

SolverParams RoundedFractionalPolicy::streaming_params(int k, double q) {
    SolverParams params = default_params(k, q, 1);
    params.eps_start = 1e-12;
    params.max_step = 2e-2;
    params.rel_step = 5e-2;
    params.sum_floor = 1e-4;
    return params;
}

RoundedFractionalPolicy::RoundedFractionalPolicy(int pages_hint, int k)
    : pages_hint_(pages_hint) {
    if (pages_hint_ < 1) {
        throw TraceError("minmax-pd needs the page-universe size up front");
    }
    if (k > 0) init(k);
}

void RoundedFractionalPolicy::init(int k) {
    check_ready(k);
    k_ = k;
    double q = minmax_growth_exponent(pages_hint_);
    solver_ = std::make_unique<FracSolver>(k, q, streaming_params(k, q),
                                           FracSolver::Options{/*record=*/false});
    cache_.clear();
    fault_counts_.clear();
}

ServeResult RoundedFractionalPolicy::serve(PageId p) {
    check_ready(k_);
    solver_->process(p);

    ServeResult res;
    if (cache_.count(p)) return res;
    res.fault = true;
    record_fault(p);
    cache_.insert(p);
    if (static_cast<int>(cache_.size()) > k_) {
        // A page with at most a 1 - 1/k fractional share must exist.
        const double thresh = 1.0 / static_cast<double>(k_);
        PageId victim = 0;
        double victim_x = -1.0;
        for (PageId q : cache_) {
            if (q == p) continue;
            double xq = solver_->page_fraction(q);
            if (xq >= thresh - 2e-9 &&
                (xq > victim_x || (xq == victim_x && (victim == 0 || q < victim)))) {
                victim = q;
                victim_x = xq;
            }
        }
        if (victim == 0) {
            throw SolverError("threshold rounding found no evictable page");
        }
        cache_.erase(victim);
        res.evicted = victim;
    }
    return res;
}

} // namespace mmp
