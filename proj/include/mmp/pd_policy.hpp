#ifndef MMP_PD_POLICY_HPP
#define MMP_PD_POLICY_HPP

#include <memory>

#include "mmp/frac_solver.hpp"
#include "mmp/policy.hpp"

namespace mmp {

// Online min-max paging via the primal-dual fractional solver plus
// k-threshold rounding, applied round by round as requests arrive. The
// growth exponent is log2 of the page-universe size, which the caller must
// supply (an online algorithm cannot see n in the trace it has not received
// yet, but it does know its universe).
class RoundedFractionalPolicy final : public OnlinePolicy {
public:
    explicit RoundedFractionalPolicy(int pages_hint, int k = 0);

    void init(int k) override;
    ServeResult serve(PageId p) override;
    const std::unordered_set<PageId>& cache() const override { return cache_; }
    std::string name() const override { return "minmax-pd"; }

    const FracSolver& solver() const { return *solver_; }
    double fractional_fraction(PageId p) const { return solver_->page_fraction(p); }

    // Streaming solver parameters: proof constants from default_params, with
    // a fixed epsilon seed (T is unknown online) and coarser step caps so
    // million-request traces stay cheap. Step size does not affect the
    // rounding invariant, only certificate resolution, which this policy
    // never emits.
    static SolverParams streaming_params(int k, double q);

private:
    int pages_hint_;
    int k_ = 0;
    std::unique_ptr<FracSolver> solver_;
    std::unordered_set<PageId> cache_;
};

} // namespace mmp

#endif
