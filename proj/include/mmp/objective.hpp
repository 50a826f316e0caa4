#ifndef MMP_OBJECTIVE_HPP
#define MMP_OBJECTIVE_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mmp/trace.hpp"

namespace mmp {

// Convex objectives with q-bounded growth over the eviction variables:
// f(x) = sum_p (sum_j x_{p,j})^q, the q-th power of the l_q norm of the
// per-page eviction mass. q = 1 is the classic total-cost objective; the
// min-max objective is handled by q = log2(n) and taking the max for
// reporting.
class ConvexObjective {
public:
    enum class Kind { SumOfQPowers, Linear };

    // page_of[i] gives the owning page of coordinate i (0-based coordinates,
    // one per request, in round order).
    ConvexObjective(Kind kind, double q, std::vector<PageId> page_of, int pages);

    static ConvexObjective sum_of_q_powers(double q, std::vector<PageId> page_of, int pages);
    static ConvexObjective linear(std::vector<PageId> page_of, int pages);

    // Objective for a given trace; spec strings: "l1", "lq:<q>", "minmax".
    static ConvexObjective for_trace(const RequestIndex& index, const std::string& name);

    Kind kind() const { return kind_; }
    double q() const { return q_; }
    int pages() const { return pages_; }
    int coords() const { return static_cast<int>(page_of_.size()); }
    PageId page_of(int coord) const { return page_of_[coord]; }

    // sum_p S_p^q with S_p the page-p coordinate sum; throws on negative
    // coordinates.
    double eval(const std::vector<double>& x) const;

    // Coordinate (p,j) -> q * S_p^(q-1).
    std::vector<double> grad(const std::vector<double>& x) const;

    double page_gradient(double page_sum) const {
        if (kind_ == Kind::Linear || q_ == 1.0) return 1.0;
        return q_ * std::pow(page_sum, q_ - 1.0);
    }

    double page_value(double page_sum) const {
        if (kind_ == Kind::Linear || q_ == 1.0) return page_sum;
        return std::pow(page_sum, q_);
    }

    // Fenchel conjugate f*(w) = sup_{v >= 0} <w, v> - f(v). Closed form per
    // page: mass concentrates on the largest coefficient. Returns +inf when
    // the supremum diverges (q = 1 with some w > 1).
    double conjugate(const std::vector<double>& w) const;

    // Conjugate given the per-page maxima of w (0 for pages with all w <= 0).
    double conjugate_from_page_max(const std::vector<double>& page_max) const;

    double conjugate_1d(double v) const;  // single-coordinate conjugate term

    // <grad f(x), x> <= q f(x) within relative tolerance (equality for this
    // homogeneous family).
    bool growth_check(const std::vector<double>& x, double rel_tol = 1e-9) const;

    std::vector<double> page_sums(const std::vector<double>& x) const;

private:
    Kind kind_;
    double q_;
    std::vector<PageId> page_of_;
    int pages_;
};

// Parameters tying the solver to the competitive-ratio proof:
//   delta = (2 q ln(k+1))^(1-q), r = delta / ln(k+1).
struct SolverParams {
    double r = 1.0;
    double delta = 1.0;
    double eps_start = 1e-9;   // per-coordinate starting mass
    double eps_feas = 1e-9;    // relative feasibility slack per row
    double max_step = 1e-3;    // absolute per-coordinate x growth per step
    // Integrator refinements (not part of the proof constants): cap on the
    // relative page-sum growth per step, waived below sum_floor where the
    // objective contribution is negligible.
    double rel_step = 2e-3;
    double sum_floor = 1e-6;
};

SolverParams default_params(int k, double q, Round trace_length);

// q used by the "minmax" objective: log2(n), floored at 1.
double minmax_growth_exponent(int pages);

} // namespace mmp

#endif
