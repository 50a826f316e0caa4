#ifndef MMP_TRACE_HPP
#define MMP_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmp {

using PageId = int;   // 1-based dense page ids
using Round = std::int64_t;  // 1-based request positions

class TraceError : public std::runtime_error {
public:
    explicit TraceError(const std::string& what) : std::runtime_error(what) {}
};

// A request sequence together with the cache capacity k and the size n of
// the page universe. Immutable after construction.
struct RequestTrace {
    int k = 1;
    int pages = 0;                 // universe size n
    std::vector<PageId> requests;  // length T, ids in [1, pages]

    Round length() const { return static_cast<Round>(requests.size()); }

    // Validates invariants; throws TraceError on violation.
    void validate() const;

    // Builds a trace from an arbitrary id sequence, remapping sparse ids to a
    // dense 1..n range (first-appearance order).
    static RequestTrace from_requests(int k, const std::vector<PageId>& ids);
};

// Derived per-trace lookup structure:
//   r(p,t)  number of requests to p in rounds 1..t
//   t(p,j)  round of the j-th request to p
//   B(t)    set of distinct pages seen through round t
// Storage is O(T): per-page occurrence lists plus per-round running values.
class RequestIndex {
public:
    explicit RequestIndex(const RequestTrace& trace);

    int k() const { return k_; }
    int pages() const { return n_; }
    Round length() const { return T_; }
    PageId page_at(Round t) const { return requested_[t - 1]; }

    // r(p,t); zero when p has not been requested by round t.
    int request_count(PageId p, Round t) const;

    // t(p,j); throws std::out_of_range when j exceeds r(p,T).
    Round request_round(PageId p, int j) const;

    int total_requests(PageId p) const {
        return static_cast<int>(occurrences_[p].size());
    }

    // |B(t)|
    int distinct_by(Round t) const { return distinct_by_[t]; }
    int distinct_total() const { return distinct_by_[T_]; }

    // Pages of B(t) in first-appearance order (prefix of appearance_order()).
    const std::vector<PageId>& appearance_order() const { return appearance_; }

    // Round of p's first request, or 0 if never requested.
    Round first_request(PageId p) const { return first_seen_[p]; }

    // Next request to p strictly after round t; 0 when none remains.
    Round next_request_after(PageId p, Round t) const;

    const std::vector<Round>& occurrences(PageId p) const {
        return occurrences_[p];
    }

private:
    int k_ = 0;
    int n_ = 0;
    Round T_ = 0;
    std::vector<PageId> requested_;              // by round
    std::vector<int> distinct_by_;               // |B(t)|, index 0..T
    std::vector<Round> first_seen_;              // by page
    std::vector<std::vector<Round>> occurrences_;  // by page, sorted rounds
    std::vector<int> count_at_;                  // r(p_t, t) per round
    std::vector<PageId> appearance_;
};

RequestIndex build_request_index(const RequestTrace& trace);

// One row of the implicit constraint matrix: sum over the active variables
// (p, r(p,t)) for p in B(t) \ {p_t} must reach |B(t)| - k. The rhs can be
// non-positive during warm-up; such rows are vacuous but keep numbering
// aligned with the rounds.
struct ConstraintRowView {
    Round t = 0;
    PageId requested = 0;
    std::vector<std::pair<PageId, int>> active;  // (p, r(p,t))
    int rhs = 0;
};

ConstraintRowView constraint_row(const RequestIndex& index, Round t);

// Per-page fault counters; integral runs hold exact integers, fractional
// runs hold eviction mass.
struct CostVector {
    std::vector<double> faults;  // index 0 unused, pages 1..n

    explicit CostVector(int pages = 0) : faults(pages + 1, 0.0) {}

    int pages() const { return static_cast<int>(faults.size()) - 1; }
    double& operator[](PageId p) { return faults[p]; }
    double operator[](PageId p) const { return faults[p]; }
};

double minmax_cost(const CostVector& cv);
double l1_cost(const CostVector& cv);
double lq_cost(const CostVector& cv, double q);

// Trace file format, line oriented:
//   paging-trace v1 k=<int> n=<int>
//   <page id per non-empty line>
void save_trace(const RequestTrace& trace, std::ostream& out);
void save_trace_file(const RequestTrace& trace, const std::string& path);
RequestTrace load_trace(std::istream& in);
RequestTrace load_trace_file(const std::string& path);

} // namespace mmp

#endif
