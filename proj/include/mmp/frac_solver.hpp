#ifndef MMP_FRAC_SOLVER_HPP
#define MMP_FRAC_SOLVER_HPP

#include <string>
#include <vector>

#include "mmp/objective.hpp"
#include "mmp/trace.hpp"

namespace mmp {

// One primal variable x_{p,j} together with its dual partner z_{p,j}.
// Coordinates are created one per round, so column i belongs to round i+1.
// The column of a variable covers rounds open+1 .. close; for the final
// request of a page the column runs through T.
struct ColumnRecord {
    PageId page = 0;
    int j = 0;
    Round open = 0;
    Round close = 0;
    double x = 0.0;
    double z = 0.0;
    double tau_sat = -1.0;  // clock when x reached 1, -1 if it never did
};

// Per-round trajectory entry: fractions after the round for every page whose
// current coordinate changed (including the reseeded requested page).
struct RoundChange {
    std::vector<std::pair<PageId, double>> fractions;
};

struct FractionalState {
    int k = 1;
    double q = 1.0;
    int pages = 0;
    Round rounds = 0;
    SolverParams params;
    double tau_final = 0.0;

    std::vector<double> y;             // y[t], 1-based, y[0] unused
    std::vector<double> tau_of_round;  // tau(t), tau_of_round[0] = 0
    std::vector<int> rhs;              // |B(t)| - k per round
    std::vector<ColumnRecord> columns; // one per coordinate, in round order
    std::vector<double> page_sum;      // final S_p per page
    std::vector<double> s_min;         // s'_p per page (minimum growth coefficient)
    std::vector<RoundChange> trajectory;
    std::vector<double> round_df;      // primal growth per round (excl. seeding)
    std::vector<double> round_seed_df; // primal change from epsilon seeding
    std::vector<double> round_dz;      // dual z mass accrued per round
};

struct DualCertificate {
    double primal = 0.0;
    double dual_linear = 0.0;
    double dual_conjugate = 0.0;
    double dual = 0.0;
    double ratio = 0.0;                // primal / dual, inf when dual <= 0
    double bound = 0.0;                // (2 q ln(k+1))^q
    bool dual_finite = true;
};

struct CheckReport {
    std::string name;
    bool pass = true;
    double worst_slack = 0.0;          // most negative margin observed
    long long checked = 0;
    std::vector<std::string> violations;  // first few, for diagnostics

    void record(bool ok, double margin, const std::string& what) {
        ++checked;
        worst_slack = std::min(worst_slack, margin);
        if (!ok) {
            pass = false;
            if (violations.size() < 8) violations.push_back(what);
        }
    }
};

class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Streaming engine for the primal-dual dynamics: per round, y_t grows at
// rate r while every active unsaturated x_{p,j} grows at rate
// s_{p,j}(tau) (x + 1/k) with s = 1/(df/dx), and z takes over at rate r once
// x is saturated, until the covering row is satisfied. Steps freeze s,
// apply the closed form x <- (x + 1/k) e^{s dtau} - 1/k, and are capped so
// no coordinate overshoots, drifts, or skips its saturation point; the final
// step solves for the exact landing.
class FracSolver {
public:
    struct Options {
        bool record = true;  // keep y/z/columns/trajectory for certificates
    };

    FracSolver(int k, double q, SolverParams params, Options options);
    FracSolver(int k, double q, SolverParams params)
        : FracSolver(k, q, params, Options{}) {}

    void process(PageId p);
    void finish();

    Round round() const { return t_; }
    int distinct() const { return b_size_; }
    double tau() const { return tau_; }

    // Live views for the online rounding adapter.
    bool seen(PageId p) const;
    double page_fraction(PageId p) const;  // current-coordinate x
    double page_mass(PageId p) const;      // S_p so far

    CostVector fractional_cost(int pages) const;
    FractionalState take_state();  // valid after finish()

private:
    struct PageState {
        double x = 0.0;
        double sum = 0.0;
        Round opened = 0;
        int j = 0;
        double tau_sat = -1.0;
        Round touched = -1;     // last round this page grew
        double sum_at_touch = 0.0;
        bool in_b = false;
        bool saturated = false;
        int unsat_pos = -1;
    };

    void ensure_page(PageId p);
    void close_column(PageId p);
    void seed_coordinate(PageId p);
    void unsat_add(PageId p);
    void unsat_remove(PageId p);
    void grow_round(PageId requested, int rhs);
    double gradient(double sum) const;

    int k_;
    double q_;
    SolverParams params_;
    Options options_;
    bool finished_ = false;

    Round t_ = 0;
    int b_size_ = 0;
    double tau_ = 0.0;
    double total_cur_x_ = 0.0;
    int sat_count_ = 0;

    std::vector<PageState> page_;
    std::vector<PageId> unsat_;

    // recording
    std::vector<double> y_;
    std::vector<double> tau_rounds_;
    std::vector<int> rhs_;
    std::vector<ColumnRecord> columns_;
    std::vector<RoundChange> trajectory_;
    std::vector<double> round_df_;
    std::vector<double> round_seed_df_;
    std::vector<double> round_dz_;
    std::vector<PageId> touched_list_;

    // per-step scratch (avoids reallocation in the hot loop)
    std::vector<PageId> scratch_p_;
    std::vector<double> scratch_s_;
};

struct FracRun {
    FractionalState state;
    CostVector cost;           // per-page eviction mass
    DualCertificate certificate;
};

// Full offline run over a trace: solves every round, closes the state and
// computes the duality certificate.
FracRun run_fractional(const RequestTrace& trace, const ConvexObjective& obj,
                       const SolverParams& params);

DualCertificate dual_objective(const FractionalState& state, const ConvexObjective& obj);

// x_{p,j} >= (1/k) (exp((s'/r)(sum y - z)) - 1) - tol  per column.
CheckReport verify_x_lower_bound(const FractionalState& state, double tol);

// (A^T y - z)_{p,j} <= (r / s'_{p,j}) ln(k+1) + tol  per column.
CheckReport dual_slack_check(const FractionalState& state, double tol);

// Per-round feasibility replayed from the trajectory.
CheckReport feasibility_check(const FractionalState& state, const RequestIndex& index);

// Per-round primal growth vs dual growth: df <= (2/r) (rhs y_t - dz) + tol.
CheckReport per_round_rate_check(const FractionalState& state, double rel_tol = 1e-6);

// Text dump, one line per round listing the coordinates that changed.
void dump_fractional(const FractionalState& state, std::ostream& out);
void save_fractional_dump(const FractionalState& state, const std::string& path);

// Certificate JSON with the summary keys plus the arrays needed to re-check
// a dump independently (y, tau, per-column z / x / s_min, params echo).
std::string certificate_json(const FractionalState& state, const DualCertificate& cert);

struct LoadedCertificate {
    DualCertificate cert;
    FractionalState state;  // rebuilt from arrays (no trajectory)
};
LoadedCertificate load_certificate_json(const std::string& text);

// Re-reads a dump + certificate pair and reruns every check against the
// given trace. Used by the certify command.
struct CertifyResult {
    std::vector<CheckReport> reports;
    bool pass = true;
};
CertifyResult certify(const RequestTrace& trace, const ConvexObjective& obj,
                      const std::string& dump_text, const std::string& cert_text);

} // namespace mmp

#endif
