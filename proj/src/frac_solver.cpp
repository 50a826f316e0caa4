#include "mmp/frac_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mmp {

namespace {

double ratio_bound(double q, int k) {
    return std::pow(2.0 * q * std::log(static_cast<double>(k) + 1.0), q);
}

std::string coord_name(PageId p, int j) {
    return "(p=" + std::to_string(p) + ",j=" + std::to_string(j) + ")";
}

} // namespace

FracSolver::FracSolver(int k, double q, SolverParams params, Options options)
    : k_(k), q_(q), params_(params), options_(options) {
    if (k_ < 1) throw SolverError("cache capacity must be >= 1");
    if (q_ < 1.0) throw SolverError("growth exponent must be >= 1");
    if (params_.r <= 0.0) throw SolverError("dual rate r must be positive");
    if (options_.record) {
        y_.push_back(0.0);
        tau_rounds_.push_back(0.0);
        rhs_.push_back(0);
    }
}

double FracSolver::gradient(double sum) const {
    if (q_ == 1.0) return 1.0;
    return q_ * std::pow(sum, q_ - 1.0);
}

void FracSolver::ensure_page(PageId p) {
    if (p < 1) throw SolverError("page ids are 1-based");
    if (p >= static_cast<PageId>(page_.size())) {
        page_.resize(p + 1);
    }
}

void FracSolver::unsat_add(PageId p) {
    PageState& ps = page_[p];
    if (ps.unsat_pos >= 0) return;
    ps.unsat_pos = static_cast<int>(unsat_.size());
    unsat_.push_back(p);
}

void FracSolver::unsat_remove(PageId p) {
    PageState& ps = page_[p];
    if (ps.unsat_pos < 0) return;
    PageId moved = unsat_.back();
    unsat_[ps.unsat_pos] = moved;
    page_[moved].unsat_pos = ps.unsat_pos;
    unsat_.pop_back();
    ps.unsat_pos = -1;
}

void FracSolver::close_column(PageId p) {
    PageState& ps = page_[p];
    if (ps.j == 0) return;
    double z = ps.saturated ? params_.r * (tau_ - ps.tau_sat) : 0.0;
    if (options_.record) {
        ColumnRecord& rec = columns_[ps.opened - 1];
        rec.close = t_ - 1;
        rec.x = ps.x;
        rec.z = z;
        rec.tau_sat = ps.tau_sat;
    }
    total_cur_x_ -= ps.x;
    if (ps.saturated) {
        --sat_count_;
        ps.saturated = false;
    }
    ps.tau_sat = -1.0;
}

void FracSolver::seed_coordinate(PageId p) {
    PageState& ps = page_[p];
    ps.j += 1;
    ps.opened = t_;
    ps.x = params_.eps_start;
    ps.sum += params_.eps_start;
    total_cur_x_ += ps.x;
    unsat_add(p);
    if (options_.record) {
        ColumnRecord rec;
        rec.page = p;
        rec.j = ps.j;
        rec.open = t_;
        columns_.push_back(rec);
    }
}

void FracSolver::process(PageId p) {
    if (finished_) throw SolverError("solver already finished");
    ensure_page(p);
    ++t_;
    PageState& ps = page_[p];

    double seed_df = 0.0;
    double sum_before_seed = ps.sum;
    if (!ps.in_b) {
        ps.in_b = true;
        ++b_size_;
    } else {
        close_column(p);
    }
    seed_coordinate(p);
    if (options_.record && q_ != 1.0) {
        seed_df = std::pow(ps.sum, q_) - std::pow(sum_before_seed, q_);
    } else if (options_.record) {
        seed_df = params_.eps_start;
    }

    int rhs = b_size_ - k_;
    if (options_.record) {
        rhs_.push_back(rhs);
        round_seed_df_.push_back(seed_df);
        trajectory_.emplace_back();
        trajectory_.back().fractions.emplace_back(p, ps.x);
        touched_list_.clear();
    }

    grow_round(p, rhs);

    if (options_.record) {
        double df = 0.0;
        for (PageId tp : touched_list_) {
            PageState& tps = page_[tp];
            df += (q_ == 1.0)
                      ? (tps.sum - tps.sum_at_touch)
                      : (std::pow(tps.sum, q_) - std::pow(tps.sum_at_touch, q_));
            trajectory_.back().fractions.emplace_back(tp, tps.x);
        }
        round_df_.push_back(df);
        tau_rounds_.push_back(tau_);
    }

    // Guard the running active-mass accumulator against drift on long runs.
    if ((t_ & 0xfff) == 0) {
        double total = 0.0;
        for (PageId id = 1; id < static_cast<PageId>(page_.size()); ++id) {
            if (page_[id].in_b) total += page_[id].x;
        }
        total_cur_x_ = total;
    }
}

void FracSolver::grow_round(PageId requested, int rhs) {
    const double land_tol = 1e-12 * std::max(1.0, static_cast<double>(std::max(rhs, 1)));
    double y_round = 0.0;
    double dz_round = 0.0;
    const double inv_k = 1.0 / static_cast<double>(k_);

    while (true) {
        double active_sum = total_cur_x_ - page_[requested].x;
        double gap = static_cast<double>(rhs) - active_sum;
        if (gap <= land_tol) break;

        // Snapshot the unsaturated active coordinates with their frozen
        // growth coefficients; saturated actives contribute through
        // active_sum already.
        scratch_p_.clear();
        scratch_s_.clear();
        double h0 = 0.0;
        double dt_cap = std::numeric_limits<double>::infinity();
        for (PageId p : unsat_) {
            if (p == requested) continue;
            PageState& ps = page_[p];
            double grad = gradient(ps.sum);
            if (!std::isfinite(grad) || grad <= 0.0) {
                throw SolverError("non-finite gradient for page " + std::to_string(p) +
                                  " at round " + std::to_string(t_));
            }
            double s = 1.0 / grad;
            scratch_p_.push_back(p);
            scratch_s_.push_back(s);
            h0 += ps.x + inv_k;
            double cap = std::min(params_.max_step, 1.0 - ps.x);
            if (ps.sum >= params_.sum_floor) {
                cap = std::min(cap, params_.rel_step * ps.sum);
            }
            cap = std::max(cap, 1e-18);
            dt_cap = std::min(dt_cap, std::log1p(cap / (ps.x + inv_k)) / s);
            if (options_.record && ps.touched != t_) {
                ps.touched = t_;
                ps.sum_at_touch = ps.sum;
                touched_list_.push_back(p);
            }
        }
        if (scratch_p_.empty()) {
            throw SolverError("infeasible row: rhs exceeds active variables at round " +
                              std::to_string(t_));
        }
        const double h_target = h0 + gap;

        auto h_at = [&](double dt) {
            double h = 0.0;
            for (size_t i = 0; i < scratch_p_.size(); ++i) {
                h += (page_[scratch_p_[i]].x + inv_k) * std::exp(scratch_s_[i] * dt);
            }
            return h;
        };

        double dt = dt_cap;
        double h_cap = h_at(dt_cap);
        if (h_cap >= h_target) {
            // The row lands inside this step: safeguarded Newton on the
            // convex landing equation H(dt) = h0 + gap.
            double lo = 0.0, hi = dt_cap, h_lo = h0;
            double chosen = -1.0;
            for (int iter = 0; iter < 200; ++iter) {
                if (h_target - h_lo <= 0.5 * land_tol) {
                    chosen = lo;
                    break;
                }
                double hp = 0.0;
                for (size_t i = 0; i < scratch_p_.size(); ++i) {
                    double s = scratch_s_[i];
                    hp += s * (page_[scratch_p_[i]].x + inv_k) * std::exp(s * lo);
                }
                double step = lo + (h_target - h_lo) / hp;
                if (!(step > lo) || step >= hi) step = 0.5 * (lo + hi);
                double h_step = h_at(step);
                if (h_step < h_target) {
                    lo = step;
                    h_lo = h_step;
                } else {
                    hi = step;
                }
                if (hi - lo <= 1e-15 * std::max(hi, 1e-300)) {
                    chosen = hi;
                    break;
                }
            }
            dt = chosen >= 0.0 ? chosen : hi;
        }

        if (!(dt > 0.0) || !std::isfinite(dt)) {
            throw SolverError("degenerate step at round " + std::to_string(t_));
        }

        int sat_before = sat_count_;
        for (size_t i = 0; i < scratch_p_.size(); ++i) {
            PageId p = scratch_p_[i];
            PageState& ps = page_[p];
            double growth = (ps.x + inv_k) * std::expm1(scratch_s_[i] * dt);
            double nx = ps.x + growth;
            if (nx >= 1.0 - 1e-13) nx = 1.0;
            double delta = nx - ps.x;
            ps.x = nx;
            ps.sum += delta;
            total_cur_x_ += delta;
            if (nx >= 1.0) {
                ps.saturated = true;
                ps.tau_sat = tau_ + dt;
                ++sat_count_;
                unsat_remove(p);
            }
        }
        tau_ += dt;
        y_round += params_.r * dt;
        dz_round += params_.r * dt * sat_before;
    }

    if (options_.record) {
        y_.push_back(y_round);
        round_dz_.push_back(dz_round);
    }
}

void FracSolver::finish() {
    if (finished_) return;
    finished_ = true;
    ++t_;  // close_column records close = t_ - 1 = T
    for (PageId p = 1; p < static_cast<PageId>(page_.size()); ++p) {
        if (page_[p].in_b) close_column(p);
    }
    --t_;
}

bool FracSolver::seen(PageId p) const {
    return p >= 1 && p < static_cast<PageId>(page_.size()) && page_[p].in_b;
}

double FracSolver::page_fraction(PageId p) const {
    return seen(p) ? page_[p].x : 0.0;
}

double FracSolver::page_mass(PageId p) const {
    return seen(p) ? page_[p].sum : 0.0;
}

CostVector FracSolver::fractional_cost(int pages) const {
    CostVector cv(pages);
    for (PageId p = 1; p <= pages && p < static_cast<PageId>(page_.size()); ++p) {
        if (page_[p].in_b) cv[p] = page_[p].sum;
    }
    return cv;
}

FractionalState FracSolver::take_state() {
    if (!finished_) throw SolverError("take_state before finish");
    FractionalState st;
    st.k = k_;
    st.q = q_;
    st.pages = static_cast<int>(page_.size()) - 1;
    st.rounds = t_;
    st.params = params_;
    st.tau_final = tau_;
    st.y = std::move(y_);
    st.tau_of_round = std::move(tau_rounds_);
    st.rhs = std::move(rhs_);
    st.columns = std::move(columns_);
    st.trajectory = std::move(trajectory_);
    st.round_df = std::move(round_df_);
    st.round_seed_df = std::move(round_seed_df_);
    st.round_dz = std::move(round_dz_);
    st.page_sum.assign(st.pages + 1, 0.0);
    st.s_min.assign(st.pages + 1, 0.0);
    for (PageId p = 1; p <= st.pages; ++p) {
        if (!page_[p].in_b) continue;
        st.page_sum[p] = page_[p].sum;
        st.s_min[p] = 1.0 / gradient(page_[p].sum);
    }
    return st;
}

FracRun run_fractional(const RequestTrace& trace, const ConvexObjective& obj,
                       const SolverParams& params) {
    trace.validate();
    FracSolver solver(trace.k, obj.q(), params, {/*record=*/true});
    for (PageId p : trace.requests) solver.process(p);
    solver.finish();
    FracRun run;
    run.cost = solver.fractional_cost(trace.pages);
    run.state = solver.take_state();
    run.certificate = dual_objective(run.state, obj);
    return run;
}

DualCertificate dual_objective(const FractionalState& state, const ConvexObjective& obj) {
    DualCertificate cert;
    cert.bound = ratio_bound(state.q, state.k);

    for (PageId p = 1; p <= state.pages; ++p) {
        cert.primal += obj.page_value(state.page_sum[p]);
    }

    std::vector<double> cum(state.rounds + 1, 0.0);
    for (Round t = 1; t <= state.rounds; ++t) cum[t] = cum[t - 1] + state.y[t];

    double z_total = 0.0;
    std::vector<double> page_max(state.pages + 1, 0.0);
    for (const auto& col : state.columns) {
        z_total += col.z;
        double w = cum[col.close] - cum[col.open] - col.z;
        page_max[col.page] = std::max(page_max[col.page], w);
    }
    double linear = 0.0;
    for (Round t = 1; t <= state.rounds; ++t) {
        linear += static_cast<double>(state.rhs[t]) * state.y[t];
    }
    cert.dual_linear = linear - z_total;
    cert.dual_conjugate = obj.conjugate_from_page_max(page_max);
    cert.dual_finite = std::isfinite(cert.dual_conjugate);
    cert.dual = cert.dual_linear - cert.dual_conjugate;
    cert.ratio = cert.dual > 0.0 ? cert.primal / cert.dual
                                 : std::numeric_limits<double>::infinity();
    return cert;
}

CheckReport verify_x_lower_bound(const FractionalState& state, double tol) {
    CheckReport report;
    report.name = "x-lower-bound";
    std::vector<double> cum(state.rounds + 1, 0.0);
    for (Round t = 1; t <= state.rounds; ++t) cum[t] = cum[t - 1] + state.y[t];
    double r = state.params.r;
    for (const auto& col : state.columns) {
        double w = cum[col.close] - cum[col.open] - col.z;
        double s_min = state.s_min[col.page];
        double arg = std::min(s_min * w / r, 700.0);
        double required = (std::exp(arg) - 1.0) / static_cast<double>(state.k);
        double margin = col.x - required + tol;
        report.record(margin >= 0.0, col.x - required,
                      coord_name(col.page, col.j) + " x=" + std::to_string(col.x) +
                          " required=" + std::to_string(required));
    }
    return report;
}

CheckReport dual_slack_check(const FractionalState& state, double tol) {
    CheckReport report;
    report.name = "dual-slack";
    std::vector<double> cum(state.rounds + 1, 0.0);
    for (Round t = 1; t <= state.rounds; ++t) cum[t] = cum[t - 1] + state.y[t];
    double r = state.params.r;
    double lk = std::log(static_cast<double>(state.k) + 1.0);
    for (const auto& col : state.columns) {
        double w = cum[col.close] - cum[col.open] - col.z;
        double cap = (r / state.s_min[col.page]) * lk;
        double margin = cap - w;
        report.record(margin + tol >= 0.0, margin,
                      coord_name(col.page, col.j) + " slack=" + std::to_string(w) +
                          " cap=" + std::to_string(cap));
    }
    return report;
}

CheckReport feasibility_check(const FractionalState& state, const RequestIndex& index) {
    CheckReport report;
    report.name = "feasibility";
    std::vector<double> cur(state.pages + 1, 0.0);
    double total = 0.0;
    for (Round t = 1; t <= state.rounds; ++t) {
        const auto& changes = state.trajectory[t - 1].fractions;
        PageId requested = index.page_at(t);
        for (const auto& [p, x] : changes) {
            total += x - cur[p];
            cur[p] = x;
        }
        double active = total - cur[requested];
        double rhs = static_cast<double>(state.rhs[t]);
        double slack = std::max(state.params.eps_feas * std::max(rhs, 1.0), 1e-12);
        double margin = active - rhs;
        report.record(margin + slack >= 0.0, margin,
                      "round " + std::to_string(t) + " active=" + std::to_string(active) +
                          " rhs=" + std::to_string(rhs));
    }
    return report;
}

CheckReport per_round_rate_check(const FractionalState& state, double rel_tol) {
    CheckReport report;
    report.name = "per-round-rate";
    double two_over_r = 2.0 / state.params.r;
    double df_total = 0.0, dual_total = 0.0;
    for (Round t = 1; t <= state.rounds; ++t) {
        double df = state.round_df[t - 1];
        double dlin = static_cast<double>(state.rhs[t]) * state.y[t] - state.round_dz[t - 1];
        double allowance = two_over_r * dlin;
        double tol = rel_tol * std::max(1.0, std::abs(df));
        report.record(df <= allowance + tol, allowance - df, "round " + std::to_string(t));
        df_total += df;
        dual_total += dlin;
    }
    double tol = rel_tol * std::max(1.0, df_total);
    report.record(df_total <= two_over_r * dual_total + tol,
                  two_over_r * dual_total - df_total, "aggregate");
    return report;
}

void dump_fractional(const FractionalState& state, std::ostream& out) {
    std::vector<int> req_count(state.pages + 1, 0);
    char buf[64];
    for (Round t = 1; t <= state.rounds; ++t) {
        out << "t " << t;
        const auto& changes = state.trajectory[t - 1].fractions;
        bool first = true;
        for (const auto& [p, x] : changes) {
            int j;
            if (first) {
                // Leading entry is the reseeded requested page.
                j = ++req_count[p];
                first = false;
            } else {
                j = req_count[p];
            }
            std::snprintf(buf, sizeof(buf), "%.17g", x);
            out << " p=" << p << " j=" << j << " x=" << buf;
        }
        out << "\n";
    }
}

void save_fractional_dump(const FractionalState& state, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot open " + path + " for writing");
    dump_fractional(state, out);
}

using nlohmann::json;

std::string certificate_json(const FractionalState& state, const DualCertificate& cert) {
    json j;
    j["primal"] = cert.primal;
    j["dual_linear"] = cert.dual_linear;
    j["dual_conjugate"] = cert.dual_conjugate;
    j["dual"] = cert.dual;
    j["ratio"] = cert.ratio;
    j["bound"] = cert.bound;
    j["params"] = {{"r", state.params.r},       {"delta", state.params.delta},
                   {"eps_start", state.params.eps_start}, {"eps_feas", state.params.eps_feas},
                   {"max_step", state.params.max_step},   {"q", state.q},
                   {"k", state.k},              {"pages", state.pages},
                   {"rounds", state.rounds}};
    j["y"] = state.y;
    j["tau"] = state.tau_of_round;
    j["rhs"] = state.rhs;
    j["round_dz"] = state.round_dz;
    json cols;
    cols["page"] = json::array();
    cols["j"] = json::array();
    cols["open"] = json::array();
    cols["close"] = json::array();
    cols["x"] = json::array();
    cols["z"] = json::array();
    for (const auto& col : state.columns) {
        cols["page"].push_back(col.page);
        cols["j"].push_back(col.j);
        cols["open"].push_back(col.open);
        cols["close"].push_back(col.close);
        cols["x"].push_back(col.x);
        cols["z"].push_back(col.z);
    }
    j["columns"] = std::move(cols);
    j["s_min"] = state.s_min;
    j["page_sum"] = state.page_sum;
    return j.dump();
}

LoadedCertificate load_certificate_json(const std::string& text) {
    json j = json::parse(text);
    LoadedCertificate loaded;
    loaded.cert.primal = j.at("primal").get<double>();
    loaded.cert.dual_linear = j.at("dual_linear").get<double>();
    loaded.cert.dual_conjugate = j.at("dual_conjugate").get<double>();
    loaded.cert.dual = j.at("dual").get<double>();
    loaded.cert.ratio = j.at("ratio").get<double>();
    loaded.cert.bound = j.at("bound").get<double>();

    FractionalState& st = loaded.state;
    const auto& pj = j.at("params");
    st.params.r = pj.at("r").get<double>();
    st.params.delta = pj.at("delta").get<double>();
    st.params.eps_start = pj.at("eps_start").get<double>();
    st.params.eps_feas = pj.at("eps_feas").get<double>();
    st.params.max_step = pj.at("max_step").get<double>();
    st.q = pj.at("q").get<double>();
    st.k = pj.at("k").get<int>();
    st.pages = pj.at("pages").get<int>();
    st.rounds = pj.at("rounds").get<Round>();
    st.y = j.at("y").get<std::vector<double>>();
    st.tau_of_round = j.at("tau").get<std::vector<double>>();
    st.rhs = j.at("rhs").get<std::vector<int>>();
    st.round_dz = j.at("round_dz").get<std::vector<double>>();
    st.s_min = j.at("s_min").get<std::vector<double>>();
    st.page_sum = j.at("page_sum").get<std::vector<double>>();
    const auto& cols = j.at("columns");
    auto pages = cols.at("page").get<std::vector<PageId>>();
    auto js = cols.at("j").get<std::vector<int>>();
    auto opens = cols.at("open").get<std::vector<Round>>();
    auto closes = cols.at("close").get<std::vector<Round>>();
    auto xs = cols.at("x").get<std::vector<double>>();
    auto zs = cols.at("z").get<std::vector<double>>();
    for (size_t i = 0; i < pages.size(); ++i) {
        ColumnRecord col;
        col.page = pages[i];
        col.j = js[i];
        col.open = opens[i];
        col.close = closes[i];
        col.x = xs[i];
        col.z = zs[i];
        st.columns.push_back(col);
    }
    return loaded;
}

namespace {

// Rebuilds trajectory and per-round primal growth from a dump.
struct DumpReplay {
    std::vector<RoundChange> trajectory;
    std::vector<double> round_df;
    std::vector<double> round_seed_df;
    std::vector<double> final_x;  // by column order (round order)
};

DumpReplay replay_dump(const std::string& text, int pages, double q) {
    DumpReplay replay;
    std::istringstream in(text);
    std::string line;
    std::vector<double> cur(pages + 1, 0.0);
    std::vector<double> sum(pages + 1, 0.0);
    std::vector<int> jcount(pages + 1, 0);

    auto page_value = [&](double s) { return q == 1.0 ? s : std::pow(s, q); };

    Round t = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        Round round_no;
        ls >> tag >> round_no;
        if (tag != "t") throw SolverError("bad dump line: " + line);
        ++t;
        if (round_no != t) throw SolverError("dump rounds out of order at " + line);
        replay.trajectory.emplace_back();
        double df = 0.0, seed_df = 0.0;
        bool first = true;
        std::string field;
        PageId p = 0;
        int jv = 0;
        while (ls >> field) {
            if (field.rfind("p=", 0) == 0) {
                p = std::stoi(field.substr(2));
            } else if (field.rfind("j=", 0) == 0) {
                jv = std::stoi(field.substr(2));
            } else if (field.rfind("x=", 0) == 0) {
                double x = std::stod(field.substr(2));
                if (p < 1 || p > pages) throw SolverError("dump page out of range: " + line);
                if (first) {
                    // reseeded coordinate of the requested page
                    if (jv != jcount[p] + 1) {
                        throw SolverError("dump request index mismatch at " + line);
                    }
                    jcount[p] = jv;
                    seed_df += page_value(sum[p] + x) - page_value(sum[p]);
                    sum[p] += x;
                    cur[p] = x;
                    first = false;
                } else {
                    if (jv != jcount[p]) throw SolverError("dump index mismatch at " + line);
                    df += page_value(sum[p] + x - cur[p]) - page_value(sum[p]);
                    sum[p] += x - cur[p];
                    cur[p] = x;
                }
                replay.trajectory.back().fractions.emplace_back(p, x);
            }
        }
        replay.round_df.push_back(df);
        replay.round_seed_df.push_back(seed_df);
    }
    // Final per-column values: replay once more tracking coordinate values.
    std::vector<double> final_by_open(replay.trajectory.size(), 0.0);
    std::vector<int> open_of_page(pages + 1, -1);
    for (Round tt = 1; tt <= static_cast<Round>(replay.trajectory.size()); ++tt) {
        const auto& ch = replay.trajectory[tt - 1].fractions;
        for (size_t i = 0; i < ch.size(); ++i) {
            PageId pp = ch[i].first;
            if (i == 0) open_of_page[pp] = static_cast<int>(tt - 1);
            final_by_open[open_of_page[pp]] = ch[i].second;
        }
    }
    replay.final_x = std::move(final_by_open);
    return replay;
}

} // namespace

CertifyResult certify(const RequestTrace& trace, const ConvexObjective& obj,
                      const std::string& dump_text, const std::string& cert_text) {
    CertifyResult result;
    RequestIndex index(trace);
    LoadedCertificate loaded = load_certificate_json(cert_text);
    FractionalState st = std::move(loaded.state);

    DumpReplay replay = replay_dump(dump_text, st.pages, st.q);
    if (static_cast<Round>(replay.trajectory.size()) != st.rounds ||
        st.rounds != trace.length() ||
        st.columns.size() != static_cast<size_t>(st.rounds)) {
        throw SolverError("dump / certificate / trace round counts disagree");
    }
    st.trajectory = std::move(replay.trajectory);
    st.round_df = std::move(replay.round_df);
    st.round_seed_df = std::move(replay.round_seed_df);

    // Dump and certificate must describe the same solution.
    CheckReport consistency;
    consistency.name = "dump-consistency";
    for (size_t i = 0; i < st.columns.size(); ++i) {
        double diff = std::abs(st.columns[i].x - replay.final_x[i]);
        consistency.record(diff <= 1e-9, -diff,
                           "column " + std::to_string(i) + " x mismatch");
    }
    result.reports.push_back(std::move(consistency));

    result.reports.push_back(feasibility_check(st, index));
    result.reports.push_back(dual_slack_check(st, 1e-6));
    result.reports.push_back(verify_x_lower_bound(st, 1e-6 * st.k));
    result.reports.push_back(per_round_rate_check(st));

    // Weak duality, recomputed from the arrays rather than trusted.
    DualCertificate recomputed = dual_objective(st, obj);
    CheckReport weak;
    weak.name = "weak-duality";
    bool finite = recomputed.dual_finite;
    double margin = recomputed.primal - recomputed.dual;
    weak.record(!finite || margin >= -1e-9 * std::max(1.0, recomputed.primal), margin,
                "primal=" + std::to_string(recomputed.primal) +
                    " dual=" + std::to_string(recomputed.dual));
    double drift = std::abs(recomputed.dual - loaded.cert.dual);
    weak.record(drift <= 1e-6 * std::max(1.0, std::abs(recomputed.dual)), -drift,
                "stated dual differs from recomputed dual");
    result.reports.push_back(std::move(weak));

    for (const auto& rep : result.reports) result.pass = result.pass && rep.pass;
    return result;
}

} // namespace mmp
