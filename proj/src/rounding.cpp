#include "mmp/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace mmp {

namespace {

class RoundingError : public TraceError {
public:
    using TraceError::TraceError;
};

std::vector<PageId> sorted_cache(const std::set<PageId>& cache) {
    return std::vector<PageId>(cache.begin(), cache.end());
}

} // namespace

DetRoundResult round_deterministic(const FractionalState& state, const RequestIndex& index) {
    DetRoundResult result;
    result.run.algorithm = "round-deterministic";
    result.run.fetch_faults = CostVector(state.pages);
    result.threshold_invariant.name = "threshold-invariant";

    const int k = state.k;
    const double thresh = 1.0 / static_cast<double>(k);
    const double tol = 2.0 * state.params.eps_feas;

    std::vector<double> x(state.pages + 1, 0.0);
    std::vector<bool> seen(state.pages + 1, false);
    std::set<PageId> cache;

    for (Round t = 1; t <= state.rounds; ++t) {
        PageId pt = index.page_at(t);
        seen[pt] = true;
        for (const auto& [p, value] : state.trajectory[t - 1].fractions) x[p] = value;

        ScheduleStep step;
        if (!cache.count(pt)) {
            step.fault = true;
            result.run.fetch_faults[pt] += 1.0;
            cache.insert(pt);
            if (static_cast<int>(cache.size()) > k) {
                // Some cached page is at most 1 - 1/k inside the fractional
                // cache; evict the most-evicted one.
                PageId victim = 0;
                double victim_x = -1.0;
                for (PageId q : cache) {
                    if (q == pt) continue;
                    if (x[q] >= thresh - tol &&
                        (x[q] > victim_x || (x[q] == victim_x && q < victim))) {
                        victim = q;
                        victim_x = x[q];
                    }
                }
                if (victim == 0) {
                    throw RoundingError(
                        "no evictable page at round " + std::to_string(t) +
                        ": fractional slack too loose for threshold rounding");
                }
                cache.erase(victim);
                step.evicted = victim;
            }
        }

        // Invariant: every page held almost fully by the fractional cache is
        // in the integral cache, and there are at most k of them.
        int must_hold = 0;
        bool covered = true;
        for (PageId p = 1; p <= state.pages; ++p) {
            if (!seen[p]) continue;
            if (x[p] < thresh - tol) {
                ++must_hold;
                if (!cache.count(p)) covered = false;
            }
        }
        result.threshold_invariant.record(
            covered && must_hold <= k,
            static_cast<double>(k - must_hold),
            "round " + std::to_string(t) + " must-hold=" + std::to_string(must_hold) +
                (covered ? "" : " uncovered"));

        step.cache = sorted_cache(cache);
        result.run.max_cache_size =
            std::max(result.run.max_cache_size, static_cast<int>(cache.size()));
        result.run.schedule.push_back(std::move(step));
    }
    return result;
}

double default_beta(int pages, int k) {
    return 4.0 * std::log(static_cast<double>(pages) * static_cast<double>(k));
}

RandRoundResult round_randomized(const FractionalState& state, const RequestIndex& index,
                                 double beta, std::uint64_t seed) {
    RandRoundResult result;
    result.run.algorithm = "round-randomized";
    result.run.fetch_faults = CostVector(state.pages);
    result.run.seed = seed;
    result.window_evicted.assign(state.rounds, 0);

    Rng rng(seed);
    std::vector<double> y_prev(state.pages + 1, 0.0);
    std::vector<double> x(state.pages + 1, 0.0);
    std::vector<Round> window_of(state.pages + 1, 0);  // opening round of the
                                                       // current coordinate
    std::set<PageId> cache;

    for (Round t = 1; t <= state.rounds; ++t) {
        PageId pt = index.page_at(t);
        for (const auto& [p, value] : state.trajectory[t - 1].fractions) x[p] = value;
        // The requested page starts a fresh window: its scaled coordinate
        // resets along with the new variable.
        window_of[pt] = t;
        y_prev[pt] = std::min(beta * x[pt], 1.0);

        ScheduleStep step;
        step.fault = !cache.count(pt);
        if (step.fault) {
            result.run.fetch_faults[pt] += 1.0;
            cache.insert(pt);
        }

        // Probabilistic evictions (the per-page hazard of the scheme).
        std::vector<PageId> to_evict;
        for (PageId p : cache) {
            if (p == pt) continue;
            double y_now = std::min(beta * x[p], 1.0);
            double prev = y_prev[p];
            double hazard = 0.0;
            if (y_now > prev) {
                double denom = 1.0 - prev;
                if (denom <= 0.0) {
                    throw RoundingError("trajectory corruption: window already saturated");
                }
                hazard = (y_now - prev) / denom;
            }
            if (hazard < -1e-12 || hazard > 1.0 + 1e-12) {
                throw RoundingError("trajectory corruption: hazard outside [0,1]");
            }
            y_prev[p] = y_now;
            if (hazard > 0.0 && rng.bernoulli(std::min(hazard, 1.0))) {
                to_evict.push_back(p);
            }
        }
        for (PageId p : to_evict) {
            cache.erase(p);
            result.window_evicted[window_of[p] - 1] = 1;
        }

        // Reset rule: repair a size overflow by evicting the page with the
        // largest scaled coordinate, ties to the smallest id.
        if (static_cast<int>(cache.size()) > state.k) {
            PageId victim = 0;
            double best = -1.0;
            for (PageId q : cache) {
                if (q == pt) continue;
                double yq = std::min(beta * x[q], 1.0);
                if (yq > best) {
                    victim = q;
                    best = yq;
                }
            }
            cache.erase(victim);
            step.evicted = victim;
            ++result.run.resets;
        }

        result.run.max_cache_size =
            std::max(result.run.max_cache_size, static_cast<int>(cache.size()));
        step.cache = sorted_cache(cache);
        result.run.schedule.push_back(std::move(step));
    }
    return result;
}

std::vector<double> discretize_quarter_k(const std::vector<double>& x, int k) {
    if (k < 1) throw TraceError("k must be >= 1");
    std::vector<double> out(x.size());
    const double grid = 1.0 / (4.0 * k);
    const double low = 1.0 / (8.0 * k);
    const int max_units = 4 * k;
    for (size_t i = 0; i < x.size(); ++i) {
        double v = x[i];
        if (v < low) {
            out[i] = 0.0;
            continue;
        }
        // ceil with a hair of tolerance so grid-exact inputs stay put
        double scaled = 8.0 * k * v;
        long long units = static_cast<long long>(std::ceil(scaled - 1e-9));
        units = std::min<long long>(units, max_units);
        out[i] = static_cast<double>(units) * grid;
    }
    return out;
}

CheckReport solution_feasibility(const std::vector<double>& x, const RequestIndex& index,
                                 double tol) {
    CheckReport report;
    report.name = "solution-feasibility";
    if (static_cast<Round>(x.size()) != index.length()) {
        throw TraceError("solution has wrong coordinate count");
    }
    std::vector<double> cur(index.pages() + 1, 0.0);
    double total = 0.0;
    for (Round t = 1; t <= index.length(); ++t) {
        PageId pt = index.page_at(t);
        total += x[t - 1] - cur[pt];
        cur[pt] = x[t - 1];
        double active = total - cur[pt];
        double rhs = static_cast<double>(index.distinct_by(t) - index.k());
        report.record(active >= rhs - tol, active - rhs, "round " + std::to_string(t));
    }
    return report;
}

ConcentrationReport max_fault_concentration_check(
    const std::vector<std::vector<double>>& window_means, long long trials,
    std::uint64_t seed) {
    ConcentrationReport report;
    report.trials = trials;
    int n = static_cast<int>(window_means.size());
    double max_mean = 0.0;
    for (const auto& page : window_means) {
        double m = 0.0;
        for (double y : page) m += y;
        max_mean = std::max(max_mean, m);
    }
    report.bound = std::exp(1.0) * max_mean + std::log(std::max(1.0, static_cast<double>(n)));

    Rng rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (long long trial = 0; trial < trials; ++trial) {
        double max_page = 0.0;
        for (const auto& page : window_means) {
            double y = 0.0;
            for (double mean : page) {
                if (rng.bernoulli(mean)) y += 1.0;
            }
            max_page = std::max(max_page, y);
        }
        sum += max_page;
        sum_sq += max_page * max_page;
    }
    report.empirical_max_mean = sum / static_cast<double>(trials);
    double var = std::max(0.0, sum_sq / trials - report.empirical_max_mean * report.empirical_max_mean);
    report.slack = 3.0 * std::sqrt(var / static_cast<double>(trials));
    report.pass = report.empirical_max_mean <= report.bound + report.slack;
    return report;
}

void dump_schedule(const IntegralRun& run, std::ostream& out) {
    for (size_t i = 0; i < run.schedule.size(); ++i) {
        const auto& step = run.schedule[i];
        out << "t " << (i + 1) << " fault=" << (step.fault ? 1 : 0) << " evict=";
        if (step.evicted != 0) {
            out << step.evicted;
        } else {
            out << "-";
        }
        out << " cache=";
        for (size_t c = 0; c < step.cache.size(); ++c) {
            if (c) out << ",";
            out << step.cache[c];
        }
        out << "\n";
    }
}

void save_schedule(const IntegralRun& run, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw TraceError("cannot open " + path + " for writing");
    dump_schedule(run, out);
}

} // namespace mmp
