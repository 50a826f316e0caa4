#include "mmp/objective.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmp {

ConvexObjective::ConvexObjective(Kind kind, double q, std::vector<PageId> page_of, int pages)
    : kind_(kind), q_(q), page_of_(std::move(page_of)), pages_(pages) {
    if (q_ < 1.0) throw std::invalid_argument("growth exponent q must be >= 1");
    if (kind_ == Kind::Linear) q_ = 1.0;
    for (PageId p : page_of_) {
        if (p < 1 || p > pages_) throw std::invalid_argument("coordinate page out of range");
    }
}

ConvexObjective ConvexObjective::sum_of_q_powers(double q, std::vector<PageId> page_of, int pages) {
    return ConvexObjective(Kind::SumOfQPowers, q, std::move(page_of), pages);
}

ConvexObjective ConvexObjective::linear(std::vector<PageId> page_of, int pages) {
    return ConvexObjective(Kind::Linear, 1.0, std::move(page_of), pages);
}

double minmax_growth_exponent(int pages) {
    return std::max(1.0, std::log2(static_cast<double>(pages)));
}

ConvexObjective ConvexObjective::for_trace(const RequestIndex& index, const std::string& name) {
    std::vector<PageId> page_of;
    page_of.reserve(index.length());
    for (Round t = 1; t <= index.length(); ++t) page_of.push_back(index.page_at(t));
    int n = index.pages();
    if (name == "l1") return linear(std::move(page_of), n);
    if (name == "minmax") {
        return sum_of_q_powers(minmax_growth_exponent(index.distinct_total()),
                               std::move(page_of), n);
    }
    if (name.rfind("lq:", 0) == 0) {
        double q = std::stod(name.substr(3));
        if (q == 1.0) return linear(std::move(page_of), n);
        return sum_of_q_powers(q, std::move(page_of), n);
    }
    throw std::invalid_argument("unknown objective: " + name);
}

std::vector<double> ConvexObjective::page_sums(const std::vector<double>& x) const {
    if (x.size() != page_of_.size()) throw std::invalid_argument("coordinate count mismatch");
    std::vector<double> sums(pages_ + 1, 0.0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0) throw std::domain_error("negative coordinate");
        sums[page_of_[i]] += x[i];
    }
    return sums;
}

double ConvexObjective::eval(const std::vector<double>& x) const {
    auto sums = page_sums(x);
    double total = 0.0;
    for (int p = 1; p <= pages_; ++p) total += page_value(sums[p]);
    return total;
}

std::vector<double> ConvexObjective::grad(const std::vector<double>& x) const {
    auto sums = page_sums(x);
    std::vector<double> g(x.size());
    for (size_t i = 0; i < x.size(); ++i) g[i] = page_gradient(sums[page_of_[i]]);
    return g;
}

double ConvexObjective::conjugate_1d(double v) const {
    if (v <= 0.0) return 0.0;
    if (kind_ == Kind::Linear || q_ == 1.0) {
        return v <= 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    // sup_u v*u - u^q attained at u = (v/q)^(1/(q-1)).
    return (q_ - 1.0) * std::pow(v / q_, q_ / (q_ - 1.0));
}

double ConvexObjective::conjugate(const std::vector<double>& w) const {
    if (w.size() != page_of_.size()) throw std::invalid_argument("coordinate count mismatch");
    std::vector<double> page_max(pages_ + 1, 0.0);
    for (size_t i = 0; i < w.size(); ++i) {
        page_max[page_of_[i]] = std::max(page_max[page_of_[i]], w[i]);
    }
    return conjugate_from_page_max(page_max);
}

double ConvexObjective::conjugate_from_page_max(const std::vector<double>& page_max) const {
    double total = 0.0;
    for (double v : page_max) {
        double term = conjugate_1d(v);
        if (std::isinf(term)) return term;
        total += term;
    }
    return total;
}

bool ConvexObjective::growth_check(const std::vector<double>& x, double rel_tol) const {
    auto sums = page_sums(x);
    double inner = 0.0;
    double value = 0.0;
    for (int p = 1; p <= pages_; ++p) {
        inner += page_gradient(sums[p]) * sums[p];
        value += page_value(sums[p]);
    }
    return inner <= q_ * value + rel_tol * std::max(1.0, q_ * value);
}

SolverParams default_params(int k, double q, Round trace_length) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (q < 1.0) throw std::invalid_argument("q must be >= 1");
    SolverParams params;
    double lk = std::log(static_cast<double>(k) + 1.0);
    params.delta = std::pow(2.0 * q * lk, 1.0 - q);
    params.r = params.delta / lk;
    params.eps_start = 1e-6 / static_cast<double>(std::max<Round>(trace_length, 1));
    params.eps_feas = 1e-9;
    params.max_step = 1e-3;
    return params;
}

} // namespace mmp
