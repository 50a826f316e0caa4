#include "mmp/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace mmp {

void RequestTrace::validate() const {
    if (k < 1) throw TraceError("cache capacity must be at least 1");
    if (requests.empty()) throw TraceError("trace must contain at least one request");
    if (pages < 1) throw TraceError("page universe must be at least 1");
    for (PageId p : requests) {
        if (p < 1 || p > pages) {
            throw TraceError("page id " + std::to_string(p) +
                             " outside [1, " + std::to_string(pages) + "]");
        }
    }
}

RequestTrace RequestTrace::from_requests(int k, const std::vector<PageId>& ids) {
    RequestTrace trace;
    trace.k = k;
    trace.requests.reserve(ids.size());
    std::unordered_map<PageId, PageId> remap;
    for (PageId raw : ids) {
        auto it = remap.find(raw);
        if (it == remap.end()) {
            PageId dense = static_cast<PageId>(remap.size()) + 1;
            it = remap.emplace(raw, dense).first;
        }
        trace.requests.push_back(it->second);
    }
    trace.pages = static_cast<int>(remap.size());
    trace.validate();
    return trace;
}

RequestIndex::RequestIndex(const RequestTrace& trace) {
    trace.validate();
    k_ = trace.k;
    n_ = trace.pages;
    T_ = trace.length();
    requested_ = trace.requests;
    distinct_by_.assign(T_ + 1, 0);
    first_seen_.assign(n_ + 1, 0);
    occurrences_.assign(n_ + 1, {});
    count_at_.assign(T_, 0);

    int distinct = 0;
    for (Round t = 1; t <= T_; ++t) {
        PageId p = requested_[t - 1];
        if (first_seen_[p] == 0) {
            first_seen_[p] = t;
            appearance_.push_back(p);
            ++distinct;
        }
        occurrences_[p].push_back(t);
        count_at_[t - 1] = static_cast<int>(occurrences_[p].size());
        distinct_by_[t] = distinct;
    }
}

int RequestIndex::request_count(PageId p, Round t) const {
    const auto& occ = occurrences_[p];
    auto it = std::upper_bound(occ.begin(), occ.end(), t);
    return static_cast<int>(it - occ.begin());
}

Round RequestIndex::request_round(PageId p, int j) const {
    const auto& occ = occurrences_[p];
    if (j < 1 || j > static_cast<int>(occ.size())) {
        throw std::out_of_range("request index j out of range");
    }
    return occ[j - 1];
}

Round RequestIndex::next_request_after(PageId p, Round t) const {
    const auto& occ = occurrences_[p];
    auto it = std::upper_bound(occ.begin(), occ.end(), t);
    return it == occ.end() ? 0 : *it;
}

RequestIndex build_request_index(const RequestTrace& trace) {
    return RequestIndex(trace);
}

ConstraintRowView constraint_row(const RequestIndex& index, Round t) {
    if (t < 1 || t > index.length()) {
        throw std::out_of_range("round out of range");
    }
    ConstraintRowView row;
    row.t = t;
    row.requested = index.page_at(t);
    row.rhs = index.distinct_by(t) - index.k();
    const auto& order = index.appearance_order();
    int seen = index.distinct_by(t);
    for (int i = 0; i < seen; ++i) {
        PageId p = order[i];
        if (p == row.requested) continue;
        row.active.emplace_back(p, index.request_count(p, t));
    }
    return row;
}

double minmax_cost(const CostVector& cv) {
    double best = 0.0;
    for (int p = 1; p <= cv.pages(); ++p) best = std::max(best, cv[p]);
    return best;
}

double l1_cost(const CostVector& cv) {
    double total = 0.0;
    for (int p = 1; p <= cv.pages(); ++p) total += cv[p];
    return total;
}

double lq_cost(const CostVector& cv, double q) {
    if (q < 1.0) throw std::invalid_argument("lq_cost requires q >= 1");
    if (cv.pages() == 0) return 0.0;
    // Factor out the max to keep powers in range for large q.
    double m = minmax_cost(cv);
    if (m == 0.0) return 0.0;
    double sum = 0.0;
    for (int p = 1; p <= cv.pages(); ++p) {
        sum += std::pow(cv[p] / m, q);
    }
    return m * std::pow(sum, 1.0 / q);
}

void save_trace(const RequestTrace& trace, std::ostream& out) {
    out << "paging-trace v1 k=" << trace.k << " n=" << trace.pages << "\n";
    for (PageId p : trace.requests) out << p << "\n";
}

void save_trace_file(const RequestTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw TraceError("cannot open " + path + " for writing");
    save_trace(trace, out);
}

RequestTrace load_trace(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw TraceError("empty trace file");
    RequestTrace trace;
    {
        std::istringstream hs(header);
        std::string magic, version, kfield, nfield;
        hs >> magic >> version >> kfield >> nfield;
        if (magic != "paging-trace" || version != "v1" ||
            kfield.rfind("k=", 0) != 0 || nfield.rfind("n=", 0) != 0) {
            throw TraceError("bad trace header: " + header);
        }
        try {
            trace.k = std::stoi(kfield.substr(2));
            trace.pages = std::stoi(nfield.substr(2));
        } catch (const std::exception&) {
            throw TraceError("bad trace header numbers: " + header);
        }
    }
    std::string line;
    while (std::getline(in, line)) {
        // Trim trailing carriage returns and surrounding blanks.
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        PageId p;
        try {
            size_t pos = 0;
            p = std::stoi(line, &pos);
            if (pos != line.size()) throw std::invalid_argument(line);
        } catch (const std::exception&) {
            throw TraceError("bad request line: " + line);
        }
        if (p < 1 || p > trace.pages) {
            throw TraceError("page id " + std::to_string(p) + " outside [1, " +
                             std::to_string(trace.pages) + "]");
        }
        trace.requests.push_back(p);
    }
    trace.validate();
    return trace;
}

RequestTrace load_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TraceError("cannot open " + path);
    return load_trace(in);
}

} // namespace mmp
