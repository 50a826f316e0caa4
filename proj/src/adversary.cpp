#include "mmp/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "mmp/rng.hpp"

namespace mmp {

namespace {

long long checked_pow(int base, int exp) {
    long long value = 1;
    for (int i = 0; i < exp; ++i) {
        value *= base;
        if (value > 100'000'000LL) {
            throw TraceError("layered construction too large: " + std::to_string(base) +
                             "^" + std::to_string(exp));
        }
    }
    return value;
}

} // namespace

CruelResult cruel_sequence(OnlinePolicy& policy, const std::vector<PageId>& page_set,
                           long long fault_target, Round max_length) {
    if (fault_target <= 0 && max_length <= 0) {
        throw TraceError("cruel strategy needs a stop condition");
    }
    CruelResult result;
    std::vector<double> base;
    base.reserve(page_set.size());
    for (PageId p : page_set) base.push_back(policy.faults_on(p));

    auto phase_faults = [&](size_t i) {
        return policy.faults_on(page_set[i]) - base[i];
    };
    auto length_reached = [&]() {
        return max_length > 0 && static_cast<Round>(result.requests.size()) >= max_length;
    };

    // Warm-up: the whole set once, in id order. A page can reach the target
    // here only when the target is one fault away; remember the first one.
    std::vector<PageId> ordered(page_set);
    std::sort(ordered.begin(), ordered.end());
    for (PageId p : ordered) {
        if (length_reached()) return result;
        result.requests.push_back(p);
        policy.serve(p);
        if (fault_target > 0 && result.promoted == 0) {
            for (size_t i = 0; i < page_set.size(); ++i) {
                if (phase_faults(i) >= static_cast<double>(fault_target)) {
                    result.promoted = page_set[i];
                    break;
                }
            }
        }
    }
    if (fault_target > 0 && result.promoted != 0) return result;

    while (!length_reached()) {
        // The policy holds at most k pages, so the (k+1)-set always has an
        // absent member; request the smallest.
        PageId absent = 0;
        for (PageId p : ordered) {
            if (!policy.cache().count(p)) {
                absent = p;
                break;
            }
        }
        if (absent == 0) {
            throw TraceError("policy cache covers the whole cruel set; interface violation");
        }
        result.requests.push_back(absent);
        ServeResult sr = policy.serve(absent);
        if (!sr.fault) {
            throw TraceError("cruel request did not fault; interface violation");
        }
        if (fault_target > 0) {
            for (size_t i = 0; i < page_set.size(); ++i) {
                if (phase_faults(i) >= static_cast<double>(fault_target)) {
                    result.promoted = page_set[i];
                    return result;
                }
            }
        }
    }
    return result;
}

AdversaryRun det_layered(OnlinePolicy& policy, const LayeredConfig& config) {
    if (config.k < 2) throw TraceError("det-layered needs k >= 2");
    if (config.m < 0) throw TraceError("layers must be non-negative");
    AdversaryRun run;
    run.k = config.k;
    int arity = config.k + 1;
    long long n = checked_pow(arity, config.m);
    run.pages = static_cast<int>(n);
    run.metadata.layers = config.m;
    run.metadata.arity = arity;
    run.metadata.k = config.k;
    run.metadata.fault_target = config.N;
    if (config.m == 0) return run;  // single page, nothing to request

    policy.init(config.k);
    std::vector<PageId> current(n);
    for (long long i = 0; i < n; ++i) current[i] = static_cast<PageId>(i + 1);

    for (int layer = config.m; layer >= 1; --layer) {
        std::vector<PageId> next;
        next.reserve(current.size() / arity);
        for (size_t block = 0; block * arity < current.size(); ++block) {
            std::vector<PageId> pages(current.begin() + block * arity,
                                      current.begin() + (block + 1) * arity);
            LayeredPhase phase;
            phase.layer = layer;
            phase.phase = static_cast<int>(block);
            phase.page_set = pages;
            phase.start = static_cast<Round>(run.requests.size()) + 1;
            CruelResult cruel = cruel_sequence(policy, pages, config.N, 0);
            run.requests.insert(run.requests.end(), cruel.requests.begin(),
                                cruel.requests.end());
            phase.end = static_cast<Round>(run.requests.size());
            phase.promoted = cruel.promoted;
            if (cruel.promoted == 0) {
                throw TraceError("cruel phase ended without reaching the fault target");
            }
            next.push_back(cruel.promoted);
            run.metadata.phases.push_back(std::move(phase));
        }
        current = std::move(next);
    }
    run.promoted_final = current.front();
    return run;
}

AdversaryRun rand_layered_k2(const LayeredConfig& config) {
    if (config.k != 2) {
        throw TraceError("the round-robin layered construction is proven for k = 2 only");
    }
    if (config.m < 0) throw TraceError("layers must be non-negative");
    AdversaryRun run;
    run.k = 2;
    long long n = checked_pow(3, config.m);
    run.pages = static_cast<int>(n);
    run.metadata.layers = config.m;
    run.metadata.arity = 3;
    run.metadata.k = 2;
    run.metadata.fault_target = config.N;
    if (config.m == 0) return run;

    Rng rng(config.seed);
    std::vector<PageId> current(n);
    for (long long i = 0; i < n; ++i) current[i] = static_cast<PageId>(i + 1);

    for (int layer = config.m; layer >= 1; --layer) {
        std::vector<PageId> next;
        for (size_t block = 0; block * 3 < current.size(); ++block) {
            std::vector<PageId> pages(current.begin() + block * 3,
                                      current.begin() + block * 3 + 3);
            LayeredPhase phase;
            phase.layer = layer;
            phase.phase = static_cast<int>(block);
            phase.page_set = pages;
            phase.start = static_cast<Round>(run.requests.size()) + 1;
            for (long long pass = 0; pass < config.N; ++pass) {
                run.requests.push_back(pages[0]);
                run.requests.push_back(pages[1]);
                run.requests.push_back(pages[2]);
            }
            phase.end = static_cast<Round>(run.requests.size());
            phase.promoted = pages[static_cast<size_t>(rng.uniform_int(0, 2))];
            next.push_back(phase.promoted);
            run.metadata.phases.push_back(std::move(phase));
        }
        current = std::move(next);
    }
    run.promoted_final = current.front();
    return run;
}

AdversaryRun rand_layered_uniform(const LayeredConfig& config) {
    if (config.k < 1) throw TraceError("k must be >= 1");
    if (config.m < 0) throw TraceError("layers must be non-negative");
    AdversaryRun run;
    run.k = config.k;
    int arity = config.k + 1;
    long long n = checked_pow(arity, config.m);
    run.pages = static_cast<int>(n);
    run.metadata.layers = config.m;
    run.metadata.arity = arity;
    run.metadata.k = config.k;
    run.metadata.fault_target = config.N;
    if (config.m == 0) return run;

    Rng rng(config.seed);
    std::vector<PageId> current(n);
    for (long long i = 0; i < n; ++i) current[i] = static_cast<PageId>(i + 1);

    for (int layer = config.m; layer >= 1; --layer) {
        std::vector<PageId> next;
        for (size_t block = 0; block * arity < current.size(); ++block) {
            std::vector<PageId> pages(current.begin() + block * arity,
                                      current.begin() + (block + 1) * arity);
            LayeredPhase phase;
            phase.layer = layer;
            phase.phase = static_cast<int>(block);
            phase.page_set = pages;
            phase.start = static_cast<Round>(run.requests.size()) + 1;
            for (long long i = 0; i < config.N; ++i) {
                run.requests.push_back(
                    pages[static_cast<size_t>(rng.uniform_int(0, arity - 1))]);
            }
            phase.end = static_cast<Round>(run.requests.size());
            phase.promoted = pages[static_cast<size_t>(rng.uniform_int(0, arity - 1))];
            next.push_back(phase.promoted);
            run.metadata.phases.push_back(std::move(phase));
        }
        current = std::move(next);
    }
    run.promoted_final = current.front();
    return run;
}

AdversaryRun intro_lru_bad(int n, int k) {
    if (k < 1 || n <= k) throw TraceError("need n > k >= 1");
    if ((n - 1) % k != 0) {
        throw TraceError("LRU separation needs n = m*k + 1");
    }
    int m = (n - 1) / k;
    AdversaryRun run;
    run.k = k;
    run.pages = n;
    run.requests.push_back(1);
    PageId next_page = 2;
    for (int group = 0; group < m; ++group) {
        for (int i = 0; i < k; ++i) run.requests.push_back(next_page++);
        run.requests.push_back(1);
    }
    return run;
}

AdversaryRun intro_greedy_bad(OnlinePolicy& policy, long long N, int repetitions) {
    if (N < 1) throw TraceError("N must be >= 1");
    if (repetitions < 0) throw TraceError("repetitions must be >= 0");
    AdversaryRun run;
    run.k = 2;
    run.pages = 3 * (repetitions + 1);
    policy.init(2);

    auto emit = [&](PageId p) {
        run.requests.push_back(p);
        policy.serve(p);
    };

    for (long long i = 0; i < N; ++i) {
        emit(1);
        emit(2);
        emit(3);
    }
    for (int rep = 1; rep <= repetitions; ++rep) {
        PageId pa = static_cast<PageId>(3 * rep + 1);
        PageId pb = static_cast<PageId>(3 * rep + 2);
        PageId pc = static_cast<PageId>(3 * rep + 3);
        long long guard = 0;
        const long long guard_max = 10 * N * 2 + 1000;
        while (!(policy.cache().count(pa) && policy.cache().count(pb))) {
            emit(pa);
            if (policy.cache().count(pa) && policy.cache().count(pb)) break;
            emit(pb);
            if (++guard > guard_max) {
                throw TraceError("policy never cached both fresh pages");
            }
        }
        for (long long i = 0; i < N; ++i) {
            emit(pa);
            emit(pb);
            emit(pc);
        }
    }
    return run;
}

AdversaryRun uniform_random_trace(int k, int n, Round length, std::uint64_t seed) {
    if (n < 1 || k < 1 || length < 1) throw TraceError("bad random trace parameters");
    AdversaryRun run;
    run.k = k;
    run.pages = n;
    Rng rng(seed);
    run.requests.reserve(length);
    for (Round i = 0; i < length; ++i) {
        run.requests.push_back(static_cast<PageId>(rng.uniform_int(1, n)));
    }
    return run;
}

} // namespace mmp
