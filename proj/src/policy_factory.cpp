#include "mmp/pd_policy.hpp"
#include "mmp/policy.hpp"

namespace mmp {

std::unique_ptr<OnlinePolicy> make_policy(const std::string& spec, int k,
                                          int pages_hint, std::uint64_t default_seed) {
    if (spec == "lru") return std::make_unique<LruPolicy>(k);
    if (spec == "fifo") return std::make_unique<FifoPolicy>(k);
    if (spec == "greedy-min-faults") return std::make_unique<GreedyMinFaultsPolicy>(k);
    if (spec == "minmax-pd") return std::make_unique<RoundedFractionalPolicy>(pages_hint, k);
    if (spec == "marking") return std::make_unique<MarkingPolicy>(default_seed, k);
    if (spec.rfind("marking:", 0) == 0) {
        std::uint64_t seed = std::stoull(spec.substr(8));
        return std::make_unique<MarkingPolicy>(seed, k);
    }
    throw TraceError("unknown policy: " + spec);
}

} // namespace mmp
