#ifndef MMP_LAYERED_METADATA_HPP
#define MMP_LAYERED_METADATA_HPP

#include <string>
#include <vector>

#include "mmp/trace.hpp"

namespace mmp {

// Sidecar describing a layered adversarial trace: which block of pages each
// phase used, which page was promoted, and the round span of the phase.
// Promotions cannot be reconstructed from the raw trace (they depend on the
// victim policy or on adversary coin flips), so generators emit this file.
struct LayeredPhase {
    int layer = 0;              // m down to 1
    int phase = 0;              // 0-based within the layer
    std::vector<PageId> page_set;
    PageId promoted = 0;
    Round start = 0;            // inclusive, 1-based
    Round end = 0;              // inclusive
};

struct LayeredMetadata {
    int layers = 0;             // m
    int arity = 0;              // pages per phase (k+1 or 3)
    int k = 0;
    long long fault_target = 0; // N
    std::vector<LayeredPhase> phases;

    PageId final_page() const {
        return phases.empty() ? 0 : phases.back().promoted;
    }
};

std::string to_json_string(const LayeredMetadata& meta);
LayeredMetadata layered_metadata_from_json(const std::string& text);
void save_layered_metadata(const LayeredMetadata& meta, const std::string& path);
LayeredMetadata load_layered_metadata(const std::string& path);

} // namespace mmp

#endif
