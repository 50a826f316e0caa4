#include "mmp/layered_metadata.hpp"

#include <fstream>

#include <json.hpp>

namespace mmp {

using nlohmann::json;

std::string to_json_string(const LayeredMetadata& meta) {
    json j;
    j["layers"] = meta.layers;
    j["arity"] = meta.arity;
    j["k"] = meta.k;
    j["fault_target"] = meta.fault_target;
    j["phases"] = json::array();
    for (const auto& ph : meta.phases) {
        json p;
        p["layer"] = ph.layer;
        p["phase"] = ph.phase;
        p["page_set"] = ph.page_set;
        p["promoted"] = ph.promoted;
        p["start"] = ph.start;
        p["end"] = ph.end;
        j["phases"].push_back(std::move(p));
    }
    return j.dump(2);
}

LayeredMetadata layered_metadata_from_json(const std::string& text) {
    json j = json::parse(text);
    LayeredMetadata meta;
    meta.layers = j.at("layers").get<int>();
    meta.arity = j.at("arity").get<int>();
    meta.k = j.at("k").get<int>();
    meta.fault_target = j.value("fault_target", 0LL);
    for (const auto& p : j.at("phases")) {
        LayeredPhase ph;
        ph.layer = p.at("layer").get<int>();
        ph.phase = p.at("phase").get<int>();
        ph.page_set = p.at("page_set").get<std::vector<PageId>>();
        ph.promoted = p.at("promoted").get<PageId>();
        ph.start = p.at("start").get<Round>();
        ph.end = p.at("end").get<Round>();
        meta.phases.push_back(std::move(ph));
    }
    return meta;
}

void save_layered_metadata(const LayeredMetadata& meta, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw TraceError("cannot open " + path + " for writing");
    out << to_json_string(meta) << "\n";
}

LayeredMetadata load_layered_metadata(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TraceError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return layered_metadata_from_json(text);
}

} // namespace mmp
