#include "pairplan/serialize.hpp"

#include <cstdio>
#include <fstream>

#include "pairplan/baselines.hpp"
#include "pairplan/errors.hpp"

namespace pairplan {

PlanDocument make_plan_document(const std::string& strategy, int n, PairDirection mode,
                                const std::vector<CandidateEdge>& edges, double base_cost_mb,
                                double per_pair_cost_mb) {
    PlanDocument doc;
    doc.strategy = strategy;
    doc.n = n;
    doc.mode = mode;
    doc.edges = edges;
    PairingPlan plan;
    plan.edges = edges;
    doc.pairs = expand_to_directed_pairs(plan, mode);
    for (const auto& e : edges) doc.total_weight += e.weight;
    doc.estimated_cost_mb = estimate_inference_cost(static_cast<int>(doc.pairs.size()),
                                                    per_pair_cost_mb, base_cost_mb);
    return doc;
}

nlohmann::ordered_json plan_document_to_json(const PlanDocument& doc) {
    nlohmann::ordered_json out;
    out["n"] = doc.n;
    out["mode"] = doc.mode == PairDirection::both ? "both" : "forward";
    out["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : doc.edges) {
        nlohmann::ordered_json edge;
        edge["i"] = e.i;
        edge["j"] = e.j;
        edge["d"] = e.distance;
        edge["range"] = range_class_name(e.range);
        edge["w"] = e.weight;
        out["edges"].push_back(std::move(edge));
    }
    out["pairs"] = nlohmann::ordered_json::array();
    for (const auto& [s, t] : doc.pairs) out["pairs"].push_back({s, t});
    out["total_weight"] = doc.total_weight;
    out["strategy"] = doc.strategy;
    out["pair_count"] = doc.pairs.size();
    out["estimated_cost_mb"] = doc.estimated_cost_mb;
    return out;
}

std::string plan_document_to_dot(const PlanDocument& doc) {
    std::string dot = "graph plan {\n";
    for (int v = 0; v < doc.n; ++v) {
        dot += "  " + std::to_string(v) + ";\n";
    }
    char label[32];
    for (const auto& e : doc.edges) {
        std::snprintf(label, sizeof(label), "%.4f", e.weight);
        dot += "  " + std::to_string(e.i) + " -- " + std::to_string(e.j) + " [label=\"" + label +
               "\"];\n";
    }
    dot += "}\n";
    return dot;
}

nlohmann::ordered_json loss_report_to_json(const LossBreakdown& breakdown) {
    nlohmann::ordered_json out;
    out["total"] = breakdown.total;
    out["photometric"] = breakdown.photometric;
    out["wavelet"] = breakdown.wavelet;
    nlohmann::ordered_json per_band = nlohmann::ordered_json::object();
    // coarsest level first, matching pyramid storage order
    for (auto level_it = breakdown.per_band.rbegin(); level_it != breakdown.per_band.rend();
         ++level_it) {
        nlohmann::ordered_json bands = nlohmann::ordered_json::object();
        for (const char* band : {"ll", "lh", "hl", "hh"}) {
            auto found = level_it->second.find(band);
            if (found != level_it->second.end()) bands[band] = found->second;
        }
        per_band[std::to_string(level_it->first)] = std::move(bands);
    }
    out["per_band"] = std::move(per_band);
    return out;
}

namespace {

nlohmann::ordered_json vec3_to_json(const Vec3& v) {
    return nlohmann::ordered_json::array({v.x, v.y, v.z});
}

nlohmann::ordered_json quat_to_json(const Quat& q) {
    return nlohmann::ordered_json::array({q.w, q.x, q.y, q.z});
}

nlohmann::ordered_json camera_to_json(const PinholeCamera& cam) {
    nlohmann::ordered_json out;
    out["position"] = vec3_to_json(cam.position);
    out["orientation"] = quat_to_json(cam.orientation);
    out["fx"] = cam.fx;
    out["fy"] = cam.fy;
    out["cx"] = cam.cx;
    out["cy"] = cam.cy;
    out["width"] = cam.width;
    out["height"] = cam.height;
    return out;
}

}  // namespace

nlohmann::ordered_json scene_to_json(const FixtureScene& scene) {
    nlohmann::ordered_json out;
    out["primitives"] = nlohmann::ordered_json::array();
    for (const auto& g : scene.primitives) {
        nlohmann::ordered_json prim;
        prim["mu"] = vec3_to_json(g.mu);
        prim["scale"] = vec3_to_json(g.scale);
        prim["rotation"] = quat_to_json(g.rotation);
        prim["opacity"] = g.opacity;
        prim["color"] = vec3_to_json(g.color);
        out["primitives"].push_back(std::move(prim));
    }
    out["cameras"] = nlohmann::ordered_json::array();
    for (const auto& cam : scene.cameras) out["cameras"].push_back(camera_to_json(cam));
    return out;
}

nlohmann::ordered_json render_manifest_to_json(const std::string& preset, std::uint64_t seed,
                                               const std::vector<FrameRecord>& frames) {
    nlohmann::ordered_json out;
    out["preset"] = preset;
    out["seed"] = seed;
    out["frames"] = nlohmann::ordered_json::array();
    for (const auto& frame : frames) {
        nlohmann::ordered_json rec;
        rec["index"] = frame.index;
        rec["image"] = frame.image;
        rec["depth"] = frame.depth;
        rec["pose"] = camera_to_json(frame.camera);
        out["frames"].push_back(std::move(rec));
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("failed writing '" + path + "'");
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace pairplan
