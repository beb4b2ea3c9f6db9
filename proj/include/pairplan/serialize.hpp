#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pairplan/splat.hpp"
#include "pairplan/view_graph.hpp"
#include "pairplan/wavelet.hpp"

namespace pairplan {

// One planning result ready for export, independent of the strategy that
// produced it. `edges` is the canonical undirected selection; `pairs` is the
// directed expansion actually handed to downstream pairwise inference.
struct PlanDocument {
    std::string strategy;
    int n = 0;
    PairDirection mode = PairDirection::both;
    std::vector<CandidateEdge> edges;
    std::vector<std::pair<int, int>> pairs;
    double total_weight = 0.0;
    double estimated_cost_mb = 0.0;
};

PlanDocument make_plan_document(const std::string& strategy, int n, PairDirection mode,
                                const std::vector<CandidateEdge>& edges, double base_cost_mb,
                                double per_pair_cost_mb);

nlohmann::ordered_json plan_document_to_json(const PlanDocument& doc);
std::string plan_document_to_dot(const PlanDocument& doc);

nlohmann::ordered_json loss_report_to_json(const LossBreakdown& breakdown);

nlohmann::ordered_json scene_to_json(const FixtureScene& scene);

struct FrameRecord {
    int index = 0;
    std::string image;
    std::string depth;
    PinholeCamera camera;
};

nlohmann::ordered_json render_manifest_to_json(const std::string& preset, std::uint64_t seed,
                                               const std::vector<FrameRecord>& frames);

void write_json_file(const std::string& path, const nlohmann::ordered_json& doc);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pairplan
