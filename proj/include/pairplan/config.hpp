#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pairplan/view_graph.hpp"
#include "pairplan/wavelet.hpp"

namespace pairplan {

struct BaselineOptions {
    std::optional<int> reference;  // oneref hub; defaults to the central view n/2
    int window = 2;                // sliding-window half width
    int top_k = 4;                 // cosine neighbors per view
    double sim_min = 0.0;
};

struct WaveletOptions {
    BandLossSpec spec;
    double photometric_weight = 1.0;
    double wavelet_weight = 1.0;
};

struct CostModel {
    double base_mb = 1024.0;
    double per_pair_mb = 96.0;
};

struct IoOptions {
    std::string out;
    std::string views_dir;
};

// Effective run settings. Unset n-dependent fields (offsets, the range
// bounds) resolve against the view count when a problem is materialized.
struct RunConfig {
    std::string strategy = "gaps";
    PairDirection mode = PairDirection::both;

    std::optional<std::vector<int>> offsets;
    double tau = 2.0;
    std::array<double, 3> alpha{1.0, 0.7, 0.4};
    std::array<double, 3> beta{0.0, 0.0, 0.0};
    double w_min = 0.05;
    std::optional<int> local_max;
    std::optional<int> medium_max;
    int degree_budget = 4;
    bool keep_ring = true;

    BaselineOptions baseline;
    WaveletOptions wavelet;
    CostModel cost;
    IoOptions io;

    static RunConfig from_json(const nlohmann::json& doc);
    static RunConfig load(const std::string& path);
    nlohmann::ordered_json to_json() const;

    void validate() const;
    PairingProblem problem_for(int n) const;
};

}  // namespace pairplan
