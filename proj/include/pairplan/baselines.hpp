#pragma once

#include <utility>
#include <vector>

#include "pairplan/errors.hpp"

namespace pairplan {

// Image descriptor used by the cosine pairing baseline.
struct FeatureVector {
    std::vector<double> values;
    int source_view = 0;
};

// All ordered pairs (i, j), i != j; count n(n-1).
std::vector<std::pair<int, int>> complete_pairs(int n);

// Star pairing against one reference view; count 2(n-1).
std::vector<std::pair<int, int>> oneref_pairs(int n, int ref);

// Sequential window without cycle wrap: (i, j) with 0 < j-i <= window,
// both directions.
std::vector<std::pair<int, int>> window_pairs(int n, int window);

// Links each view to its k most cosine-similar peers with similarity
// >= sim_min; undirected dedup, then both directions in edge order.
std::vector<std::pair<int, int>> cosine_pairs(const std::vector<FeatureVector>& features,
                                              int k_nearest, double sim_min);

// base_mb + per_pair_mb * pair_count. A planning heuristic, not a fit.
double estimate_inference_cost(int pair_count, double per_pair_mb, double base_mb);

}  // namespace pairplan
