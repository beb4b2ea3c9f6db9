#include "pairplan/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace pairplan {

std::vector<std::pair<int, int>> complete_pairs(int n) {
    if (n < 1) throw ValidationError("complete_pairs: n must be >= 1");
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) pairs.emplace_back(i, j);
    return pairs;
}

std::vector<std::pair<int, int>> oneref_pairs(int n, int ref) {
    if (n < 1) throw ValidationError("oneref_pairs: n must be >= 1");
    if (ref < 0 || ref >= n) {
        std::ostringstream os;
        os << "oneref_pairs: reference view " << ref << " outside [0, " << n << ")";
        throw ValidationError(os.str());
    }
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(2 * static_cast<std::size_t>(n - 1));
    for (int j = 0; j < n; ++j) {
        if (j == ref) continue;
        pairs.emplace_back(ref, j);
        pairs.emplace_back(j, ref);
    }
    return pairs;
}

std::vector<std::pair<int, int>> window_pairs(int n, int window) {
    if (n < 1) throw ValidationError("window_pairs: n must be >= 1");
    if (window < 1) throw ValidationError("window_pairs: window must be >= 1");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j <= std::min(i + window, n - 1); ++j) {
            pairs.emplace_back(i, j);
            pairs.emplace_back(j, i);
        }
    }
    return pairs;
}

namespace {

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b,
                         double norm_a, double norm_b) {
    double dot = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) dot += a[k] * b[k];
    return dot / (norm_a * norm_b);
}

}  // namespace

std::vector<std::pair<int, int>> cosine_pairs(const std::vector<FeatureVector>& features,
                                              int k_nearest, double sim_min) {
    const int n = static_cast<int>(features.size());
    if (n < 2) throw ValidationError("cosine_pairs: need at least 2 feature vectors");
    if (k_nearest < 1) throw ValidationError("cosine_pairs: k_nearest must be >= 1");
    if (sim_min < -1.0 || sim_min > 1.0)
        throw ValidationError("cosine_pairs: sim_min must lie in [-1, 1]");

    const std::size_t dim = features[0].values.size();
    std::vector<double> norms(n);
    for (int i = 0; i < n; ++i) {
        if (features[i].values.size() != dim)
            throw ValidationError("cosine_pairs: feature vectors must have equal length");
        double sq = 0.0;
        for (double v : features[i].values) {
            if (!std::isfinite(v))
                throw ValidationError("cosine_pairs: feature entries must be finite");
            sq += v * v;
        }
        norms[i] = std::sqrt(sq);
        if (norms[i] == 0.0) {
            std::ostringstream os;
            os << "cosine_pairs: zero feature vector at index " << i << " (cosine undefined)";
            throw ValidationError(os.str());
        }
    }

    std::set<std::pair<int, int>> undirected;
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> scored;
        scored.reserve(n - 1);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double sim =
                cosine_similarity(features[i].values, features[j].values, norms[i], norms[j]);
            if (sim >= sim_min) scored.emplace_back(sim, j);
        }
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        const int take = std::min<int>(k_nearest, static_cast<int>(scored.size()));
        for (int t = 0; t < take; ++t) {
            const int j = scored[t].second;
            undirected.emplace(std::min(i, j), std::max(i, j));
        }
    }

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(2 * undirected.size());
    for (const auto& [a, b] : undirected) {
        pairs.emplace_back(a, b);
        pairs.emplace_back(b, a);
    }
    return pairs;
}

double estimate_inference_cost(int pair_count, double per_pair_mb, double base_mb) {
    if (pair_count < 0) throw ValidationError("estimate_inference_cost: pair count must be >= 0");
    if (!(per_pair_mb > 0.0))
        throw ValidationError("estimate_inference_cost: per_pair_mb must be > 0");
    if (base_mb < 0.0) throw ValidationError("estimate_inference_cost: base_mb must be >= 0");
    return base_mb + per_pair_mb * static_cast<double>(pair_count);
}

}  // namespace pairplan
