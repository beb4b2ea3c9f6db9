#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pairplan/errors.hpp"

namespace pairplan {

enum class RangeClass { local = 0, medium = 1, long_range = 2 };

const char* range_class_name(RangeClass r);
RangeClass range_class_from_name(const std::string& name);

// Range-adaptive importance model: w(d) = alpha[r(d)] * phi(d) + beta[r(d)],
// clamped below at zero. phi(d) = exp(-max(d-1,0)/tau).
struct ImportanceParams {
    double tau = 2.0;
    std::array<double, 3> alpha{1.0, 0.7, 0.4};  // indexed by RangeClass
    std::array<double, 3> beta{0.0, 0.0, 0.0};
    double w_min = 0.05;
    int local_max = 2;
    int medium_max = 3;

    // Defaults with range bounds fitted to an n-view cycle. Keeps
    // 1 <= local_max < medium_max satisfiable even for tiny n.
    static ImportanceParams defaults_for(int n);

    // tau > 0, w_min >= 0, 1 <= local_max < medium_max.
    void validate() const;
};

// An n-view cycle, the offset set K of candidate chords, the importance
// model, and the per-vertex degree budget b.
struct PairingProblem {
    int n = 0;
    std::vector<int> offsets;  // distinct, ascending, each in [1, n/2]
    ImportanceParams params;
    int degree_budget = 4;

    static std::vector<int> default_offsets(int n);  // powers of two up to n/2
    static PairingProblem with_defaults(int n);

    void validate() const;
};

// Undirected candidate chord, canonicalized so i < j.
struct CandidateEdge {
    int i = 0;
    int j = 0;
    int distance = 0;
    RangeClass range = RangeClass::local;
    double weight = 0.0;

    friend bool operator==(const CandidateEdge& a, const CandidateEdge& b) {
        return a.i == b.i && a.j == b.j;
    }
};

struct PairingPlan {
    std::vector<CandidateEdge> edges;  // sorted ascending by (i, j)
    double total_weight = 0.0;
    std::optional<std::vector<std::pair<int, int>>> directed;
};

struct ConnectivityReport {
    bool connected = false;
    int components = 0;
};

enum class PairDirection { both, forward };

const char* pair_direction_name(PairDirection mode);
PairDirection pair_direction_from_name(const std::string& name);

// Wrap-around index distance on the n-cycle: min(|i-j|, n-|i-j|).
int circular_distance(int i, int j, int n);

// Surrogate overlap decay, 1 at d <= 1, exp(-(d-1)/tau) beyond.
double decay_phi(int d, double tau);

RangeClass classify_range(int d, const ImportanceParams& params);

// max(0, alpha_r * phi(d) + beta_r) for r = classify_range(d).
double edge_importance(int d, const ImportanceParams& params);

// Union over k in K of the chords {i, (i+k) mod n}, deduplicated, each edge
// carrying distance, range class and importance weight. Sorted by (i, j).
std::vector<CandidateEdge> generate_candidates(const PairingProblem& problem);

// Drops edges with weight < w_min; distance-1 edges are exempt when
// keep_ring is set so filtering can never break the view cycle.
std::vector<CandidateEdge> filter_by_importance(std::vector<CandidateEdge> edges,
                                                double w_min, bool keep_ring);

// Greedy maximal b-matching: scan by descending weight (ties by ascending
// (i, j)), accept when both endpoints have residual degree. Guarantees
// total weight >= 1/2 of the optimum.
PairingPlan select_subgraph_greedy(std::vector<CandidateEdge> edges, int b);

// Exhaustive max-weight b-matching over all edge subsets. Among equal-weight
// optima returns the lexicographically smallest edge sequence. Refuses
// instances with more than max_edges edges.
PairingPlan select_subgraph_exact(std::vector<CandidateEdge> edges, int b,
                                  int max_edges = 24);

// mode=both emits (i,j),(j,i) per edge; mode=forward emits (i,j) with i < j.
// Edge order is ascending (i, j).
std::vector<std::pair<int, int>> expand_to_directed_pairs(const PairingPlan& plan,
                                                          PairDirection mode);

ConnectivityReport check_connectivity(const PairingPlan& plan, int n);

// Full GAPS pipeline: candidates -> importance filter -> greedy selection,
// with the directed expansion attached. With keep_ring and b >= 2 the ring
// edges are seated before the chord scan, so a plan over offsets containing
// 1 is always one connected component regardless of the weighting.
PairingPlan plan_gaps(const PairingProblem& problem, bool keep_ring,
                      PairDirection mode);

}  // namespace pairplan
