#include "pairplan/view_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

namespace pairplan {

const char* range_class_name(RangeClass r) {
    switch (r) {
        case RangeClass::local: return "local";
        case RangeClass::medium: return "medium";
        case RangeClass::long_range: return "long";
    }
    return "local";
}

RangeClass range_class_from_name(const std::string& name) {
    if (name == "local") return RangeClass::local;
    if (name == "medium") return RangeClass::medium;
    if (name == "long") return RangeClass::long_range;
    throw ValidationError("unknown range class '" + name + "'");
}

const char* pair_direction_name(PairDirection mode) {
    return mode == PairDirection::both ? "both" : "forward";
}

PairDirection pair_direction_from_name(const std::string& name) {
    if (name == "both") return PairDirection::both;
    if (name == "forward") return PairDirection::forward;
    throw ValidationError("unknown pair direction '" + name + "' (expected both|forward)");
}

ImportanceParams ImportanceParams::defaults_for(int n) {
    if (n < 2) throw ValidationError("ImportanceParams::defaults_for: n must be >= 2");
    const int half = n / 2;
    ImportanceParams p;
    p.local_max = std::min(2, std::max(1, half - 1));
    const int medium_default = (n + 3) / 4;  // ceil(n/4)
    const int lo = p.local_max + 1;
    const int hi = std::max(half, lo);
    p.medium_max = std::clamp(medium_default, lo, hi);
    return p;
}

void ImportanceParams::validate() const {
    if (!(tau > 0.0)) throw ValidationError("importance: tau must be > 0");
    if (w_min < 0.0) throw ValidationError("importance: w_min must be >= 0");
    if (local_max < 1) throw ValidationError("importance: local_max must be >= 1");
    if (medium_max <= local_max)
        throw ValidationError("importance: medium_max must exceed local_max");
    for (double a : alpha)
        if (!std::isfinite(a)) throw ValidationError("importance: alpha must be finite");
    for (double b : beta)
        if (!std::isfinite(b)) throw ValidationError("importance: beta must be finite");
}

std::vector<int> PairingProblem::default_offsets(int n) {
    if (n < 2) throw ValidationError("default_offsets: n must be >= 2");
    std::vector<int> ks;
    for (int k = 1; k <= n / 2; k *= 2) ks.push_back(k);
    return ks;
}

PairingProblem PairingProblem::with_defaults(int n) {
    PairingProblem p;
    p.n = n;
    p.offsets = default_offsets(n);
    p.params = ImportanceParams::defaults_for(n);
    p.degree_budget = 4;
    p.validate();
    return p;
}

void PairingProblem::validate() const {
    if (n < 2) throw ValidationError("pairing problem: n must be >= 2");
    if (degree_budget < 1) throw ValidationError("pairing problem: degree budget b must be >= 1");
    params.validate();
    int prev = 0;
    for (int k : offsets) {
        if (k < 1 || k > n / 2) {
            std::ostringstream os;
            os << "pairing problem: offset " << k << " outside [1, " << n / 2 << "]";
            throw ValidationError(os.str());
        }
        if (k <= prev) throw ValidationError("pairing problem: offsets must be distinct ascending");
        prev = k;
    }
    // medium_max <= n/2 keeps the long class reachable; skipped for tiny n
    // where no bound assignment can satisfy it.
    if (n / 2 > params.local_max && params.medium_max > n / 2) {
        std::ostringstream os;
        os << "pairing problem: medium_max " << params.medium_max << " exceeds floor(n/2) = "
           << n / 2;
        throw ValidationError(os.str());
    }
}

int circular_distance(int i, int j, int n) {
    if (n < 1) throw ValidationError("circular_distance: n must be >= 1");
    if (i < 0 || i >= n || j < 0 || j >= n) {
        std::ostringstream os;
        os << "circular_distance: index out of range (i=" << i << ", j=" << j << ", n=" << n
           << ")";
        throw ValidationError(os.str());
    }
    const int diff = std::abs(i - j);
    return std::min(diff, n - diff);
}

double decay_phi(int d, double tau) {
    if (!(tau > 0.0)) throw ValidationError("decay_phi: tau must be > 0");
    if (d < 0) throw ValidationError("decay_phi: distance must be >= 0");
    return std::exp(-static_cast<double>(std::max(d - 1, 0)) / tau);
}

RangeClass classify_range(int d, const ImportanceParams& params) {
    if (d <= params.local_max) return RangeClass::local;
    if (d <= params.medium_max) return RangeClass::medium;
    return RangeClass::long_range;
}

double edge_importance(int d, const ImportanceParams& params) {
    const RangeClass r = classify_range(d, params);
    const std::size_t ri = static_cast<std::size_t>(r);
    const double w = params.alpha[ri] * decay_phi(d, params.tau) + params.beta[ri];
    return std::max(0.0, w);
}

std::vector<CandidateEdge> generate_candidates(const PairingProblem& problem) {
    problem.validate();
    const int n = problem.n;
    std::set<std::pair<int, int>> seen;
    for (int k : problem.offsets) {
        for (int i = 0; i < n; ++i) {
            const int j = (i + k) % n;
            seen.emplace(std::min(i, j), std::max(i, j));
        }
    }
    std::vector<CandidateEdge> edges;
    edges.reserve(seen.size());
    for (const auto& [a, b] : seen) {
        CandidateEdge e;
        e.i = a;
        e.j = b;
        e.distance = circular_distance(a, b, n);
        e.range = classify_range(e.distance, problem.params);
        e.weight = edge_importance(e.distance, problem.params);
        edges.push_back(e);
    }
    return edges;  // std::set iteration is already ascending (i, j)
}

std::vector<CandidateEdge> filter_by_importance(std::vector<CandidateEdge> edges,
                                                double w_min, bool keep_ring) {
    if (w_min < 0.0) throw ValidationError("filter_by_importance: w_min must be >= 0");
    std::erase_if(edges, [&](const CandidateEdge& e) {
        if (keep_ring && e.distance == 1) return false;
        return e.weight < w_min;
    });
    return edges;
}

namespace {

bool lex_less(const CandidateEdge& a, const CandidateEdge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
}

int max_vertex(const std::vector<CandidateEdge>& edges) {
    int m = -1;
    for (const auto& e : edges) m = std::max(m, e.j);
    return m;
}

PairingPlan make_plan(std::vector<CandidateEdge> selected) {
    std::sort(selected.begin(), selected.end(), lex_less);
    PairingPlan plan;
    plan.total_weight = 0.0;
    for (const auto& e : selected) plan.total_weight += e.weight;
    plan.edges = std::move(selected);
    return plan;
}

}  // namespace

PairingPlan select_subgraph_greedy(std::vector<CandidateEdge> edges, int b) {
    if (b < 1) throw ValidationError("select_subgraph_greedy: b must be >= 1");
    std::sort(edges.begin(), edges.end(), [](const CandidateEdge& a, const CandidateEdge& c) {
        if (a.weight != c.weight) return a.weight > c.weight;
        return lex_less(a, c);
    });
    std::vector<int> degree(static_cast<std::size_t>(max_vertex(edges) + 1), 0);
    std::vector<CandidateEdge> selected;
    for (const auto& e : edges) {
        if (degree[e.i] < b && degree[e.j] < b) {
            ++degree[e.i];
            ++degree[e.j];
            selected.push_back(e);
        }
    }
    return make_plan(std::move(selected));
}

PairingPlan select_subgraph_exact(std::vector<CandidateEdge> edges, int b, int max_edges) {
    if (b < 1) throw ValidationError("select_subgraph_exact: b must be >= 1");
    if (max_edges < 1 || max_edges > 30)
        throw ValidationError("select_subgraph_exact: max_edges must be in [1, 30]");
    const int m = static_cast<int>(edges.size());
    if (m > max_edges) {
        std::ostringstream os;
        os << "select_subgraph_exact: " << m << " edges exceed the exhaustive bound of "
           << max_edges;
        throw CapacityError(os.str());
    }
    std::sort(edges.begin(), edges.end(), lex_less);
    const int nv = max_vertex(edges) + 1;

    std::vector<int> degree(std::max(nv, 1), 0);
    std::vector<int> subset;        // scratch, reused across masks
    std::vector<int> best_subset;   // edge indices, ascending
    double best_weight = 0.0;       // empty set is feasible with weight 0
    subset.reserve(m);
    best_subset.reserve(m);

    // Subsets are enumerated by bitmask; sums accumulate in ascending edge
    // index order so ties compare identically across implementations.
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::fill(degree.begin(), degree.end(), 0);
        double weight = 0.0;
        subset.clear();
        bool feasible = true;
        for (int idx = 0; idx < m; ++idx) {
            if (!(mask & (1u << idx))) continue;
            const auto& e = edges[idx];
            if (++degree[e.i] > b || ++degree[e.j] > b) {
                feasible = false;
                break;
            }
            weight += e.weight;
            subset.push_back(idx);
        }
        if (!feasible) continue;
        if (weight > best_weight ||
            (weight == best_weight &&
             std::lexicographical_compare(subset.begin(), subset.end(), best_subset.begin(),
                                          best_subset.end()))) {
            best_weight = weight;
            best_subset = subset;
        }
    }

    std::vector<CandidateEdge> selected;
    selected.reserve(best_subset.size());
    for (int idx : best_subset) selected.push_back(edges[idx]);
    return make_plan(std::move(selected));
}

std::vector<std::pair<int, int>> expand_to_directed_pairs(const PairingPlan& plan,
                                                          PairDirection mode) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(plan.edges.size() * (mode == PairDirection::both ? 2 : 1));
    for (const auto& e : plan.edges) {
        pairs.emplace_back(e.i, e.j);
        if (mode == PairDirection::both) pairs.emplace_back(e.j, e.i);
    }
    return pairs;
}

ConnectivityReport check_connectivity(const PairingPlan& plan, int n) {
    if (n < 1) throw ValidationError("check_connectivity: n must be >= 1");
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    int components = n;
    for (const auto& e : plan.edges) {
        if (e.i >= n || e.j >= n)
            throw ValidationError("check_connectivity: edge endpoint outside [0, n)");
        const int a = find(e.i);
        const int b = find(e.j);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return ConnectivityReport{components == 1, components};
}

PairingPlan plan_gaps(const PairingProblem& problem, bool keep_ring, PairDirection mode) {
    auto candidates = generate_candidates(problem);
    candidates = filter_by_importance(std::move(candidates), problem.params.w_min, keep_ring);

    PairingPlan plan;
    if (keep_ring && problem.degree_budget >= 2) {
        // Ring edges saturate every vertex at degree 2, so b >= 2 admits the
        // whole cycle. Seating it before the chord scan makes spanning
        // connectivity unconditional whenever 1 is among the offsets, even
        // for weightings that rank chords above ring edges.
        std::vector<CandidateEdge> chords;
        std::vector<CandidateEdge> selected;
        std::vector<int> degree(static_cast<std::size_t>(problem.n), 0);
        for (auto& e : candidates) {
            if (e.distance == 1) {
                ++degree[e.i];
                ++degree[e.j];
                selected.push_back(e);
            } else {
                chords.push_back(e);
            }
        }
        std::sort(chords.begin(), chords.end(),
                  [](const CandidateEdge& a, const CandidateEdge& c) {
                      if (a.weight != c.weight) return a.weight > c.weight;
                      return lex_less(a, c);
                  });
        for (const auto& e : chords) {
            if (degree[e.i] < problem.degree_budget && degree[e.j] < problem.degree_budget) {
                ++degree[e.i];
                ++degree[e.j];
                selected.push_back(e);
            }
        }
        plan = make_plan(std::move(selected));
    } else {
        plan = select_subgraph_greedy(std::move(candidates), problem.degree_budget);
    }
    plan.directed = expand_to_directed_pairs(plan, mode);
    return plan;
}

}  // namespace pairplan
