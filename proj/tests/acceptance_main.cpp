// End-to-end acceptance gate. Each numbered check prints one PASS/FAIL line;
// the process exits nonzero if any check fails or overruns its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "pairplan/baselines.hpp"
#include "pairplan/splat.hpp"
#include "pairplan/view_graph.hpp"
#include "pairplan/wavelet.hpp"

using namespace pairplan;

namespace {

// ---- criterion 1: baseline pair counts ------------------------------------

bool check_baseline_counts(std::string& detail) {
    const int ns[] = {3, 6, 9, 12};
    const std::size_t complete_expect[] = {6, 30, 72, 132};
    const std::size_t oneref_expect[] = {4, 10, 16, 22};
    bool ok = true;
    for (int k = 0; k < 4; ++k) {
        ok = ok && complete_pairs(ns[k]).size() == complete_expect[k];
        ok = ok && oneref_pairs(ns[k], ns[k] / 2).size() == oneref_expect[k];
    }
    detail = "complete 6/30/72/132 and oneref 4/10/16/22 directed pairs";
    return ok;
}

// ---- criterion 2: exact selection vs an independent oracle ----------------

// Exhaustive include-first DFS over edge subsets under the degree budget.
// Weights accumulate in ascending edge-index order and ties keep the first
// (lexicographically smallest) subset, so agreement must be bit-for-bit.
struct SubsetOracle {
    const std::vector<CandidateEdge>& edges;
    int b;
    std::vector<int> degree;
    std::vector<std::size_t> current, best;
    double best_weight = 0.0;
    bool has_best = false;

    SubsetOracle(const std::vector<CandidateEdge>& e, int budget, int n)
        : edges(e), b(budget), degree(static_cast<std::size_t>(n), 0) {}

    void run() { visit(0, 0.0); }

    void visit(std::size_t idx, double weight) {
        if (idx == edges.size()) {
            if (!has_best || weight > best_weight) {
                best = current;
                best_weight = weight;
                has_best = true;
            }
            return;
        }
        const CandidateEdge& e = edges[idx];
        auto& di = degree[static_cast<std::size_t>(e.i)];
        auto& dj = degree[static_cast<std::size_t>(e.j)];
        if (di < b && dj < b) {
            ++di;
            ++dj;
            current.push_back(idx);
            visit(idx + 1, weight + e.weight);
            current.pop_back();
            --di;
            --dj;
        }
        visit(idx + 1, weight);
    }
};

std::vector<CandidateEdge> random_edge_set(std::mt19937_64& rng, int n, int max_edges) {
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all.push_back({i, j});
    std::shuffle(all.begin(), all.end(), rng);
    std::uniform_int_distribution<int> m_dist(1, std::min<int>(max_edges, static_cast<int>(all.size())));
    all.resize(static_cast<std::size_t>(m_dist(rng)));
    std::sort(all.begin(), all.end());

    const ImportanceParams params = ImportanceParams::defaults_for(n);
    std::uniform_real_distribution<double> w_dist(0.01, 1.0);
    std::vector<CandidateEdge> edges;
    for (const auto& [i, j] : all) {
        CandidateEdge e;
        e.i = i;
        e.j = j;
        e.distance = circular_distance(i, j, n);
        e.range = classify_range(e.distance, params);
        e.weight = w_dist(rng);
        edges.push_back(e);
    }
    return edges;
}

bool check_exact_selection(std::string& detail) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> n_dist(4, 12);
    std::uniform_int_distribution<int> b_dist(1, 4);
    const int trials = 240;
    double min_ratio = 1.0, ratio_sum = 0.0;
    int optimal_count = 0;
    for (int t = 0; t < trials; ++t) {
        const int n = n_dist(rng);
        const int b = b_dist(rng);
        const std::vector<CandidateEdge> edges = random_edge_set(rng, n, 20);

        SubsetOracle oracle(edges, b, n);
        oracle.run();
        const PairingPlan exact = select_subgraph_exact(edges, b);

        if (exact.total_weight != oracle.best_weight) return false;
        if (exact.edges.size() != oracle.best.size()) return false;
        for (std::size_t k = 0; k < oracle.best.size(); ++k) {
            const CandidateEdge& want = edges[oracle.best[k]];
            if (exact.edges[k].i != want.i || exact.edges[k].j != want.j) return false;
        }

        const PairingPlan greedy = select_subgraph_greedy(edges, b);
        const double ratio =
            oracle.best_weight > 0.0 ? greedy.total_weight / oracle.best_weight : 1.0;
        if (ratio < 0.5) return false;
        min_ratio = std::min(min_ratio, ratio);
        ratio_sum += ratio;
        if (greedy.total_weight == oracle.best_weight) ++optimal_count;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%d instances bit-for-bit; greedy/exact ratio min %.4f mean %.4f, optimal on %d",
                  trials, min_ratio, ratio_sum / trials, optimal_count);
    detail = buf;
    return true;
}

// ---- criterion 3: degree and connectivity invariants -----------------------

bool plan_connected(const PairingPlan& plan, int n) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& e : plan.edges) {
        adj[static_cast<std::size_t>(e.i)].push_back(e.j);
        adj[static_cast<std::size_t>(e.j)].push_back(e.i);
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == n;
}

bool check_plan_invariants(std::string& detail) {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> n_dist(4, 40);
    std::uniform_int_distribution<int> b_dist(2, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int trials = 1000;
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        const int n = n_dist(rng);
        PairingProblem problem;
        problem.n = n;
        problem.offsets = {1};
        for (int d = 2; d <= n / 2; ++d)
            if (unit(rng) < 0.4) problem.offsets.push_back(d);
        problem.degree_budget = b_dist(rng);

        ImportanceParams params = ImportanceParams::defaults_for(n);
        params.tau = 0.2 + 7.8 * unit(rng);
        for (auto& a : params.alpha) a = 2.0 * unit(rng);
        for (auto& b2 : params.beta) b2 = unit(rng) - 0.5;
        params.w_min = 0.3 * unit(rng);
        problem.params = params;

        const PairingPlan plan = plan_gaps(problem, true, PairDirection::both);

        std::vector<int> degree(static_cast<std::size_t>(n), 0);
        for (const auto& e : plan.edges) {
            ++degree[static_cast<std::size_t>(e.i)];
            ++degree[static_cast<std::size_t>(e.j)];
        }
        const bool degree_ok =
            *std::max_element(degree.begin(), degree.end()) <= problem.degree_budget;
        if (!degree_ok || !plan_connected(plan, n)) ++violations;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d randomized runs, %d violations", trials, violations);
    detail = buf;
    return violations == 0;
}

// ---- criterion 4: perfect reconstruction and Parseval ----------------------

double sum_squares(const Grid& g) {
    double s = 0.0;
    for (double v : g.data) s += v * v;
    return s;
}

bool check_dwt_roundtrip(std::string& detail) {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> half_dist(1, 32);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::uniform_int_distribution<int> level_dist(1, 3);
    double worst_roundtrip = 0.0, worst_parseval = 0.0;
    for (const char* filter_name : {"haar", "db4"}) {
        for (int t = 0; t < 100; ++t) {
            const int rows = 2 * half_dist(rng);
            const int cols = 2 * half_dist(rng);
            Grid image(rows, cols);
            for (double& v : image.data) v = val(rng);

            int max_levels = 0;
            while (rows % (1 << (max_levels + 1)) == 0 && cols % (1 << (max_levels + 1)) == 0)
                ++max_levels;
            BandLossSpec spec;
            spec.filter = filter_name;
            spec.levels = std::min(level_dist(rng), max_levels);

            const WaveletPyramid pyramid = dwt2_multi(image, spec);
            const Grid back = idwt2_multi(pyramid, spec.resolve_filter());
            if (!back.same_shape(image)) return false;
            for (std::size_t k = 0; k < image.data.size(); ++k)
                worst_roundtrip =
                    std::max(worst_roundtrip, std::abs(back.data[k] - image.data[k]));

            double coeff_energy = sum_squares(pyramid.final_ll);
            for (const auto& bands : pyramid.levels)
                coeff_energy +=
                    sum_squares(bands.lh) + sum_squares(bands.hl) + sum_squares(bands.hh);
            const double image_energy = sum_squares(image);
            worst_parseval = std::max(
                worst_parseval, std::abs(coeff_energy - image_energy) / std::max(image_energy, 1e-12));
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "haar+db4, 200 images; max roundtrip %.3e, max Parseval residual %.3e",
                  worst_roundtrip, worst_parseval);
    detail = buf;
    return worst_roundtrip <= 1e-9 && worst_parseval <= 1e-9;
}

// ---- criterion 5: analytic gradient vs central differences -----------------

bool check_loss_gradient(std::string& detail) {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> val(0.0, 1.0);
    const BandLossSpec spec;  // defaults: haar, two levels
    const double step = 1e-5;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        Image gt(16, 16, 1), rendered(16, 16, 1);
        for (double& v : gt.data) v = val(rng);
        for (double& v : rendered.data) v = val(rng);

        const Image grad = wavelet_loss_grad(gt, rendered, spec);
        for (std::size_t k = 0; k < rendered.data.size(); ++k) {
            Image probe = rendered;
            probe.data[k] = rendered.data[k] + step;
            const double up = wavelet_loss(gt, probe, spec);
            probe.data[k] = rendered.data[k] - step;
            const double down = wavelet_loss(gt, probe, spec);
            const double fd = (up - down) / (2.0 * step);
            const double denom = std::max({std::abs(grad.data[k]), std::abs(fd), 1e-6});
            worst = std::max(worst, std::abs(grad.data[k] - fd) / denom);
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "100 random 16x16 pairs, max relative error %.3e", worst);
    detail = buf;
    return worst <= 1e-4;
}

// ---- criterion 6: renderer contract ----------------------------------------

PinholeCamera forward_camera() {
    PinholeCamera cam;
    cam.fx = cam.fy = 50.0;
    cam.width = cam.height = 17;
    cam.cx = cam.cy = 8.0;
    return cam;
}

bool frames_identical(const RenderedFrame& a, const RenderedFrame& b) {
    return a.color.data == b.color.data && a.depth.data == b.depth.data &&
           a.alpha.data == b.alpha.data;
}

bool check_renderer_contract(std::string& detail) {
    // opaque on-ray gaussian: exact color and camera-space depth
    GaussianPrimitive g;
    g.mu = {0.0, 0.0, 2.0};
    g.scale = {0.05, 0.05, 0.05};
    g.opacity = 1.0;
    g.color = {0.2, 0.7, 0.4};
    const PinholeCamera cam = forward_camera();
    const RenderedFrame frame = render({g}, cam, Vec3{});
    const int cy = cam.height / 2, cx = cam.width / 2;
    bool ok = std::abs(frame.color.at(0, cy, cx) - 0.2) <= 1e-6 &&
              std::abs(frame.color.at(1, cy, cx) - 0.7) <= 1e-6 &&
              std::abs(frame.color.at(2, cy, cx) - 0.4) <= 1e-6 &&
              std::abs(frame.depth.at(cy, cx) - 2.0) <= 1e-6;

    // permutation of the input order must not change any pixel
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> pos(-0.5, 0.5), s_dist(0.02, 0.2), unit(0.0, 1.0);
    std::vector<GaussianPrimitive> scene;
    for (int k = 0; k < 25; ++k) {
        GaussianPrimitive p;
        p.mu = {pos(rng), pos(rng), 2.0 + pos(rng)};
        p.scale = {s_dist(rng), s_dist(rng), s_dist(rng)};
        p.opacity = unit(rng);
        p.color = {unit(rng), unit(rng), unit(rng)};
        scene.push_back(p);
    }
    const RenderedFrame before = render(scene, cam, Vec3{0.1, 0.1, 0.1});
    std::shuffle(scene.begin(), scene.end(), rng);
    ok = ok && frames_identical(before, render(scene, cam, Vec3{0.1, 0.1, 0.1}));

    // moving scene and cameras by one rigid transform leaves renders alone
    const FixtureScene fixture = make_fixture_scene("arch", 7);
    const Quat r = Quat::from_axis_angle(Vec3{0.3, -0.8, 0.52}.normalized(), 1.17);
    const Mat3 rm = r.to_matrix();
    const Vec3 t{1.5, -0.7, 0.9};
    std::vector<GaussianPrimitive> moved = fixture.primitives;
    for (auto& p : moved) {
        p.mu = rm * p.mu + t;
        p.rotation = (r * p.rotation).normalized();
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < fixture.cameras.size(); k += 4) {
        PinholeCamera moved_cam = fixture.cameras[k];
        moved_cam.position = rm * moved_cam.position + t;
        moved_cam.orientation = (r * moved_cam.orientation).normalized();
        const RenderedFrame base = render(fixture.primitives, fixture.cameras[k], Vec3{});
        const RenderedFrame after = render(moved, moved_cam, Vec3{});
        for (std::size_t i = 0; i < base.color.data.size(); ++i)
            worst = std::max(worst, std::abs(base.color.data[i] - after.color.data[i]));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "rigid-transform max pixel deviation %.3e", worst);
    detail = buf;
    return ok && worst <= 1e-6;
}

// ---- criterion 7: render, plan, perturb, score ------------------------------

struct PipelineRun {
    std::vector<std::vector<double>> losses;  // [view][amplitude]
    RenderedFrame first_frame;
    std::size_t pair_count = 0;
};

PipelineRun run_pipeline() {
    const FixtureScene fixture = make_fixture_scene("arch", 7);
    PipelineRun run;

    const PairingProblem problem = PairingProblem::with_defaults(static_cast<int>(fixture.cameras.size()));
    const PairingPlan plan = plan_gaps(problem, true, PairDirection::both);
    run.pair_count = plan.directed ? plan.directed->size() : 0;

    const BandLossSpec spec;
    const double amplitudes[] = {0.16, 0.08, 0.04, 0.02, 0.01};
    for (std::size_t v = 0; v < fixture.cameras.size(); ++v) {
        const RenderedFrame frame = render(fixture.primitives, fixture.cameras[v], Vec3{});
        if (v == 0) run.first_frame = frame;

        std::mt19937_64 noise_rng(1000 + v);
        std::uniform_real_distribution<double> noise(-1.0, 1.0);
        Image eta(frame.color.height, frame.color.width, frame.color.channels);
        for (double& e : eta.data) e = noise(noise_rng);

        std::vector<double> view_losses;
        for (double a : amplitudes) {
            Image noisy = frame.color;
            for (std::size_t k = 0; k < noisy.data.size(); ++k) noisy.data[k] += a * eta.data[k];
            view_losses.push_back(wavelet_loss(frame.color, noisy, spec));
        }
        run.losses.push_back(std::move(view_losses));
    }
    return run;
}

bool check_pipeline(std::string& detail) {
    const PipelineRun first = run_pipeline();
    const PipelineRun second = run_pipeline();

    bool monotone = true;
    for (const auto& view_losses : first.losses)
        for (std::size_t k = 0; k + 1 < view_losses.size(); ++k)
            monotone = monotone && view_losses[k] > view_losses[k + 1];

    bool deterministic = first.losses == second.losses &&
                         frames_identical(first.first_frame, second.first_frame);

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "12 views, 5 amplitudes, %zu planned pairs; monotone %s, deterministic %s",
                  first.pair_count, monotone ? "yes" : "no", deterministic ? "yes" : "no");
    detail = buf;
    return monotone && deterministic && first.losses.size() == 12 && first.pair_count > 0;
}

// ---- criterion 8: out-of-scope results disclosure ---------------------------

bool check_disclosure(std::string& detail) {
    detail =
        "PSNR/SSIM/LPIPS benchmark tables need clinical captures, pretrained DUSt3R weights "
        "and GPU splat training; they are out of scope here and checks 1-7 verify the "
        "algorithmic properties instead";
    return true;
}

struct Criterion {
    const char* label;
    bool (*fn)(std::string&);
    double budget_seconds;  // 0 means unenforced
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"baseline pair counts", check_baseline_counts, 1.0},
        {"b-matching exact oracle and greedy bound", check_exact_selection, 60.0},
        {"plan degree and connectivity invariants", check_plan_invariants, 0.0},
        {"dwt reconstruction and energy preservation", check_dwt_roundtrip, 10.0},
        {"wavelet loss gradient vs finite differences", check_loss_gradient, 30.0},
        {"renderer contract", check_renderer_contract, 0.0},
        {"render-plan-perturb-score pipeline", check_pipeline, 0.0},
        {"non-reproducible metrics disclosure", check_disclosure, 0.0},
    };

    int failures = 0;
    for (std::size_t k = 0; k < std::size(criteria); ++k) {
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[k].fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criteria[k].budget_seconds > 0.0 && seconds >= criteria[k].budget_seconds) {
            ok = false;
            detail += " [over time budget]";
        }
        if (!ok) ++failures;
        std::printf("[%zu] %s: %s (%.2f s) %s\n", k + 1, criteria[k].label,
                    ok ? "PASS" : "FAIL", seconds, detail.c_str());
    }
    if (failures) std::printf("%d of 8 checks failed\n", failures);
    else std::printf("all 8 checks passed\n");
    return failures == 0 ? 0 : 1;
}
