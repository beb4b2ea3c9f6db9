#include "pairplan/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "pairplan/baselines.hpp"
#include "pairplan/config.hpp"
#include "pairplan/errors.hpp"
#include "pairplan/image_io.hpp"
#include "pairplan/logging.hpp"
#include "pairplan/serialize.hpp"
#include "pairplan/splat.hpp"
#include "pairplan/view_graph.hpp"
#include "pairplan/wavelet.hpp"

namespace fs = std::filesystem;

namespace pairplan {

namespace {

RunConfig load_config(const std::string& path) {
    if (path.empty()) return RunConfig{};
    return RunConfig::load(path);
}

std::vector<std::string> list_view_files(const std::string& dir) {
    if (!fs::is_directory(dir)) throw IoError("views directory '" + dir + "' does not exist");
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".png") files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());  // lexicographic capture order
    if (files.size() < 2)
        throw ValidationError("views directory '" + dir + "' holds fewer than 2 png images");
    return files;
}

// 32x32 grayscale box-downsample, mean-subtracted.
FeatureVector descriptor_from_image(const Image& image, int view_index) {
    constexpr int kSide = 32;
    FeatureVector feature;
    feature.source_view = view_index;
    feature.values.assign(kSide * kSide, 0.0);
    for (int by = 0; by < kSide; ++by) {
        const int y0 = by * image.height / kSide;
        const int y1 = std::max(y0 + 1, (by + 1) * image.height / kSide);
        for (int bx = 0; bx < kSide; ++bx) {
            const int x0 = bx * image.width / kSide;
            const int x1 = std::max(x0 + 1, (bx + 1) * image.width / kSide);
            double sum = 0.0;
            for (int y = y0; y < y1 && y < image.height; ++y)
                for (int x = x0; x < x1 && x < image.width; ++x)
                    for (int c = 0; c < image.channels; ++c) sum += image.at(c, y, x);
            const int cells = (std::min(y1, image.height) - y0) *
                              (std::min(x1, image.width) - x0) * image.channels;
            feature.values[static_cast<std::size_t>(by) * kSide + bx] =
                cells > 0 ? sum / cells : 0.0;
        }
    }
    double mean = 0.0;
    for (double v : feature.values) mean += v;
    mean /= static_cast<double>(feature.values.size());
    for (double& v : feature.values) v -= mean;
    return feature;
}

double cosine_similarity(const FeatureVector& a, const FeatureVector& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        dot += a.values[k] * b.values[k];
        na += a.values[k] * a.values[k];
        nb += b.values[k] * b.values[k];
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<CandidateEdge> annotate_edges(const std::set<std::pair<int, int>>& undirected, int n,
                                          double weight) {
    const ImportanceParams params = ImportanceParams::defaults_for(n);
    std::vector<CandidateEdge> edges;
    edges.reserve(undirected.size());
    for (const auto& [i, j] : undirected) {
        CandidateEdge e;
        e.i = i;
        e.j = j;
        e.distance = circular_distance(i, j, n);
        e.range = classify_range(e.distance, params);
        e.weight = weight;
        edges.push_back(e);
    }
    return edges;
}

std::set<std::pair<int, int>> canonical_set(const std::vector<std::pair<int, int>>& pairs) {
    std::set<std::pair<int, int>> out;
    for (const auto& [s, t] : pairs) out.insert({std::min(s, t), std::max(s, t)});
    return out;
}

PlanDocument build_plan_document(const RunConfig& cfg, int n,
                                 const std::vector<FeatureVector>* features) {
    if (n < 2) throw ValidationError("pair planning needs at least 2 views");
    std::vector<CandidateEdge> edges;
    if (cfg.strategy == "gaps") {
        PairingProblem problem = cfg.problem_for(n);
        PairingPlan plan = plan_gaps(problem, cfg.keep_ring, cfg.mode);
        edges = plan.edges;
    } else if (cfg.strategy == "complete") {
        edges = annotate_edges(canonical_set(complete_pairs(n)), n, 1.0);
    } else if (cfg.strategy == "oneref") {
        const int ref = cfg.baseline.reference.value_or(n / 2);
        if (ref >= n)
            throw ValidationError("config field 'baseline.reference' is out of range for n=" +
                                  std::to_string(n));
        edges = annotate_edges(canonical_set(oneref_pairs(n, ref)), n, 1.0);
    } else if (cfg.strategy == "window") {
        edges = annotate_edges(canonical_set(window_pairs(n, cfg.baseline.window)), n, 1.0);
    } else if (cfg.strategy == "cosine") {
        if (!features)
            throw ValidationError("cosine strategy requires --views-dir with readable images");
        const auto pairs = cosine_pairs(*features, cfg.baseline.top_k, cfg.baseline.sim_min);
        edges = annotate_edges(canonical_set(pairs), n, 0.0);
        for (auto& e : edges)
            e.weight = cosine_similarity((*features)[static_cast<std::size_t>(e.i)],
                                         (*features)[static_cast<std::size_t>(e.j)]);
    } else {
        throw ValidationError("unknown strategy '" + cfg.strategy + "'");
    }
    return make_plan_document(cfg.strategy, n, cfg.mode, edges, cfg.cost.base_mb,
                              cfg.cost.per_pair_mb);
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
    } else {
        write_text_file(out_path, text);
    }
}

struct PlanArgs {
    std::string config_path;
    std::string strategy;
    int n = 0;
    std::string views_dir;
    std::string out_path;
    std::string mode;
    std::string format = "json";
};

void cmd_plan(const PlanArgs& a, std::ostream& out) {
    RunConfig cfg = load_config(a.config_path);
    if (!a.strategy.empty()) cfg.strategy = a.strategy;
    if (!a.mode.empty()) cfg.mode = pair_direction_from_name(a.mode);
    cfg.validate();

    if (a.n > 0 && !a.views_dir.empty())
        throw ValidationError("give either --n or --views-dir, not both");
    if (a.n <= 0 && a.views_dir.empty())
        throw ValidationError("plan needs --n or --views-dir");

    int n = a.n;
    std::vector<FeatureVector> features;
    const std::vector<FeatureVector>* features_ptr = nullptr;
    if (!a.views_dir.empty()) {
        const auto files = list_view_files(a.views_dir);
        n = static_cast<int>(files.size());
        if (cfg.strategy == "cosine") {
            for (std::size_t k = 0; k < files.size(); ++k)
                features.push_back(descriptor_from_image(read_png(files[k]),
                                                         static_cast<int>(k)));
            features_ptr = &features;
        }
        log_info("planning over " + std::to_string(n) + " views from " + a.views_dir);
    } else if (cfg.strategy == "cosine") {
        throw ValidationError("cosine strategy requires --views-dir with readable images");
    }

    const PlanDocument doc = build_plan_document(cfg, n, features_ptr);
    if (a.format == "json") {
        emit(plan_document_to_json(doc).dump(2) + "\n", a.out_path, out);
    } else if (a.format == "dot") {
        emit(plan_document_to_dot(doc), a.out_path, out);
    } else {
        throw ValidationError("plan supports --format json or dot");
    }
}

struct CompareArgs {
    std::string config_path;
    std::vector<int> counts;
    std::string out_path;
    std::string format = "csv";
};

void cmd_compare(const CompareArgs& a, std::ostream& out) {
    RunConfig cfg = load_config(a.config_path);
    cfg.validate();
    if (a.format != "csv") throw ValidationError("compare supports --format csv");

    std::vector<int> counts = a.counts.empty() ? std::vector<int>{3, 6, 9, 12} : a.counts;
    std::sort(counts.begin(), counts.end());
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
    for (int n : counts)
        if (n < 2) throw ValidationError("compare needs view counts >= 2");

    // directed-pair counts under mode=both, the convention comparison tables use
    RunConfig table_cfg = cfg;
    table_cfg.mode = PairDirection::both;
    std::string csv = "strategy,n,pairs,cost_mb\n";
    char line[128];
    for (const char* strategy : {"complete", "oneref", "window", "gaps"}) {
        table_cfg.strategy = strategy;
        for (int n : counts) {
            const PlanDocument doc = build_plan_document(table_cfg, n, nullptr);
            std::snprintf(line, sizeof(line), "%s,%d,%zu,%.1f\n", strategy, n, doc.pairs.size(),
                          doc.estimated_cost_mb);
            csv += line;
        }
    }
    emit(csv, a.out_path, out);
}

struct RenderArgs {
    std::string config_path;
    std::string preset = "arch";
    std::uint64_t seed = 0;
    std::string out_dir;
};

void cmd_render(const RenderArgs& a, std::ostream& out) {
    load_config(a.config_path).validate();
    const FixtureScene scene = make_fixture_scene(a.preset, a.seed);

    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec || !fs::is_directory(a.out_dir))
        throw IoError("cannot create output directory '" + a.out_dir + "'");

    std::vector<FrameRecord> frames;
    char name[64];
    for (std::size_t k = 0; k < scene.cameras.size(); ++k) {
        const RenderedFrame frame = render(scene.primitives, scene.cameras[k], Vec3{});
        FrameRecord rec;
        rec.index = static_cast<int>(k);
        std::snprintf(name, sizeof(name), "frame_%02zu.png", k);
        rec.image = name;
        std::snprintf(name, sizeof(name), "depth_%02zu.f64", k);
        rec.depth = name;
        rec.camera = scene.cameras[k];
        write_png((fs::path(a.out_dir) / rec.image).string(), frame.color);
        write_grid_dump((fs::path(a.out_dir) / rec.depth).string(), frame.depth);
        frames.push_back(std::move(rec));
    }
    write_json_file((fs::path(a.out_dir) / "scene.json").string(), scene_to_json(scene));
    write_json_file((fs::path(a.out_dir) / "manifest.json").string(),
                    render_manifest_to_json(a.preset, a.seed, frames));
    out << "wrote " << frames.size() << " frames to " << a.out_dir << "\n";
}

Image load_image(const std::string& path) {
    std::string ext = fs::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png") return read_png(path);
    return read_image_dump(path);
}

struct LossArgs {
    std::string config_path;
    std::string gt_path;
    std::string rendered_path;
    std::string out_path;
};

void cmd_loss(const LossArgs& a, std::ostream& out) {
    RunConfig cfg = load_config(a.config_path);
    cfg.validate();
    const Image gt = load_image(a.gt_path);
    const Image rendered = load_image(a.rendered_path);
    if (!gt.same_shape(rendered)) {
        auto shape = [](const Image& im) {
            return std::to_string(im.height) + "x" + std::to_string(im.width) + "x" +
                   std::to_string(im.channels);
        };
        throw ValidationError("image shapes differ: gt is " + shape(gt) + ", rendered is " +
                              shape(rendered));
    }
    const LossBreakdown breakdown = combined_loss(gt, rendered, cfg.wavelet.spec,
                                                  cfg.wavelet.photometric_weight,
                                                  cfg.wavelet.wavelet_weight);
    emit(loss_report_to_json(breakdown).dump(2) + "\n", a.out_path, out);
}

struct DwtArgs {
    std::string config_path;
    std::string input_path;
    std::string out_dir;
};

void cmd_dwt(const DwtArgs& a, std::ostream& out) {
    RunConfig cfg = load_config(a.config_path);
    cfg.validate();
    const Image image = load_image(a.input_path);

    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec || !fs::is_directory(a.out_dir))
        throw IoError("cannot create output directory '" + a.out_dir + "'");

    std::vector<WaveletPyramid> pyramids;
    for (int c = 0; c < image.channels; ++c)
        pyramids.push_back(dwt2_multi(image.channel(c), cfg.wavelet.spec));

    // Bands stack across channels into one [C, bh, bw] dump per band.
    auto write_band = [&](const std::string& file, auto&& pick) {
        const Grid& first = pick(pyramids[0]);
        std::vector<double> data;
        data.reserve(pyramids.size() * first.size());
        for (const auto& pyr : pyramids) {
            const Grid& g = pick(pyr);
            data.insert(data.end(), g.data.begin(), g.data.end());
        }
        write_f64_dump((fs::path(a.out_dir) / file).string(),
                       {static_cast<int>(pyramids.size()), first.rows, first.cols}, data);
    };

    nlohmann::ordered_json index;
    index["filter"] = cfg.wavelet.spec.filter;
    index["levels"] = cfg.wavelet.spec.levels;
    index["input_shape"] = {image.channels, image.height, image.width};
    index["bands"] = nlohmann::ordered_json::array();

    write_band("ll.f64", [](const WaveletPyramid& p) -> const Grid& { return p.final_ll; });
    index["bands"].push_back({{"level", pyramids[0].level_count()}, {"band", "ll"},
                              {"file", "ll.f64"}});
    char file[64];
    for (std::size_t idx = 0; idx < pyramids[0].levels.size(); ++idx) {
        const int level = pyramids[0].level_number(idx);
        for (const char* band : {"lh", "hl", "hh"}) {
            std::snprintf(file, sizeof(file), "level%d_%s.f64", level, band);
            write_band(file, [&](const WaveletPyramid& p) -> const Grid& {
                const SubbandSet& bands = p.levels[idx];
                if (band[0] == 'l') return bands.lh;
                return band[1] == 'l' ? bands.hl : bands.hh;
            });
            index["bands"].push_back({{"level", level}, {"band", band}, {"file", file}});
        }
    }
    write_json_file((fs::path(a.out_dir) / "pyramid.json").string(), index);
    out << "wrote pyramid bands to " << a.out_dir << "\n";
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pair planning and wavelet-loss toolkit for sparse-view reconstruction"};
    app.require_subcommand(0, 1);

    PlanArgs plan_args;
    auto* plan = app.add_subcommand("plan", "select image pairs for one view set");
    plan->add_option("--config", plan_args.config_path, "JSON config file");
    plan->add_option("--strategy", plan_args.strategy,
                     "gaps, complete, oneref, cosine or window");
    plan->add_option("--n", plan_args.n, "number of views on the capture cycle");
    plan->add_option("--views-dir", plan_args.views_dir, "directory of png views");
    plan->add_option("--out", plan_args.out_path, "output file (default stdout)");
    plan->add_option("--mode", plan_args.mode, "pair direction: both or forward");
    plan->add_option("--format", plan_args.format, "json or dot");

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "tabulate pair counts and cost by strategy");
    compare->add_option("--config", compare_args.config_path, "JSON config file");
    compare->add_option("--n", compare_args.counts, "view counts (repeatable)");
    compare->add_option("--out", compare_args.out_path, "output file (default stdout)");
    compare->add_option("--format", compare_args.format, "csv");

    RenderArgs render_args;
    auto* render = app.add_subcommand("render", "render a synthetic fixture scene");
    render->add_option("--config", render_args.config_path, "JSON config file");
    render->add_option("--preset", render_args.preset, "fixture preset: arch or triad");
    render->add_option("--seed", render_args.seed, "scene jitter seed");
    render->add_option("--out", render_args.out_dir, "output directory")->required();

    LossArgs loss_args;
    auto* loss = app.add_subcommand("loss", "evaluate the combined image loss");
    loss->add_option("--config", loss_args.config_path, "JSON config file");
    loss->add_option("--gt", loss_args.gt_path, "ground-truth image (png or f64 dump)")
        ->required();
    loss->add_option("--rendered", loss_args.rendered_path, "rendered image (png or f64 dump)")
        ->required();
    loss->add_option("--out", loss_args.out_path, "output file (default stdout)");

    DwtArgs dwt_args;
    auto* dwt = app.add_subcommand("dwt", "dump the wavelet pyramid of one image");
    dwt->add_option("--config", dwt_args.config_path, "JSON config file");
    dwt->add_option("--input", dwt_args.input_path, "image (png or f64 dump)")->required();
    dwt->add_option("--out", dwt_args.out_dir, "output directory")->required();

    std::vector<const char*> argv;
    argv.push_back("pairplan");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (app.get_subcommands().empty()) {
            out << app.help();
            return 0;
        }
        if (plan->parsed()) cmd_plan(plan_args, out);
        if (compare->parsed()) cmd_compare(compare_args, out);
        if (render->parsed()) cmd_render(render_args, out);
        if (loss->parsed()) cmd_loss(loss_args, out);
        if (dwt->parsed()) cmd_dwt(dwt_args, out);
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace pairplan
