#include "pairplan/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

#include "pairplan/errors.hpp"

namespace pairplan {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known)
            throw ValidationError("unknown config key '" + context + it.key() + "'");
    }
}

const json& expect_object(const json& obj, const std::string& context) {
    if (!obj.is_object()) throw ValidationError("config field '" + context + "' must be an object");
    return obj;
}

double get_double(const json& obj, const char* key, double fallback, const std::string& context) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ValidationError("config field '" + context + key + "' must be a number");
    return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& context) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw ValidationError("config field '" + context + key + "' must be an integer");
    return v.get<int>();
}

bool get_bool(const json& obj, const char* key, bool fallback, const std::string& context) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ValidationError("config field '" + context + key + "' must be a boolean");
    return v.get<bool>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& context) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ValidationError("config field '" + context + key + "' must be a string");
    return v.get<std::string>();
}

std::array<double, 3> get_range_triple(const json& obj, const char* key,
                                       const std::array<double, 3>& fallback,
                                       const std::string& context) {
    if (!obj.contains(key)) return fallback;
    const json& v = expect_object(obj.at(key), context + key);
    const std::string inner = context + std::string(key) + ".";
    check_keys(v, {"local", "medium", "long"}, inner);
    std::array<double, 3> out = fallback;
    out[0] = get_double(v, "local", out[0], inner);
    out[1] = get_double(v, "medium", out[1], inner);
    out[2] = get_double(v, "long", out[2], inner);
    return out;
}

void parse_gaps(const json& obj, RunConfig& cfg) {
    const std::string ctx = "gaps.";
    check_keys(obj,
               {"offsets", "tau", "alpha", "beta", "local_max", "medium_max", "w_min",
                "degree_budget", "keep_ring"},
               ctx);
    if (obj.contains("offsets")) {
        const json& arr = obj.at("offsets");
        if (!arr.is_array()) throw ValidationError("config field 'gaps.offsets' must be an array");
        std::vector<int> offsets;
        for (const auto& v : arr) {
            if (!v.is_number_integer())
                throw ValidationError("config field 'gaps.offsets' must hold integers");
            offsets.push_back(v.get<int>());
        }
        cfg.offsets = std::move(offsets);
    }
    cfg.tau = get_double(obj, "tau", cfg.tau, ctx);
    cfg.alpha = get_range_triple(obj, "alpha", cfg.alpha, ctx);
    cfg.beta = get_range_triple(obj, "beta", cfg.beta, ctx);
    if (obj.contains("local_max")) cfg.local_max = get_int(obj, "local_max", 0, ctx);
    if (obj.contains("medium_max")) cfg.medium_max = get_int(obj, "medium_max", 0, ctx);
    cfg.w_min = get_double(obj, "w_min", cfg.w_min, ctx);
    cfg.degree_budget = get_int(obj, "degree_budget", cfg.degree_budget, ctx);
    cfg.keep_ring = get_bool(obj, "keep_ring", cfg.keep_ring, ctx);
}

void parse_baseline(const json& obj, BaselineOptions& opt) {
    const std::string ctx = "baseline.";
    check_keys(obj, {"reference", "window", "top_k", "sim_min"}, ctx);
    if (obj.contains("reference")) opt.reference = get_int(obj, "reference", 0, ctx);
    opt.window = get_int(obj, "window", opt.window, ctx);
    opt.top_k = get_int(obj, "top_k", opt.top_k, ctx);
    opt.sim_min = get_double(obj, "sim_min", opt.sim_min, ctx);
}

void parse_wavelet(const json& obj, WaveletOptions& opt) {
    const std::string ctx = "wavelet.";
    check_keys(obj, {"filter", "levels", "lambda", "photometric_weight", "wavelet_weight"}, ctx);
    opt.spec.filter = get_string(obj, "filter", opt.spec.filter, ctx);
    opt.spec.levels = get_int(obj, "levels", opt.spec.levels, ctx);
    if (obj.contains("lambda")) {
        const json& lam = expect_object(obj.at("lambda"), "wavelet.lambda");
        const std::string inner = "wavelet.lambda.";
        check_keys(lam, {"ll", "lh", "hl", "hh"}, inner);
        opt.spec.lambda.ll = get_double(lam, "ll", opt.spec.lambda.ll, inner);
        opt.spec.lambda.lh = get_double(lam, "lh", opt.spec.lambda.lh, inner);
        opt.spec.lambda.hl = get_double(lam, "hl", opt.spec.lambda.hl, inner);
        opt.spec.lambda.hh = get_double(lam, "hh", opt.spec.lambda.hh, inner);
    }
    opt.photometric_weight = get_double(obj, "photometric_weight", opt.photometric_weight, ctx);
    opt.wavelet_weight = get_double(obj, "wavelet_weight", opt.wavelet_weight, ctx);
}

void parse_cost(const json& obj, CostModel& cost) {
    const std::string ctx = "cost.";
    check_keys(obj, {"base_mb", "per_pair_mb"}, ctx);
    cost.base_mb = get_double(obj, "base_mb", cost.base_mb, ctx);
    cost.per_pair_mb = get_double(obj, "per_pair_mb", cost.per_pair_mb, ctx);
}

void parse_io(const json& obj, IoOptions& io) {
    const std::string ctx = "io.";
    check_keys(obj, {"out", "views_dir"}, ctx);
    io.out = get_string(obj, "out", io.out, ctx);
    io.views_dir = get_string(obj, "views_dir", io.views_dir, ctx);
}

}  // namespace

RunConfig RunConfig::from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("config root must be a JSON object");
    check_keys(doc, {"strategy", "mode", "gaps", "baseline", "wavelet", "cost", "io"}, "");

    RunConfig cfg;
    cfg.strategy = get_string(doc, "strategy", cfg.strategy, "");
    const std::string mode = get_string(doc, "mode", "both", "");
    if (mode == "both") {
        cfg.mode = PairDirection::both;
    } else if (mode == "forward") {
        cfg.mode = PairDirection::forward;
    } else {
        throw ValidationError("config field 'mode' must be 'both' or 'forward'");
    }
    if (doc.contains("gaps")) parse_gaps(expect_object(doc.at("gaps"), "gaps"), cfg);
    if (doc.contains("baseline"))
        parse_baseline(expect_object(doc.at("baseline"), "baseline"), cfg.baseline);
    if (doc.contains("wavelet"))
        parse_wavelet(expect_object(doc.at("wavelet"), "wavelet"), cfg.wavelet);
    if (doc.contains("cost")) parse_cost(expect_object(doc.at("cost"), "cost"), cfg.cost);
    if (doc.contains("io")) parse_io(expect_object(doc.at("io"), "io"), cfg.io);
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(doc);
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json doc;
    doc["strategy"] = strategy;
    doc["mode"] = mode == PairDirection::both ? "both" : "forward";

    nlohmann::ordered_json gaps;
    if (offsets) gaps["offsets"] = *offsets;
    gaps["tau"] = tau;
    gaps["alpha"] = {{"local", alpha[0]}, {"medium", alpha[1]}, {"long", alpha[2]}};
    gaps["beta"] = {{"local", beta[0]}, {"medium", beta[1]}, {"long", beta[2]}};
    if (local_max) gaps["local_max"] = *local_max;
    if (medium_max) gaps["medium_max"] = *medium_max;
    gaps["w_min"] = w_min;
    gaps["degree_budget"] = degree_budget;
    gaps["keep_ring"] = keep_ring;
    doc["gaps"] = std::move(gaps);

    nlohmann::ordered_json base;
    if (baseline.reference) base["reference"] = *baseline.reference;
    base["window"] = baseline.window;
    base["top_k"] = baseline.top_k;
    base["sim_min"] = baseline.sim_min;
    doc["baseline"] = std::move(base);
    doc["wavelet"] = {{"filter", wavelet.spec.filter},
                      {"levels", wavelet.spec.levels},
                      {"lambda",
                       {{"ll", wavelet.spec.lambda.ll},
                        {"lh", wavelet.spec.lambda.lh},
                        {"hl", wavelet.spec.lambda.hl},
                        {"hh", wavelet.spec.lambda.hh}}},
                      {"photometric_weight", wavelet.photometric_weight},
                      {"wavelet_weight", wavelet.wavelet_weight}};
    doc["cost"] = {{"base_mb", cost.base_mb}, {"per_pair_mb", cost.per_pair_mb}};
    doc["io"] = {{"out", io.out}, {"views_dir", io.views_dir}};
    return doc;
}

void RunConfig::validate() const {
    static const std::set<std::string> strategies{"gaps", "complete", "oneref", "cosine",
                                                  "window"};
    if (!strategies.count(strategy))
        throw ValidationError("config field 'strategy' must be one of gaps, complete, oneref, "
                              "cosine, window");
    if (!std::isfinite(tau) || tau <= 0.0)
        throw ValidationError("config field 'gaps.tau' must be positive");
    for (double a : alpha)
        if (!std::isfinite(a) || a < 0.0)
            throw ValidationError("config field 'gaps.alpha' entries must be non-negative");
    for (double b : beta)
        if (!std::isfinite(b))
            throw ValidationError("config field 'gaps.beta' entries must be finite");
    if (!std::isfinite(w_min) || w_min < 0.0)
        throw ValidationError("config field 'gaps.w_min' must be non-negative");
    if (local_max && *local_max < 1)
        throw ValidationError("config field 'gaps.local_max' must be at least 1");
    if (medium_max && local_max && *medium_max <= *local_max)
        throw ValidationError("config field 'gaps.medium_max' must exceed local_max");
    if (degree_budget < 1)
        throw ValidationError("config field 'gaps.degree_budget' must be at least 1");
    if (offsets) {
        if (offsets->empty())
            throw ValidationError("config field 'gaps.offsets' must be non-empty");
        for (int k : *offsets)
            if (k < 1) throw ValidationError("config field 'gaps.offsets' entries must be >= 1");
    }
    if (baseline.reference && *baseline.reference < 0)
        throw ValidationError("config field 'baseline.reference' must be non-negative");
    if (baseline.window < 1)
        throw ValidationError("config field 'baseline.window' must be at least 1");
    if (baseline.top_k < 1)
        throw ValidationError("config field 'baseline.top_k' must be at least 1");
    if (!std::isfinite(baseline.sim_min) || baseline.sim_min < -1.0 || baseline.sim_min > 1.0)
        throw ValidationError("config field 'baseline.sim_min' must lie in [-1, 1]");
    wavelet.spec.validate();
    if (!std::isfinite(wavelet.photometric_weight) || wavelet.photometric_weight < 0.0)
        throw ValidationError("config field 'wavelet.photometric_weight' must be non-negative");
    if (!std::isfinite(wavelet.wavelet_weight) || wavelet.wavelet_weight < 0.0)
        throw ValidationError("config field 'wavelet.wavelet_weight' must be non-negative");
    if (!std::isfinite(cost.base_mb) || cost.base_mb < 0.0)
        throw ValidationError("config field 'cost.base_mb' must be non-negative");
    if (!std::isfinite(cost.per_pair_mb) || cost.per_pair_mb < 0.0)
        throw ValidationError("config field 'cost.per_pair_mb' must be non-negative");
}

PairingProblem RunConfig::problem_for(int n) const {
    PairingProblem problem = PairingProblem::with_defaults(n);
    if (offsets) problem.offsets = *offsets;
    problem.params.tau = tau;
    problem.params.alpha = alpha;
    problem.params.beta = beta;
    problem.params.w_min = w_min;
    if (local_max) problem.params.local_max = *local_max;
    if (medium_max) problem.params.medium_max = *medium_max;
    problem.degree_budget = degree_budget;
    problem.validate();
    return problem;
}

}  // namespace pairplan
