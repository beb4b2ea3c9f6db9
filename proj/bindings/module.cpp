#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pairplan/baselines.hpp"
#include "pairplan/serialize.hpp"
#include "pairplan/splat.hpp"
#include "pairplan/view_graph.hpp"
#include "pairplan/wavelet.hpp"

namespace py = pybind11;
using namespace pairplan;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Grid grid_from_array(const DoubleArray& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2d array");
    Grid g(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), g.data.begin());
    return g;
}

py::array_t<double> array_from_grid(const Grid& g) {
    py::array_t<double> out({g.rows, g.cols});
    std::copy(g.data.begin(), g.data.end(), out.mutable_data());
    return out;
}

// 2d arrays become single-channel images; 3d arrays are planar [C, H, W].
Image image_from_array(const DoubleArray& a) {
    if (a.ndim() == 2) {
        Image im(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)), 1);
        std::copy(a.data(), a.data() + a.size(), im.data.begin());
        return im;
    }
    if (a.ndim() == 3) {
        Image im(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(2)),
                 static_cast<int>(a.shape(0)));
        std::copy(a.data(), a.data() + a.size(), im.data.begin());
        return im;
    }
    throw std::invalid_argument("expected a 2d or 3d array");
}

py::array_t<double> array_from_image(const Image& im) {
    py::array_t<double> out({im.channels, im.height, im.width});
    std::copy(im.data.begin(), im.data.end(), out.mutable_data());
    return out;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::object: {
            py::dict d;
            for (const auto& [key, value] : j.items()) d[py::str(key)] = json_to_py(value);
            return d;
        }
        case nlohmann::ordered_json::value_t::array: {
            py::list l;
            for (const auto& value : j) l.append(json_to_py(value));
            return l;
        }
        case nlohmann::ordered_json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::ordered_json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nlohmann::ordered_json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case nlohmann::ordered_json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case nlohmann::ordered_json::value_t::number_float:
            return py::float_(j.get<double>());
        default:
            return py::none();
    }
}

BandLossSpec make_spec(int levels, const std::string& filter,
                       const std::optional<std::vector<double>>& lambdas) {
    BandLossSpec spec;
    spec.levels = levels;
    spec.filter = filter;
    if (lambdas) {
        if (lambdas->size() != 4)
            throw std::invalid_argument("lambdas must hold (ll, lh, hl, hh)");
        spec.lambda.ll = (*lambdas)[0];
        spec.lambda.lh = (*lambdas)[1];
        spec.lambda.hl = (*lambdas)[2];
        spec.lambda.hh = (*lambdas)[3];
    }
    return spec;
}

py::dict py_plan_gaps(int n, const std::optional<std::vector<int>>& offsets, int degree_budget,
                      double tau, bool keep_ring, const std::string& mode) {
    PairingProblem problem = PairingProblem::with_defaults(n);
    if (offsets) problem.offsets = *offsets;
    problem.degree_budget = degree_budget;
    problem.params.tau = tau;
    problem.validate();
    const PairDirection direction = pair_direction_from_name(mode);
    const PairingPlan plan = plan_gaps(problem, keep_ring, direction);
    const PlanDocument doc =
        make_plan_document("gaps", n, direction, plan.edges, 1024.0, 96.0);
    return json_to_py(plan_document_to_json(doc));
}

py::dict py_dwt2(const DoubleArray& image, const std::string& filter) {
    const SubbandSet bands = dwt2(grid_from_array(image), FilterPair::by_name(filter));
    py::dict out;
    out["ll"] = array_from_grid(bands.ll);
    out["lh"] = array_from_grid(bands.lh);
    out["hl"] = array_from_grid(bands.hl);
    out["hh"] = array_from_grid(bands.hh);
    return out;
}

py::array_t<double> py_idwt2(const DoubleArray& ll, const DoubleArray& lh, const DoubleArray& hl,
                             const DoubleArray& hh, const std::string& filter,
                             const std::optional<std::pair<int, int>>& out_shape) {
    SubbandSet bands;
    bands.ll = grid_from_array(ll);
    bands.lh = grid_from_array(lh);
    bands.hl = grid_from_array(hl);
    bands.hh = grid_from_array(hh);
    const std::pair<int, int> shape =
        out_shape ? *out_shape : std::pair<int, int>{2 * bands.ll.rows, 2 * bands.ll.cols};
    return array_from_grid(idwt2(bands, FilterPair::by_name(filter), shape));
}

double py_wavelet_loss(const DoubleArray& gt, const DoubleArray& rendered, int levels,
                       const std::string& filter, const std::optional<std::vector<double>>& lambdas) {
    return wavelet_loss(image_from_array(gt), image_from_array(rendered),
                        make_spec(levels, filter, lambdas));
}

py::object py_wavelet_loss_grad(const DoubleArray& gt, const DoubleArray& rendered, int levels,
                                const std::string& filter,
                                const std::optional<std::vector<double>>& lambdas) {
    const Image grad = wavelet_loss_grad(image_from_array(gt), image_from_array(rendered),
                                         make_spec(levels, filter, lambdas));
    if (gt.ndim() == 2) return array_from_grid(grad.channel(0));
    return array_from_image(grad);
}

py::dict py_combined_loss(const DoubleArray& gt, const DoubleArray& rendered, int levels,
                          const std::string& filter,
                          const std::optional<std::vector<double>>& lambdas,
                          double photometric_weight, double wavelet_weight) {
    const LossBreakdown breakdown =
        combined_loss(image_from_array(gt), image_from_array(rendered),
                      make_spec(levels, filter, lambdas), photometric_weight, wavelet_weight);
    return json_to_py(loss_report_to_json(breakdown));
}

py::list py_render_fixture(const std::string& preset, std::uint64_t seed) {
    const FixtureScene scene = make_fixture_scene(preset, seed);
    py::list frames;
    for (const auto& camera : scene.cameras) {
        const RenderedFrame frame = render(scene.primitives, camera, Vec3{});
        py::dict entry;
        entry["color"] = array_from_image(frame.color);
        entry["depth"] = array_from_grid(frame.depth);
        entry["alpha"] = array_from_grid(frame.alpha);
        frames.append(entry);
    }
    return frames;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "pair planning, wavelet loss and fixture rendering primitives";

    m.def("plan_gaps", &py_plan_gaps, py::arg("n"), py::arg("offsets") = std::nullopt,
          py::arg("degree_budget") = 4, py::arg("tau") = 2.0, py::arg("keep_ring") = true,
          py::arg("mode") = "both",
          "Degree-bounded geometry-aware pair plan for an n-view capture cycle.");

    m.def("complete_pairs", &complete_pairs, py::arg("n"));
    m.def(
        "oneref_pairs",
        [](int n, std::optional<int> reference) {
            return oneref_pairs(n, reference.value_or(n / 2));
        },
        py::arg("n"), py::arg("reference") = std::nullopt);
    m.def("window_pairs", &window_pairs, py::arg("n"), py::arg("window") = 2);

    m.def("dwt2", &py_dwt2, py::arg("image"), py::arg("filter") = "haar",
          "One separable DWT level; returns the ll/lh/hl/hh bands.");
    m.def("idwt2", &py_idwt2, py::arg("ll"), py::arg("lh"), py::arg("hl"), py::arg("hh"),
          py::arg("filter") = "haar", py::arg("out_shape") = std::nullopt);

    m.def("wavelet_loss", &py_wavelet_loss, py::arg("gt"), py::arg("rendered"),
          py::arg("levels") = 2, py::arg("filter") = "haar", py::arg("lambdas") = std::nullopt,
          "Sum over bands of lambda * squared residual energy.");
    m.def("wavelet_loss_grad", &py_wavelet_loss_grad, py::arg("gt"), py::arg("rendered"),
          py::arg("levels") = 2, py::arg("filter") = "haar", py::arg("lambdas") = std::nullopt,
          "Gradient of wavelet_loss with respect to the rendered image.");
    m.def("combined_loss", &py_combined_loss, py::arg("gt"), py::arg("rendered"),
          py::arg("levels") = 2, py::arg("filter") = "haar", py::arg("lambdas") = std::nullopt,
          py::arg("photometric_weight") = 1.0, py::arg("wavelet_weight") = 1.0,
          "Photometric plus wavelet loss with the per-band breakdown.");

    m.def("render_fixture", &py_render_fixture, py::arg("preset") = "arch", py::arg("seed") = 0,
          "Render every camera of a synthetic fixture scene; planar [3, H, W] colors.");
    m.def("fixture_presets", &fixture_presets);
}
