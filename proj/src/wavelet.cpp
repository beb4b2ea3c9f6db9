#include "pairplan/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pairplan/logging.hpp"

namespace pairplan {

FilterPair FilterPair::haar() {
    const double s = 1.0 / std::sqrt(2.0);
    FilterPair f;
    f.low = {s, s};
    f.high = {s, -s};
    f.name = "haar";
    f.validate_orthonormal_qmf();
    return f;
}

FilterPair FilterPair::daubechies4() {
    const double r3 = std::sqrt(3.0);
    const double den = 4.0 * std::sqrt(2.0);
    FilterPair f;
    f.low = {(1.0 + r3) / den, (3.0 + r3) / den, (3.0 - r3) / den, (1.0 - r3) / den};
    f.high.resize(4);
    for (int k = 0; k < 4; ++k) f.high[k] = (k % 2 == 0 ? 1.0 : -1.0) * f.low[3 - k];
    f.name = "db4";
    f.validate_orthonormal_qmf();
    return f;
}

FilterPair FilterPair::by_name(const std::string& name) {
    if (name == "haar") return haar();
    if (name == "db4") return daubechies4();
    throw ValidationError("unknown wavelet filter '" + name + "' (expected haar|db4)");
}

void FilterPair::validate_orthonormal_qmf() const {
    const std::size_t L = low.size();
    if (L < 2 || L % 2 != 0 || high.size() != L)
        throw ValidationError("filter pair: needs matching even-length filters");
    const double tol = 1e-12;
    for (std::size_t k = 0; k < L; ++k) {
        const double expect = (k % 2 == 0 ? 1.0 : -1.0) * low[L - 1 - k];
        if (std::abs(high[k] - expect) > tol)
            throw ValidationError("filter pair '" + name + "' violates the QMF relation");
    }
    for (std::size_t m = 0; 2 * m < L; ++m) {
        double dot = 0.0;
        for (std::size_t k = 0; k + 2 * m < L; ++k) dot += low[k] * low[k + 2 * m];
        const double expect = (m == 0) ? 1.0 : 0.0;
        if (std::abs(dot - expect) > tol)
            throw ValidationError("filter pair '" + name + "' is not orthonormal");
    }
}

void SubbandSet::validate() const {
    if (!ll.same_shape(lh) || !ll.same_shape(hl) || !ll.same_shape(hh))
        throw ValidationError("subband set: the four bands must share one shape");
}

void BandLossSpec::validate() const {
    if (levels < 1) throw ValidationError("band loss spec: levels must be >= 1");
    for (double v : {lambda.ll, lambda.lh, lambda.hl, lambda.hh})
        if (!(v >= 0.0)) throw ValidationError("band loss spec: weights must be >= 0");
    FilterPair::by_name(filter);
}

bool BandLossSpec::all_zero() const {
    return lambda.ll == 0.0 && lambda.lh == 0.0 && lambda.hl == 0.0 && lambda.hh == 0.0;
}

namespace {

// Filter folded modulo N so circular filtering stays orthogonal when the
// filter is longer than the signal.
std::vector<double> fold_filter(const std::vector<double>& f, int n) {
    const int lf = std::min<int>(static_cast<int>(f.size()), n);
    std::vector<double> folded(lf, 0.0);
    for (std::size_t k = 0; k < f.size(); ++k) folded[k % n] += f[k];
    return folded;
}

// x has even length n; writes n/2 coefficients: out[m] = sum_r f[r] x[(2m+r) mod n].
void analyze_1d(const double* x, int n, const std::vector<double>& folded, double* out) {
    const int lf = static_cast<int>(folded.size());
    const int half = n / 2;
    for (int m = 0; m < half; ++m) {
        double acc = 0.0;
        for (int r = 0; r < lf; ++r) {
            int idx = 2 * m + r;
            if (idx >= n) idx -= n;  // lf <= n, so one wrap suffices
            acc += folded[r] * x[idx];
        }
        out[m] = acc;
    }
}

// Transpose of analyze_1d: scatters both bands back into x (length n).
void synthesize_1d(const double* low, const double* high, int n,
                   const std::vector<double>& folded_low,
                   const std::vector<double>& folded_high, double* x) {
    std::fill(x, x + n, 0.0);
    const int lf = static_cast<int>(folded_low.size());
    const int half = n / 2;
    for (int m = 0; m < half; ++m) {
        for (int r = 0; r < lf; ++r) {
            int idx = 2 * m + r;
            if (idx >= n) idx -= n;
            x[idx] += low[m] * folded_low[r] + high[m] * folded_high[r];
        }
    }
}

// Half-sample symmetric extension to even dimensions: replicate the last
// row/column once.
Grid pad_to_even(const Grid& g) {
    const int rows = g.rows + (g.rows % 2);
    const int cols = g.cols + (g.cols % 2);
    if (rows == g.rows && cols == g.cols) return g;
    Grid out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const int sr = std::min(r, g.rows - 1);
        for (int c = 0; c < cols; ++c) out.at(r, c) = g.at(sr, std::min(c, g.cols - 1));
    }
    return out;
}

struct FoldedFilters {
    std::vector<double> low_row, high_row;  // folded for the column count
    std::vector<double> low_col, high_col;  // folded for the row count
};

// Reconstructs the even-dimension grid the bands were produced from.
Grid reconstruct_even(const SubbandSet& bands, const FilterPair& filter) {
    bands.validate();
    const int bh = bands.ll.rows;
    const int bw = bands.ll.cols;
    const int rows = 2 * bh;
    const int cols = 2 * bw;
    const auto low_col = fold_filter(filter.low, rows);
    const auto high_col = fold_filter(filter.high, rows);
    const auto low_row = fold_filter(filter.low, cols);
    const auto high_row = fold_filter(filter.high, cols);

    // Column synthesis: (LL, LH) -> A (rows low-passed), (HL, HH) -> B.
    Grid a(rows, bw), b(rows, bw);
    std::vector<double> lo(bh), hi(bh), col(rows);
    for (int c = 0; c < bw; ++c) {
        for (int r = 0; r < bh; ++r) {
            lo[r] = bands.ll.at(r, c);
            hi[r] = bands.lh.at(r, c);
        }
        synthesize_1d(lo.data(), hi.data(), rows, low_col, high_col, col.data());
        for (int r = 0; r < rows; ++r) a.at(r, c) = col[r];
        for (int r = 0; r < bh; ++r) {
            lo[r] = bands.hl.at(r, c);
            hi[r] = bands.hh.at(r, c);
        }
        synthesize_1d(lo.data(), hi.data(), rows, low_col, high_col, col.data());
        for (int r = 0; r < rows; ++r) b.at(r, c) = col[r];
    }

    // Row synthesis: (A, B) -> image.
    Grid out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        synthesize_1d(&a.data[static_cast<std::size_t>(r) * bw],
                      &b.data[static_cast<std::size_t>(r) * bw], cols, low_row, high_row,
                      &out.data[static_cast<std::size_t>(r) * cols]);
    }
    return out;
}

void check_out_shape(const SubbandSet& bands, std::pair<int, int> out_shape) {
    const int bh = bands.ll.rows;
    const int bw = bands.ll.cols;
    const auto [rows, cols] = out_shape;
    if (rows != 2 * bh && rows != 2 * bh - 1) {
        std::ostringstream os;
        os << "idwt2: requested " << rows << " rows, bands of " << bh << " rows can produce "
           << 2 * bh - 1 << " or " << 2 * bh;
        throw ValidationError(os.str());
    }
    if (cols != 2 * bw && cols != 2 * bw - 1) {
        std::ostringstream os;
        os << "idwt2: requested " << cols << " cols, bands of " << bw << " cols can produce "
           << 2 * bw - 1 << " or " << 2 * bw;
        throw ValidationError(os.str());
    }
}

}  // namespace

SubbandSet dwt2(const Grid& image, const FilterPair& filter) {
    if (image.rows < 2 || image.cols < 2)
        throw ValidationError("dwt2: image must be at least 2x2");
    for (double v : image.data)
        if (!std::isfinite(v)) throw ValidationError("dwt2: image entries must be finite");

    const Grid padded = pad_to_even(image);
    const int rows = padded.rows;
    const int cols = padded.cols;
    const int bw = cols / 2;
    const int bh = rows / 2;
    const auto low_row = fold_filter(filter.low, cols);
    const auto high_row = fold_filter(filter.high, cols);
    const auto low_col = fold_filter(filter.low, rows);
    const auto high_col = fold_filter(filter.high, rows);

    // Row pass: filter along each row.
    Grid a(rows, bw), b(rows, bw);
    for (int r = 0; r < rows; ++r) {
        const double* src = &padded.data[static_cast<std::size_t>(r) * cols];
        analyze_1d(src, cols, low_row, &a.data[static_cast<std::size_t>(r) * bw]);
        analyze_1d(src, cols, high_row, &b.data[static_cast<std::size_t>(r) * bw]);
    }

    // Column pass.
    SubbandSet bands{Grid(bh, bw), Grid(bh, bw), Grid(bh, bw), Grid(bh, bw)};
    std::vector<double> col(rows), out(bh);
    for (int c = 0; c < bw; ++c) {
        for (int r = 0; r < rows; ++r) col[r] = a.at(r, c);
        analyze_1d(col.data(), rows, low_col, out.data());
        for (int r = 0; r < bh; ++r) bands.ll.at(r, c) = out[r];
        analyze_1d(col.data(), rows, high_col, out.data());
        for (int r = 0; r < bh; ++r) bands.lh.at(r, c) = out[r];

        for (int r = 0; r < rows; ++r) col[r] = b.at(r, c);
        analyze_1d(col.data(), rows, low_col, out.data());
        for (int r = 0; r < bh; ++r) bands.hl.at(r, c) = out[r];
        analyze_1d(col.data(), rows, high_col, out.data());
        for (int r = 0; r < bh; ++r) bands.hh.at(r, c) = out[r];
    }
    return bands;
}

Grid idwt2(const SubbandSet& bands, const FilterPair& filter, std::pair<int, int> out_shape) {
    check_out_shape(bands, out_shape);
    Grid even = reconstruct_even(bands, filter);
    const auto [rows, cols] = out_shape;
    if (rows == even.rows && cols == even.cols) return even;
    Grid out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out.at(r, c) = even.at(r, c);
    return out;
}

Grid dwt2_adjoint(const SubbandSet& bands, const FilterPair& filter,
                  std::pair<int, int> in_shape) {
    check_out_shape(bands, in_shape);
    Grid even = reconstruct_even(bands, filter);
    const auto [rows, cols] = in_shape;
    if (rows == even.rows && cols == even.cols) return even;
    // Transpose of replicate-padding folds the extra row/column back onto
    // the sample it was copied from.
    Grid out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out.at(r, c) = even.at(r, c);
    if (cols < even.cols)
        for (int r = 0; r < rows; ++r) out.at(r, cols - 1) += even.at(r, cols);
    if (rows < even.rows) {
        for (int c = 0; c < cols; ++c) out.at(rows - 1, c) += even.at(rows, c);
        if (cols < even.cols) out.at(rows - 1, cols - 1) += even.at(rows, cols);
    }
    return out;
}

WaveletPyramid dwt2_multi(const Grid& image, const BandLossSpec& spec) {
    spec.validate();
    const int min_side = 1 << spec.levels;
    if (image.rows < min_side || image.cols < min_side) {
        std::ostringstream os;
        os << "dwt2_multi: image " << image.rows << "x" << image.cols << " too small for "
           << spec.levels << " levels (needs at least " << min_side << "x" << min_side << ")";
        throw ValidationError(os.str());
    }
    const FilterPair filter = spec.resolve_filter();
    WaveletPyramid pyr;
    Grid current = image;
    std::vector<SubbandSet> fine_first;
    std::vector<std::pair<int, int>> shapes;
    for (int level = 0; level < spec.levels; ++level) {
        shapes.emplace_back(current.rows, current.cols);
        SubbandSet bands = dwt2(current, filter);
        current = bands.ll;
        fine_first.push_back(std::move(bands));
    }
    pyr.final_ll = current;
    pyr.levels.assign(fine_first.rbegin(), fine_first.rend());
    pyr.input_shapes.assign(shapes.rbegin(), shapes.rend());
    return pyr;
}

Grid idwt2_multi(const WaveletPyramid& pyramid, const FilterPair& filter) {
    Grid current = pyramid.final_ll;
    for (int idx = 0; idx < pyramid.level_count(); ++idx) {
        SubbandSet bands = pyramid.levels[idx];
        bands.ll = current;
        current = idwt2(bands, filter, pyramid.input_shapes[idx]);
    }
    return current;
}

namespace {

Grid grid_sub(const Grid& a, const Grid& b) {
    Grid out(a.rows, a.cols);
    for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] = a.data[k] - b.data[k];
    return out;
}

double grid_sq_norm(const Grid& g) {
    double acc = 0.0;
    for (double v : g.data) acc += v * v;
    return acc;
}

Grid grid_scale(const Grid& g, double s) {
    Grid out = g;
    for (double& v : out.data) v *= s;
    return out;
}

void check_same_shape(const Image& gt, const Image& rendered, const char* who) {
    if (!gt.same_shape(rendered)) {
        std::ostringstream os;
        os << who << ": shape mismatch, " << gt.height << "x" << gt.width << "x" << gt.channels
           << " vs " << rendered.height << "x" << rendered.width << "x" << rendered.channels;
        throw ValidationError(os.str());
    }
}

WaveletPyramid pyramid_sub(const WaveletPyramid& a, const WaveletPyramid& b) {
    WaveletPyramid out = a;
    out.final_ll = grid_sub(a.final_ll, b.final_ll);
    for (int idx = 0; idx < a.level_count(); ++idx) {
        out.levels[idx].ll = grid_sub(a.levels[idx].ll, b.levels[idx].ll);
        out.levels[idx].lh = grid_sub(a.levels[idx].lh, b.levels[idx].lh);
        out.levels[idx].hl = grid_sub(a.levels[idx].hl, b.levels[idx].hl);
        out.levels[idx].hh = grid_sub(a.levels[idx].hh, b.levels[idx].hh);
    }
    return out;
}

}  // namespace

std::vector<WaveletPyramid> residual_maps(const Image& gt, const Image& rendered,
                                          const BandLossSpec& spec) {
    check_same_shape(gt, rendered, "residual_maps");
    std::vector<WaveletPyramid> residuals;
    residuals.reserve(gt.channels);
    for (int c = 0; c < gt.channels; ++c) {
        residuals.push_back(
            pyramid_sub(dwt2_multi(gt.channel(c), spec), dwt2_multi(rendered.channel(c), spec)));
    }
    return residuals;
}

namespace {

// Accumulates the weighted band contributions of one residual pyramid.
void accumulate_band_terms(const WaveletPyramid& delta, const BandLossSpec& spec,
                           std::map<int, std::map<std::string, double>>& per_band) {
    for (int idx = 0; idx < delta.level_count(); ++idx) {
        const int level = delta.level_number(idx);
        auto& entry = per_band[level];
        if (idx == 0) entry["ll"] += spec.lambda.ll * grid_sq_norm(delta.final_ll);
        entry["lh"] += spec.lambda.lh * grid_sq_norm(delta.levels[idx].lh);
        entry["hl"] += spec.lambda.hl * grid_sq_norm(delta.levels[idx].hl);
        entry["hh"] += spec.lambda.hh * grid_sq_norm(delta.levels[idx].hh);
    }
}

double sum_band_terms(const std::map<int, std::map<std::string, double>>& per_band) {
    double total = 0.0;
    for (const auto& [level, bands] : per_band)
        for (const auto& [name, value] : bands) total += value;
    return total;
}

}  // namespace

double wavelet_loss(const Image& gt, const Image& rendered, const BandLossSpec& spec) {
    check_same_shape(gt, rendered, "wavelet_loss");
    spec.validate();
    if (spec.all_zero()) {
        log_warn("wavelet_loss: all band weights are zero, loss is identically 0");
        return 0.0;
    }
    std::map<int, std::map<std::string, double>> per_band;
    for (const auto& delta : residual_maps(gt, rendered, spec))
        accumulate_band_terms(delta, spec, per_band);
    return sum_band_terms(per_band);
}

Image wavelet_loss_grad(const Image& gt, const Image& rendered, const BandLossSpec& spec) {
    check_same_shape(gt, rendered, "wavelet_loss_grad");
    spec.validate();
    const FilterPair filter = spec.resolve_filter();
    Image grad(rendered.height, rendered.width, rendered.channels);
    const auto residuals = residual_maps(gt, rendered, spec);
    for (int c = 0; c < rendered.channels; ++c) {
        const WaveletPyramid& delta = residuals[c];
        Grid g = grid_scale(delta.final_ll, spec.lambda.ll);
        for (int idx = 0; idx < delta.level_count(); ++idx) {
            SubbandSet weighted;
            weighted.ll = std::move(g);
            weighted.lh = grid_scale(delta.levels[idx].lh, spec.lambda.lh);
            weighted.hl = grid_scale(delta.levels[idx].hl, spec.lambda.hl);
            weighted.hh = grid_scale(delta.levels[idx].hh, spec.lambda.hh);
            g = dwt2_adjoint(weighted, filter, delta.input_shapes[idx]);
        }
        grad.set_channel(c, grid_scale(g, -2.0));
    }
    return grad;
}

LossBreakdown combined_loss(const Image& gt, const Image& rendered, const BandLossSpec& spec,
                            double photometric_weight, double wavelet_weight) {
    check_same_shape(gt, rendered, "combined_loss");
    spec.validate();
    if (photometric_weight < 0.0 || wavelet_weight < 0.0)
        throw ValidationError("combined_loss: weights must be >= 0");

    LossBreakdown breakdown;
    double abs_sum = 0.0;
    for (std::size_t k = 0; k < gt.data.size(); ++k)
        abs_sum += std::abs(gt.data[k] - rendered.data[k]);
    breakdown.photometric =
        gt.data.empty() ? 0.0 : abs_sum / static_cast<double>(gt.data.size());

    if (spec.all_zero()) {
        log_warn("combined_loss: all band weights are zero, wavelet term is 0");
    } else {
        for (const auto& delta : residual_maps(gt, rendered, spec))
            accumulate_band_terms(delta, spec, breakdown.per_band);
        breakdown.wavelet = sum_band_terms(breakdown.per_band);
    }
    breakdown.total =
        photometric_weight * breakdown.photometric + wavelet_weight * breakdown.wavelet;
    return breakdown;
}

}  // namespace pairplan
