#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pairplan/grid.hpp"

namespace pairplan {

// Quadrature mirror filter pair: high[k] = (-1)^k low[L-1-k].
struct FilterPair {
    std::vector<double> low;
    std::vector<double> high;
    std::string name;

    static FilterPair haar();
    static FilterPair daubechies4();
    static FilterPair by_name(const std::string& name);  // "haar" | "db4"

    // QMF relation plus orthonormality (unit energy, shift-2 orthogonality).
    void validate_orthonormal_qmf() const;
};

// One decomposition level. For an H x W input every band is
// ceil(H/2) x ceil(W/2).
struct SubbandSet {
    Grid ll, lh, hl, hh;

    void validate() const;
};

struct BandWeights {
    double ll = 1.0;
    double lh = 0.5;
    double hl = 0.5;
    double hh = 0.25;
};

// Band weights, level count and filter choice defining the regularizer.
struct BandLossSpec {
    BandWeights lambda;
    int levels = 2;
    std::string filter = "haar";

    void validate() const;
    bool all_zero() const;
    FilterPair resolve_filter() const { return FilterPair::by_name(filter); }
};

// Multi-level decomposition, coarse-first: levels[0] is the deepest set and
// levels.back() holds the finest details (level number 1). The coarsest
// approximation is kept separately in final_ll; input_shapes[idx] records the
// grid shape that was decomposed into levels[idx], so the inverse can crop
// odd-size levels exactly.
struct WaveletPyramid {
    std::vector<SubbandSet> levels;
    Grid final_ll;
    std::vector<std::pair<int, int>> input_shapes;

    int level_count() const { return static_cast<int>(levels.size()); }
    // Human level number for levels[idx]: 1 = finest.
    int level_number(int idx) const { return level_count() - idx; }
};

// Separable one-level 2D DWT with dyadic downsampling. Filtering is
// periodized along even-length axes; odd axes are first extended to even
// length by half-sample symmetric replication.
SubbandSet dwt2(const Grid& image, const FilterPair& filter);

// Inverse of dwt2 for orthonormal filters; out_shape selects the crop for
// inputs that were pad-extended (each axis may be the band size doubled or
// one less).
Grid idwt2(const SubbandSet& bands, const FilterPair& filter,
           std::pair<int, int> out_shape);

// Adjoint of the forward level map (synthesis followed by the transpose of
// the padding). Equals idwt2 on even shapes.
Grid dwt2_adjoint(const SubbandSet& bands, const FilterPair& filter,
                  std::pair<int, int> in_shape);

// Recursive decomposition of the LL band, spec.levels times.
WaveletPyramid dwt2_multi(const Grid& image, const BandLossSpec& spec);

Grid idwt2_multi(const WaveletPyramid& pyramid, const FilterPair& filter);

// Per-channel pyramids of W(gt) - W(rendered), band by band.
std::vector<WaveletPyramid> residual_maps(const Image& gt, const Image& rendered,
                                          const BandLossSpec& spec);

// Sum over channels and levels of lambda_x ||Delta_x||_2^2. Detail bands
// contribute at every level; the approximation term applies to the final LL.
double wavelet_loss(const Image& gt, const Image& rendered, const BandLossSpec& spec);

// d(wavelet_loss)/d(rendered): -2 sum_x lambda_x W_x^T(Delta_x), composed
// through the adjoint of the multi-level transform.
Image wavelet_loss_grad(const Image& gt, const Image& rendered, const BandLossSpec& spec);

struct LossBreakdown {
    double total = 0.0;
    double photometric = 0.0;
    double wavelet = 0.0;
    // level number -> band name -> weighted contribution, summed over channels
    std::map<int, std::map<std::string, double>> per_band;
};

// photometric_weight * MAE + wavelet_weight * wavelet_loss, with the
// per-band decomposition of the wavelet term.
LossBreakdown combined_loss(const Image& gt, const Image& rendered, const BandLossSpec& spec,
                            double photometric_weight, double wavelet_weight);

}  // namespace pairplan
