#ifndef TEXWEAVE_FUSION_HPP
#define TEXWEAVE_FUSION_HPP

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "texweave/blocks.hpp"
#include "texweave/canny.hpp"
#include "texweave/convolve.hpp"
#include "texweave/gabor.hpp"
#include "texweave/raster.hpp"
#include "texweave/ward.hpp"

namespace texweave {

/// Union of the one-pixel-wide perimeters of every defective block, drawn in
/// full-image coordinates (crop offset + block extent). Overlapping
/// perimeters from different crops simply stay 1.
inline mask_raster block_boundaries(std::span<const block_grid> grids, int image_height,
                                    int image_width)
{
    mask_raster out(image_height, image_width, 0);
    for (const block_grid& grid : grids) {
        for (int i = 0; i < grid.block_rows; ++i) {
            for (int j = 0; j < grid.block_cols; ++j) {
                if (!grid.is_defective(i, j)) continue;
                const int r0 = grid.crop.row_offset + i * grid.period.rows;
                const int c0 = grid.crop.col_offset + j * grid.period.cols;
                const int r1 = r0 + grid.period.rows - 1;
                const int c1 = c0 + grid.period.cols - 1;
                for (int c = c0; c <= c1; ++c) {
                    out(r0, c) = 1;
                    out(r1, c) = 1;
                }
                for (int r = r0; r <= r1; ++r) {
                    out(r, c0) = 1;
                    out(r, c1) = 1;
                }
            }
        }
    }
    return out;
}

/// Morphological hole filling by complement flood fill: background pixels
/// reachable from the image border (4-connectivity) stay 0; every other
/// pixel — boundary or enclosed — becomes 1.
inline mask_raster fill_holes(const mask_raster& boundaries)
{
    const int M = boundaries.height(), N = boundaries.width();
    mask_raster reachable(M, N, 0);
    std::vector<std::pair<int, int>> stack;
    auto seed = [&](int r, int c) {
        if (!boundaries(r, c) && !reachable(r, c)) {
            reachable(r, c) = 1;
            stack.emplace_back(r, c);
        }
    };
    for (int c = 0; c < N; ++c) {
        seed(0, c);
        seed(M - 1, c);
    }
    for (int r = 0; r < M; ++r) {
        seed(r, 0);
        seed(r, N - 1);
    }
    while (!stack.empty()) {
        const auto [r, c] = stack.back();
        stack.pop_back();
        if (r > 0) seed(r - 1, c);
        if (r + 1 < M) seed(r + 1, c);
        if (c > 0) seed(r, c - 1);
        if (c + 1 < N) seed(r, c + 1);
    }

    mask_raster filled(M, N, 0);
    for (std::size_t i = 0; i < filled.size(); ++i)
        filled[i] = (boundaries[i] || !reachable[i]) ? 1 : 0;
    return filled;
}

/// Everything the pipeline learned about one crop: the block grid with its
/// energies and defective flags, the full merge history, and the two-cluster
/// labeling. gate_suppressed records that the optional min-separation gate
/// overruled the clustering and declared the crop defect-free.
struct crop_analysis {
    block_grid grid;
    dendrogram tree;
    cluster_assignment clusters;
    bool gate_suppressed = false;
};

struct inspection_report {
    periodicity period;
    gabor_bank_config bank;
    raster gabor_image;
    std::array<crop_analysis, 4> crops;
    mask_raster boundaries;
    mask_raster mask;
    mask_raster edges;
};

struct inspect_options {
    padding_mode padding = padding_mode::reflect;
    conv_engine engine = conv_engine::automatic;
    int jobs = 1;
    // Declare a crop defect-free when its final merge cost is at most
    // min_separation times its median merge cost. 0 disables the gate and
    // every crop yields a defective cluster, clean fabric included.
    double min_separation = 0.0;
    canny_params canny{};
};

namespace detail {

inline void analyze_crop(crop_analysis& out, const raster& fused, const crop_spec& crop,
                         const periodicity& period, double min_separation)
{
    out.grid = block_energies(fused, crop, period);
    out.tree = ward_cluster(out.grid.energies);

    if (min_separation > 0.0) {
        std::vector<double> costs;
        costs.reserve(out.tree.merges.size());
        for (const merge_step& m : out.tree.merges)
            costs.push_back(m.cost);
        if (out.tree.merges.back().cost <= min_separation * median(std::move(costs))) {
            out.gate_suppressed = true;
            return;
        }
    }

    out.clusters = select_defective(cut_two(out.tree), out.grid.energies);
    for (std::size_t leaf = 0; leaf < out.clusters.labels.size(); ++leaf)
        out.grid.defective[leaf] =
            out.clusters.labels[leaf] == out.clusters.defective_cluster ? 1 : 0;
}

} // namespace detail

/// Full pipeline on one image: Gabor-space response, four corner crops,
/// per-crop block energies + Ward two-clustering, boundary superposition,
/// hole filling, and Canny edge tracing of the fused defect zones.
inline inspection_report inspect(const raster& img, const periodicity& period,
                                 const gabor_bank_config& cfg, const inspect_options& opts = {})
{
    period.validate();
    cfg.validate();

    inspection_report report;
    report.period = period;
    report.bank = cfg;
    report.gabor_image = gabor_space(img, cfg, opts.padding, opts.engine, opts.jobs);

    const auto crops = four_corner_crops(img.height(), img.width(), period);
    for (std::size_t i = 0; i < crops.size(); ++i)
        detail::analyze_crop(report.crops[i], report.gabor_image, crops[i], period,
                             opts.min_separation);

    std::array<block_grid, 4> grids{report.crops[0].grid, report.crops[1].grid,
                                    report.crops[2].grid, report.crops[3].grid};
    report.boundaries = block_boundaries(grids, img.height(), img.width());
    report.mask = fill_holes(report.boundaries);
    report.edges = canny_edges(report.mask, opts.canny);
    return report;
}

} // namespace texweave

#endif
