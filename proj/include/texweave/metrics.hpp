#ifndef TEXWEAVE_METRICS_HPP
#define TEXWEAVE_METRICS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "texweave/blocks.hpp"
#include "texweave/fusion.hpp"
#include "texweave/raster.hpp"

namespace texweave {

/// Block-level confusion counts. Counting unit is the per-crop block: every
/// image contributes four grids, and the same physical pixels may be counted
/// under multiple crops.
struct confusion_counts {
    long long tp = 0;
    long long tn = 0;
    long long fp = 0;
    long long fn = 0;

    long long total() const { return tp + tn + fp + fn; }

    confusion_counts& operator+=(const confusion_counts& other)
    {
        tp += other.tp;
        tn += other.tn;
        fp += other.fp;
        fn += other.fn;
        return *this;
    }
};

struct metric_summary {
    double precision = 1.0;
    double recall = 1.0;
    double accuracy = 1.0;
};

/// precision = TP/(TP+FP), recall = TP/(TP+FN), accuracy = (TP+TN)/total.
/// 0/0 convention: an undefined precision is 1.0 when there was also nothing
/// to find (TP+FN = 0) and 0.0 otherwise, so clean images score perfect
/// instead of poisoning corpus averages; recall mirrors the same rule.
inline metric_summary metrics_from_counts(const confusion_counts& c)
{
    metric_summary m;
    if (c.tp + c.fp > 0)
        m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    else
        m.precision = (c.tp + c.fn == 0) ? 1.0 : 0.0;
    if (c.tp + c.fn > 0)
        m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    else
        m.recall = (c.tp + c.fp == 0) ? 1.0 : 0.0;
    m.accuracy = c.total() > 0
                     ? static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total())
                     : 1.0;
    return m;
}

/// Per-block truth labels for one crop: a block is truly defective iff the
/// fraction of ground-truth-positive pixels inside it exceeds min_overlap
/// (default 0: any overlapping pixel marks the block).
inline std::vector<std::uint8_t> ground_truth_labels(const mask_raster& gt_mask,
                                                     const crop_spec& crop,
                                                     const periodicity& period,
                                                     double min_overlap = 0.0)
{
    period.validate();
    if (min_overlap < 0.0 || min_overlap > 1.0)
        throw std::invalid_argument("min_overlap must lie in [0, 1]");
    if (crop.row_offset < 0 || crop.col_offset < 0 ||
        crop.row_offset + crop.crop_height > gt_mask.height() ||
        crop.col_offset + crop.crop_width > gt_mask.width())
        throw std::invalid_argument("crop does not fit inside the ground-truth mask");
    if (crop.crop_height % period.rows != 0 || crop.crop_width % period.cols != 0)
        throw std::invalid_argument("crop dimensions must be multiples of the period");

    const int block_rows = crop.crop_height / period.rows;
    const int block_cols = crop.crop_width / period.cols;
    const double block_pixels = static_cast<double>(period.rows) * period.cols;
    std::vector<std::uint8_t> labels(static_cast<std::size_t>(block_rows) * block_cols, 0);

    for (int i = 0; i < block_rows; ++i) {
        for (int j = 0; j < block_cols; ++j) {
            long long positives = 0;
            const int r0 = crop.row_offset + i * period.rows;
            const int c0 = crop.col_offset + j * period.cols;
            for (int r = r0; r < r0 + period.rows; ++r)
                for (int c = c0; c < c0 + period.cols; ++c)
                    positives += gt_mask(r, c) ? 1 : 0;
            if (static_cast<double>(positives) / block_pixels > min_overlap)
                labels[static_cast<std::size_t>(i) * block_cols + j] = 1;
        }
    }
    return labels;
}

/// Confusion counts + metrics for one prediction/truth label pair.
inline std::pair<confusion_counts, metric_summary> score(std::span<const std::uint8_t> predicted,
                                                         std::span<const std::uint8_t> truth)
{
    if (predicted.size() != truth.size())
        throw std::invalid_argument("predicted and truth label lists differ in length");

    confusion_counts c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool p = predicted[i] != 0, t = truth[i] != 0;
        if (p && t)
            ++c.tp;
        else if (p && !t)
            ++c.fp;
        else if (!p && t)
            ++c.fn;
        else
            ++c.tn;
    }
    return {c, metrics_from_counts(c)};
}

/// Per-image evaluation: counts pooled over the four crops' block grids.
struct evaluation_result {
    std::array<confusion_counts, 4> per_crop;
    confusion_counts counts;
    metric_summary metrics;
};

inline evaluation_result evaluate(const inspection_report& report, const mask_raster& gt_mask,
                                  double min_overlap = 0.0)
{
    if (gt_mask.height() != report.gabor_image.height() ||
        gt_mask.width() != report.gabor_image.width())
        throw std::invalid_argument("ground-truth mask dimensions do not match the image");

    evaluation_result out;
    for (std::size_t i = 0; i < report.crops.size(); ++i) {
        const block_grid& grid = report.crops[i].grid;
        const auto truth =
            ground_truth_labels(gt_mask, grid.crop, grid.period, min_overlap);
        out.per_crop[i] = score(grid.defective, truth).first;
        out.counts += out.per_crop[i];
    }
    out.metrics = metrics_from_counts(out.counts);
    return out;
}

} // namespace texweave

#endif
