#ifndef TEXWEAVE_BLOCKS_HPP
#define TEXWEAVE_BLOCKS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "texweave/periodicity.hpp"
#include "texweave/raster.hpp"

namespace texweave {

enum class crop_corner { top_left, top_right, bottom_left, bottom_right };

inline const char* to_string(crop_corner corner)
{
    switch (corner) {
    case crop_corner::top_left: return "top_left";
    case crop_corner::top_right: return "top_right";
    case crop_corner::bottom_left: return "bottom_left";
    case crop_corner::bottom_right: return "bottom_right";
    }
    return "top_left";
}

/// One corner-anchored crop: the largest sub-image whose dimensions are
/// exact multiples of the periodic unit.
struct crop_spec {
    crop_corner corner = crop_corner::top_left;
    int row_offset = 0;
    int col_offset = 0;
    int crop_height = 0; // multiple of period.rows
    int crop_width = 0;  // multiple of period.cols
};

/// A crop tiled into periodic blocks. energies holds each block's L1 energy
/// row-major; defective holds the per-block cluster verdict (filled by the
/// clustering stage, initially all zero).
struct block_grid {
    crop_spec crop;
    periodicity period;
    int block_rows = 0;
    int block_cols = 0;
    std::vector<double> energies;
    std::vector<std::uint8_t> defective;

    double energy(int i, int j) const
    {
        return energies[static_cast<std::size_t>(i) * block_cols + j];
    }
    bool is_defective(int i, int j) const
    {
        return defective[static_cast<std::size_t>(i) * block_cols + j] != 0;
    }
};

/// Largest periodic-multiple crop dimensions:
/// (floor(M / P_rows) * P_rows, floor(N / P_cols) * P_cols).
/// Requires at least two periodic units along each axis.
inline std::pair<int, int> crop_sizes(int image_height, int image_width, const periodicity& period)
{
    period.validate();
    if (image_height < 2 * period.rows || image_width < 2 * period.cols)
        throw std::invalid_argument(
            "image must contain at least two periodic units per axis: image " +
            std::to_string(image_height) + "x" + std::to_string(image_width) + ", unit " +
            std::to_string(period.rows) + "x" + std::to_string(period.cols));
    return {(image_height / period.rows) * period.rows,
            (image_width / period.cols) * period.cols};
}

/// The four corner-anchored crops. All share the crop_sizes dimensions; the
/// right/bottom crops absorb the residue that is lost at the opposite edge,
/// so a defect falling on any block phase is captured by at least one crop.
inline std::array<crop_spec, 4> four_corner_crops(int image_height, int image_width,
                                                  const periodicity& period)
{
    const auto [crop_h, crop_w] = crop_sizes(image_height, image_width, period);
    const int row_residue = image_height - crop_h;
    const int col_residue = image_width - crop_w;
    return {{{crop_corner::top_left, 0, 0, crop_h, crop_w},
             {crop_corner::top_right, 0, col_residue, crop_h, crop_w},
             {crop_corner::bottom_left, row_residue, 0, crop_h, crop_w},
             {crop_corner::bottom_right, row_residue, col_residue, crop_h, crop_w}}};
}

/// Tiles the crop into periodic blocks and records each block's L1 energy,
/// accumulated in row-major pixel order. The fused image is nonnegative, so
/// the L1 norm is the plain sum; |.| keeps the definition literal.
inline block_grid block_energies(const raster& fused, const crop_spec& crop,
                                 const periodicity& period)
{
    period.validate();
    if (crop.crop_height <= 0 || crop.crop_width <= 0 ||
        crop.crop_height % period.rows != 0 || crop.crop_width % period.cols != 0)
        throw std::invalid_argument("crop dimensions must be positive multiples of the period");
    if (crop.row_offset < 0 || crop.col_offset < 0 ||
        crop.row_offset + crop.crop_height > fused.height() ||
        crop.col_offset + crop.crop_width > fused.width())
        throw std::invalid_argument("crop does not fit inside the image");

    block_grid grid;
    grid.crop = crop;
    grid.period = period;
    grid.block_rows = crop.crop_height / period.rows;
    grid.block_cols = crop.crop_width / period.cols;
    grid.energies.assign(static_cast<std::size_t>(grid.block_rows) * grid.block_cols, 0.0);
    grid.defective.assign(grid.energies.size(), 0);

    for (int i = 0; i < grid.block_rows; ++i) {
        for (int j = 0; j < grid.block_cols; ++j) {
            double sum = 0.0;
            const int r0 = crop.row_offset + i * period.rows;
            const int c0 = crop.col_offset + j * period.cols;
            for (int r = r0; r < r0 + period.rows; ++r) {
                const double* row = fused.row(r);
                for (int c = c0; c < c0 + period.cols; ++c)
                    sum += std::abs(row[c]);
            }
            grid.energies[static_cast<std::size_t>(i) * grid.block_cols + j] = sum;
        }
    }
    return grid;
}

} // namespace texweave

#endif
