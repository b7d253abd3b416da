#ifndef TEXWEAVE_SYNTH_HPP
#define TEXWEAVE_SYNTH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "texweave/periodicity.hpp"
#include "texweave/raster.hpp"

namespace texweave {

enum class texture_kind { checker, stripes, dots };
enum class defect_kind { none, bar, hole, blob };

inline const char* to_string(texture_kind k)
{
    switch (k) {
    case texture_kind::checker: return "checker";
    case texture_kind::stripes: return "stripes";
    default: return "dots";
    }
}

inline texture_kind texture_kind_from_string(const std::string& name)
{
    if (name == "checker") return texture_kind::checker;
    if (name == "stripes") return texture_kind::stripes;
    if (name == "dots") return texture_kind::dots;
    throw std::invalid_argument("unknown texture kind: " + name);
}

inline const char* to_string(defect_kind k)
{
    switch (k) {
    case defect_kind::none: return "none";
    case defect_kind::bar: return "bar";
    case defect_kind::hole: return "hole";
    default: return "blob";
    }
}

inline defect_kind defect_kind_from_string(const std::string& name)
{
    if (name == "none") return defect_kind::none;
    if (name == "bar") return defect_kind::bar;
    if (name == "hole") return defect_kind::hole;
    if (name == "blob") return defect_kind::blob;
    throw std::invalid_argument("unknown defect kind: " + name);
}

struct synth_params {
    texture_kind kind = texture_kind::checker;
    int periods_rows = 8; // periodic units along the row axis
    int periods_cols = 8;
    periodicity unit{25, 25};
    defect_kind defect = defect_kind::none;
    bool straddle = false; // shift the defect half a unit so it crosses block boundaries
    std::uint64_t seed = 1;
    double noise = 0.01; // uniform +/- amplitude added to the base texture
};

struct synth_output {
    raster image;
    mask_raster gt; // exactly the pixels the defect painter touched
};

namespace detail {

/// Deterministic uniform doubles from the mt19937_64 bit stream. The
/// distribution classes in <random> are implementation-defined, so they are
/// avoided: outputs here must be bit-identical across standard libraries.
class synth_rng {
public:
    explicit synth_rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; } // [0, 1)

    int uniform_int(int n) // {0, ..., n-1}
    {
        return std::min(n - 1, static_cast<int>(uniform() * n));
    }

private:
    std::mt19937_64 eng_;
};

inline void paint_disk(raster& img, mask_raster& gt, double center_row, double center_col,
                       double radius, double value)
{
    const int r0 = std::max(0, static_cast<int>(std::floor(center_row - radius)));
    const int r1 = std::min(img.height() - 1, static_cast<int>(std::ceil(center_row + radius)));
    const int c0 = std::max(0, static_cast<int>(std::floor(center_col - radius)));
    const int c1 = std::min(img.width() - 1, static_cast<int>(std::ceil(center_col + radius)));
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) {
            const double dr = r - center_row, dc = c - center_col;
            if (dr * dr + dc * dc <= radius * radius) {
                img(r, c) = value;
                gt(r, c) = 1;
            }
        }
}

} // namespace detail

/// Deterministic periodic test texture with an optional injected defect and
/// its exact ground-truth mask. Stands in for real fabric imagery in tests:
/// checker tiles light/dark half-unit quadrants (pmm-like), stripes run two
/// cosine cycles per unit width (p2-like bands), dots center one bright disk
/// per unit (p4m-like motif).
inline synth_output make_texture(const synth_params& params)
{
    params.unit.validate();
    if (params.periods_rows < 2 || params.periods_cols < 2)
        throw std::invalid_argument("texture needs at least 2x2 periodic units");
    if (params.defect != defect_kind::none &&
        (params.periods_rows < 3 || params.periods_cols < 3))
        throw std::invalid_argument("defect placement needs at least 3x3 periodic units");
    if (params.noise < 0.0)
        throw std::invalid_argument("noise amplitude must be nonnegative");

    const int Pc = params.unit.rows, Pr = params.unit.cols;
    const int M = params.periods_rows * Pc, N = params.periods_cols * Pr;
    detail::synth_rng rng(params.seed);

    // Defect placement is drawn before the per-pixel noise so the noise
    // field for a given seed does not depend on the defect kind.
    int block_row = 0, block_col = 0;
    if (params.defect != defect_kind::none) {
        block_row = 1 + rng.uniform_int(params.periods_rows - 2);
        block_col = params.defect == defect_kind::bar
                        ? rng.uniform_int(params.periods_cols - 2)
                        : 1 + rng.uniform_int(params.periods_cols - 2);
    }

    raster img(M, N);
    switch (params.kind) {
    case texture_kind::checker:
        for (int r = 0; r < M; ++r)
            for (int c = 0; c < N; ++c)
                img(r, c) = ((2 * r / Pc) + (2 * c / Pr)) % 2 == 0 ? 0.8 : 0.2;
        break;
    case texture_kind::stripes:
        for (int r = 0; r < M; ++r)
            for (int c = 0; c < N; ++c)
                img(r, c) = 0.5 + 0.35 * std::cos(2.0 * std::numbers::pi * 2.0 * c / Pr);
        break;
    case texture_kind::dots: {
        const double radius = std::min(Pc, Pr) / 4.0;
        for (int r = 0; r < M; ++r)
            for (int c = 0; c < N; ++c) {
                const double dr = (r % Pc) + 0.5 - Pc / 2.0;
                const double dc = (c % Pr) + 0.5 - Pr / 2.0;
                img(r, c) = dr * dr + dc * dc <= radius * radius ? 0.85 : 0.15;
            }
        break;
    }
    }

    if (params.noise > 0.0)
        for (double& v : img)
            v = std::clamp(v + params.noise * (2.0 * rng.uniform() - 1.0), 0.0, 1.0);

    synth_output out;
    out.gt = mask_raster(M, N, 0);

    const int row_shift = params.straddle ? Pc / 2 : 0;
    const int col_shift = params.straddle ? Pr / 2 : 0;
    switch (params.defect) {
    case defect_kind::none:
        break;
    case defect_kind::bar: {
        // Solid bright bar, one unit tall and three units wide.
        const int r0 = block_row * Pc + row_shift;
        const int c0 = block_col * Pr;
        for (int r = r0; r < r0 + Pc; ++r)
            for (int c = c0; c < c0 + 3 * Pr; ++c) {
                img(r, c) = 0.95;
                out.gt(r, c) = 1;
            }
        break;
    }
    case defect_kind::hole: {
        // Dark disk inscribed in one unit.
        detail::paint_disk(img, out.gt, (block_row + 0.5) * Pc + row_shift,
                           (block_col + 0.5) * Pr + col_shift, std::min(Pc, Pr) / 2.0, 0.02);
        break;
    }
    case defect_kind::blob: {
        // Bright disk larger than one unit, bleeding into the neighbors.
        detail::paint_disk(img, out.gt, (block_row + 0.5) * Pc + row_shift,
                           (block_col + 0.5) * Pr + col_shift, 0.8 * std::min(Pc, Pr), 0.9);
        break;
    }
    }

    out.image = std::move(img);
    return out;
}

} // namespace texweave

#endif
