#ifndef TEXWEAVE_CANNY_HPP
#define TEXWEAVE_CANNY_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "texweave/padding.hpp"
#include "texweave/raster.hpp"

namespace texweave {

/// Canny stage parameters. The hysteresis thresholds are relative: the high
/// threshold is high_ratio times the maximum gradient magnitude, the low
/// threshold low_ratio times the high one.
struct canny_params {
    double gaussian_sigma = 1.0;
    int gaussian_radius = 2; // 5x5 window
    double high_ratio = 0.2;
    double low_ratio = 0.4;
};

namespace detail {

inline raster gaussian_smooth(const raster& img, double sigma, int radius)
{
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double norm = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        taps[static_cast<std::size_t>(i + radius)] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        norm += taps[static_cast<std::size_t>(i + radius)];
    }
    for (double& t : taps) t /= norm;

    // Separable pass, reflect borders.
    const raster padded = pad(img, radius, radius, radius, radius, padding_mode::reflect);
    raster horiz(padded.height(), img.width());
    for (int r = 0; r < padded.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            double acc = 0.0;
            for (int t = 0; t < 2 * radius + 1; ++t)
                acc += taps[static_cast<std::size_t>(t)] * padded(r, c + t);
            horiz(r, c) = acc;
        }
    raster out(img.height(), img.width());
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            double acc = 0.0;
            for (int t = 0; t < 2 * radius + 1; ++t)
                acc += taps[static_cast<std::size_t>(t)] * horiz(r + t, c);
            out(r, c) = acc;
        }
    return out;
}

} // namespace detail

/// Standard Canny on a binary mask treated as a real image: Gaussian
/// smoothing, Sobel gradients, non-maximum suppression along the quantized
/// gradient direction (ties kept, so straight edges may be 2 px thick before
/// hysteresis), then hysteresis linking with 8-connectivity.
inline mask_raster canny_edges(const mask_raster& mask, const canny_params& params = {})
{
    const int M = mask.height(), N = mask.width();
    raster img(M, N);
    for (std::size_t i = 0; i < mask.size(); ++i)
        img[i] = mask[i] ? 1.0 : 0.0;

    const raster smooth = detail::gaussian_smooth(img, params.gaussian_sigma, params.gaussian_radius);
    const raster spad = pad(smooth, 1, 1, 1, 1, padding_mode::reflect);

    raster gx(M, N), gy(M, N), mag(M, N);
    double max_mag = 0.0;
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < N; ++c) {
            const int pr = r + 1, pc = c + 1;
            const double sx = (spad(pr - 1, pc + 1) + 2.0 * spad(pr, pc + 1) + spad(pr + 1, pc + 1)) -
                              (spad(pr - 1, pc - 1) + 2.0 * spad(pr, pc - 1) + spad(pr + 1, pc - 1));
            const double sy = (spad(pr + 1, pc - 1) + 2.0 * spad(pr + 1, pc) + spad(pr + 1, pc + 1)) -
                              (spad(pr - 1, pc - 1) + 2.0 * spad(pr - 1, pc) + spad(pr - 1, pc + 1));
            gx(r, c) = sx;
            gy(r, c) = sy;
            mag(r, c) = std::hypot(sx, sy);
            max_mag = std::max(max_mag, mag(r, c));
        }

    if (max_mag == 0.0)
        return mask_raster(M, N, 0);

    // Non-maximum suppression: keep a pixel only if it is at least as strong
    // as both neighbors along the gradient direction (sector split at
    // tan(67.5 deg) ~= 2.414).
    const double high = params.high_ratio * max_mag;
    const double low = params.low_ratio * high;
    mask_raster keep(M, N, 0);
    auto mag_at = [&](int r, int c) {
        return (r < 0 || r >= M || c < 0 || c >= N) ? 0.0 : mag(r, c);
    };
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < N; ++c) {
            const double m = mag(r, c);
            if (m < low) continue;
            const double ax = std::abs(gx(r, c)), ay = std::abs(gy(r, c));
            int dr, dc;
            if (ax > 2.414213562373095 * ay) {
                dr = 0; dc = 1;
            } else if (ay > 2.414213562373095 * ax) {
                dr = 1; dc = 0;
            } else if ((gx(r, c) >= 0) == (gy(r, c) >= 0)) {
                dr = 1; dc = 1;
            } else {
                dr = 1; dc = -1;
            }
            if (m >= mag_at(r + dr, c + dc) && m >= mag_at(r - dr, c - dc))
                keep(r, c) = 1;
        }

    // Hysteresis: grow from strong pixels through connected weak ones.
    mask_raster edges(M, N, 0);
    std::vector<std::pair<int, int>> stack;
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < N; ++c)
            if (keep(r, c) && mag(r, c) >= high && !edges(r, c)) {
                edges(r, c) = 1;
                stack.emplace_back(r, c);
                while (!stack.empty()) {
                    const auto [cr, cc] = stack.back();
                    stack.pop_back();
                    for (int dr = -1; dr <= 1; ++dr)
                        for (int dc = -1; dc <= 1; ++dc) {
                            const int nr = cr + dr, nc = cc + dc;
                            if (nr < 0 || nr >= M || nc < 0 || nc >= N) continue;
                            if (edges(nr, nc) || !keep(nr, nc)) continue;
                            edges(nr, nc) = 1;
                            stack.emplace_back(nr, nc);
                        }
                }
            }
    return edges;
}

} // namespace texweave

#endif
