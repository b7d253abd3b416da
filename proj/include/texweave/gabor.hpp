#ifndef TEXWEAVE_GABOR_HPP
#define TEXWEAVE_GABOR_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "texweave/periodicity.hpp"
#include "texweave/raster.hpp"

namespace texweave {

/// Parameters of the Gabor wavelet family. The defaults are the classic
/// 40-filter configuration: 5 scales, 8 orientations, sigma = 2*pi,
/// k_max = pi/2, spacing factor sqrt(2). The default 64x64 window covers
/// about two envelope standard deviations of the coarsest default scale;
/// pipeline runs replace it with the periodicity-derived size.
struct gabor_bank_config {
    int num_scales = 5;
    int num_orientations = 8;
    double sigma = 2.0 * std::numbers::pi;
    double k_max = std::numbers::pi / 2.0;
    double spacing = std::numbers::sqrt2;
    int kernel_height = 64;
    int kernel_width = 64;

    void validate() const
    {
        if (num_scales < 1 || num_orientations < 1)
            throw std::invalid_argument("gabor bank needs at least one scale and one orientation");
        if (!(sigma > 0.0) || !(k_max > 0.0))
            throw std::invalid_argument("sigma and k_max must be positive");
        if (!(spacing > 1.0))
            throw std::invalid_argument("scale spacing factor must exceed 1");
        if (kernel_height < 3 || kernel_width < 3)
            throw std::invalid_argument("kernel window must be at least 3x3");
    }
};

/// One complex Gabor wavelet sampled on a kernel_height x kernel_width grid
/// centered at (floor((h-1)/2), floor((w-1)/2)).
struct gabor_kernel {
    int scale_index = 0;
    int orientation_index = 0;
    double orientation_angle = 0.0; // radians
    double wavenumber = 0.0;        // k_v = k_max / spacing^v
    complex_raster values;

    int center_row() const { return (values.height() - 1) / 2; }
    int center_col() const { return (values.width() - 1) / 2; }
};

/// The kernel window is half the periodic unit, clamped to the 3x3 minimum.
/// Even sizes are permitted; the center stays at floor((dim-1)/2).
inline std::pair<int, int> kernel_size_from_periodicity(const periodicity& period)
{
    period.validate();
    return {std::max(3, period.rows / 2), std::max(3, period.cols / 2)};
}

/// Config with the paper parameters and the kernel window derived from the
/// texture periodicity.
inline gabor_bank_config bank_config_for_period(const periodicity& period)
{
    const auto [h, w] = kernel_size_from_periodicity(period);
    gabor_bank_config cfg;
    cfg.kernel_height = h;
    cfg.kernel_width = w;
    return cfg;
}

/// Samples one wavelet: with offset z = (x, y) from the kernel center and
/// wave vector (k_v cos theta, k_v sin theta),
///
///   psi(z) = (k_v^2/sigma^2) * exp(-k_v^2 |z|^2 / (2 sigma^2))
///            * (exp(i k.z) - exp(-sigma^2/2))
///
/// The subtracted constant removes the DC component of the continuous
/// wavelet; truncation to the finite window leaves a small residue.
inline gabor_kernel make_kernel(const gabor_bank_config& cfg, int scale_index,
                                int orientation_index)
{
    cfg.validate();
    if (scale_index < 0 || scale_index >= cfg.num_scales)
        throw std::invalid_argument("scale index out of range: " + std::to_string(scale_index));
    if (orientation_index < 0 || orientation_index >= cfg.num_orientations)
        throw std::invalid_argument("orientation index out of range: " +
                                    std::to_string(orientation_index));

    gabor_kernel k;
    k.scale_index = scale_index;
    k.orientation_index = orientation_index;
    k.orientation_angle = orientation_index * std::numbers::pi / cfg.num_orientations;
    k.wavenumber = cfg.k_max / std::pow(cfg.spacing, scale_index);
    k.values = complex_raster(cfg.kernel_height, cfg.kernel_width);

    const double kv = k.wavenumber;
    const double kx = kv * std::cos(k.orientation_angle);
    const double ky = kv * std::sin(k.orientation_angle);
    const double sigma_sq = cfg.sigma * cfg.sigma;
    const double amplitude = kv * kv / sigma_sq;
    const double dc_term = std::exp(-sigma_sq / 2.0);
    const int cr = k.center_row(), cc = k.center_col();

    for (int r = 0; r < cfg.kernel_height; ++r) {
        const double y = r - cr;
        for (int c = 0; c < cfg.kernel_width; ++c) {
            const double x = c - cc;
            const double envelope = amplitude * std::exp(-kv * kv * (x * x + y * y) / (2.0 * sigma_sq));
            const double phase = kx * x + ky * y;
            k.values(r, c) = {envelope * (std::cos(phase) - dc_term),
                              envelope * std::sin(phase)};
        }
    }
    return k;
}

/// All num_scales x num_orientations wavelets in scale-major order.
inline std::vector<gabor_kernel> make_bank(const gabor_bank_config& cfg)
{
    cfg.validate();
    std::vector<gabor_kernel> bank;
    bank.reserve(static_cast<std::size_t>(cfg.num_scales) * cfg.num_orientations);
    for (int v = 0; v < cfg.num_scales; ++v)
        for (int o = 0; o < cfg.num_orientations; ++o)
            bank.push_back(make_kernel(cfg, v, o));
    return bank;
}

} // namespace texweave

#endif
