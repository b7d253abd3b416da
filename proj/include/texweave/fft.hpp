#ifndef TEXWEAVE_FFT_HPP
#define TEXWEAVE_FFT_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "texweave/raster.hpp"

namespace texweave {
namespace fft {

inline std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// In-place iterative radix-2 transform. n must be a power of two. The
/// inverse applies the 1/n factor, so inverse(forward(x)) == x up to
/// rounding. Fully sequential: a given input always produces bit-identical
/// output.
inline void transform(std::complex<double>* a, std::size_t n, bool inverse)
{
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> t = a[i + j + len / 2] * w;
                a[i + j] = u + t;
                a[i + j + len / 2] = u - t;
                w *= wlen;
            }
        }
    }

    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) a[i] *= inv_n;
    }
}

/// 2-D transform: rows first, then columns. Dimensions must be powers of two.
inline void transform_2d(complex_raster& img, bool inverse)
{
    const int h = img.height(), w = img.width();
    for (int r = 0; r < h; ++r)
        transform(img.row(r), static_cast<std::size_t>(w), inverse);

    std::vector<std::complex<double>> column(static_cast<std::size_t>(h));
    for (int c = 0; c < w; ++c) {
        for (int r = 0; r < h; ++r) column[r] = img(r, c);
        transform(column.data(), column.size(), inverse);
        for (int r = 0; r < h; ++r) img(r, c) = column[r];
    }
}

} // namespace fft
} // namespace texweave

#endif
