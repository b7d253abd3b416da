#ifndef TEXWEAVE_PADDING_HPP
#define TEXWEAVE_PADDING_HPP

#include <stdexcept>
#include <string>

#include "texweave/raster.hpp"

namespace texweave {

enum class padding_mode { reflect, wrap, zero };

inline const char* to_string(padding_mode mode)
{
    switch (mode) {
    case padding_mode::reflect: return "reflect";
    case padding_mode::wrap: return "wrap";
    case padding_mode::zero: return "zero";
    }
    return "reflect";
}

inline padding_mode padding_mode_from_string(const std::string& name)
{
    if (name == "reflect") return padding_mode::reflect;
    if (name == "wrap") return padding_mode::wrap;
    if (name == "zero") return padding_mode::zero;
    throw std::invalid_argument("unknown padding mode: " + name);
}

namespace detail {

// Maps a possibly out-of-range index onto [0, n). reflect mirrors about the
// edge without repeating the edge sample (-1 -> 1); callers guarantee the
// overshoot is < n so a single fold suffices. wrap treats the axis as a torus.
inline int mirror_index(int i, int n)
{
    if (i < 0) return -i;
    if (i >= n) return 2 * n - 2 - i;
    return i;
}

inline int wrap_index(int i, int n)
{
    int m = i % n;
    return m < 0 ? m + n : m;
}

} // namespace detail

/// Grows an image by the given border amounts, filling the border per mode.
/// The interior window of the result equals the input exactly.
template <typename T>
basic_raster<T> pad(const basic_raster<T>& img, int top, int bottom, int left, int right,
                    padding_mode mode)
{
    if (top < 0 || bottom < 0 || left < 0 || right < 0)
        throw std::invalid_argument("pad amounts must be >= 0");
    if (mode == padding_mode::reflect) {
        if (top >= img.height() || bottom >= img.height() || left >= img.width() || right >= img.width())
            throw std::invalid_argument("reflect padding must be smaller than the image dimension");
    }

    const int M = img.height(), N = img.width();
    basic_raster<T> out(M + top + bottom, N + left + right, T{});
    for (int r = 0; r < out.height(); ++r) {
        const int sr = r - top;
        for (int c = 0; c < out.width(); ++c) {
            const int sc = c - left;
            if (sr >= 0 && sr < M && sc >= 0 && sc < N) {
                out(r, c) = img(sr, sc);
                continue;
            }
            switch (mode) {
            case padding_mode::reflect:
                out(r, c) = img(detail::mirror_index(sr, M), detail::mirror_index(sc, N));
                break;
            case padding_mode::wrap:
                out(r, c) = img(detail::wrap_index(sr, M), detail::wrap_index(sc, N));
                break;
            case padding_mode::zero:
                out(r, c) = T{};
                break;
            }
        }
    }
    return out;
}

} // namespace texweave

#endif
