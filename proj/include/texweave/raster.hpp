#ifndef TEXWEAVE_RASTER_HPP
#define TEXWEAVE_RASTER_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace texweave {

/// Row-major 2-D pixel container. The universal image type of the library:
/// grayscale inputs, complex filter responses and binary masks are all
/// instances of this template. Values are not constrained by the container;
/// images loaded from files are normalized to [0,1].
template <typename T>
class basic_raster {
public:
    using value_type = T;

    basic_raster() = default;

    basic_raster(int height, int width, T fill = T{})
        : height_(height), width_(width)
    {
        if (height < 1 || width < 1)
            throw std::invalid_argument("raster dimensions must be >= 1, got " +
                                        std::to_string(height) + "x" + std::to_string(width));
        values_.assign(static_cast<std::size_t>(height) * width, fill);
    }

    basic_raster(int height, int width, std::vector<T> values)
        : height_(height), width_(width), values_(std::move(values))
    {
        if (height < 1 || width < 1)
            throw std::invalid_argument("raster dimensions must be >= 1");
        if (values_.size() != static_cast<std::size_t>(height) * width)
            throw std::invalid_argument("raster value count does not match dimensions");
    }

    int height() const { return height_; }
    int width() const { return width_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    T& operator()(int r, int c) { return values_[static_cast<std::size_t>(r) * width_ + c]; }
    const T& operator()(int r, int c) const { return values_[static_cast<std::size_t>(r) * width_ + c]; }

    T& operator[](std::size_t i) { return values_[i]; }
    const T& operator[](std::size_t i) const { return values_[i]; }

    T* data() { return values_.data(); }
    const T* data() const { return values_.data(); }

    T* row(int r) { return values_.data() + static_cast<std::size_t>(r) * width_; }
    const T* row(int r) const { return values_.data() + static_cast<std::size_t>(r) * width_; }

    const std::vector<T>& values() const { return values_; }

    auto begin() { return values_.begin(); }
    auto end() { return values_.end(); }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    bool same_shape(const basic_raster& other) const
    {
        return height_ == other.height_ && width_ == other.width_;
    }

    friend bool operator==(const basic_raster& a, const basic_raster& b)
    {
        return a.height_ == b.height_ && a.width_ == b.width_ && a.values_ == b.values_;
    }

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<T> values_;
};

using raster = basic_raster<double>;
using complex_raster = basic_raster<std::complex<double>>;
using mask_raster = basic_raster<std::uint8_t>;

} // namespace texweave

#endif
