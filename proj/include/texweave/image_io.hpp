#ifndef TEXWEAVE_IMAGE_IO_HPP
#define TEXWEAVE_IMAGE_IO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <zlib.h>

#include "texweave/errors.hpp"
#include "texweave/raster.hpp"

namespace texweave {

namespace detail {

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open file for reading: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw io_error("read failure: " + path);
    return bytes;
}

inline void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("cannot open file for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw io_error("write failure: " + path);
}

inline std::uint8_t quantize8(double v)
{
    double q = std::round(v * 255.0);
    if (q < 0.0) q = 0.0;
    if (q > 255.0) q = 255.0;
    return static_cast<std::uint8_t>(q);
}

// ---- PGM (binary P5) ----

inline bool looks_like_pgm(const std::vector<std::uint8_t>& bytes)
{
    return bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5';
}

// Reads the next header token, skipping whitespace and '#' comments.
inline long pgm_header_token(const std::vector<std::uint8_t>& bytes, std::size_t& pos)
{
    auto is_space = [](std::uint8_t c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (pos < bytes.size()) {
        if (is_space(bytes[pos])) { ++pos; continue; }
        if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            continue;
        }
        break;
    }
    if (pos >= bytes.size() || bytes[pos] < '0' || bytes[pos] > '9')
        throw format_error("malformed PGM header");
    long value = 0;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
        value = value * 10 + (bytes[pos] - '0');
        ++pos;
    }
    return value;
}

inline raster decode_pgm(const std::vector<std::uint8_t>& bytes)
{
    std::size_t pos = 2;
    const long width = pgm_header_token(bytes, pos);
    const long height = pgm_header_token(bytes, pos);
    const long maxval = pgm_header_token(bytes, pos);
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535)
        throw format_error("unsupported PGM geometry or maxval");
    ++pos; // single whitespace byte before raster data
    const bool wide = maxval > 255;
    const std::size_t need = static_cast<std::size_t>(width) * height * (wide ? 2 : 1);
    if (pos + need > bytes.size())
        throw format_error("truncated PGM pixel data");

    raster img(static_cast<int>(height), static_cast<int>(width));
    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t i = 0; i < static_cast<std::size_t>(width) * height; ++i) {
        unsigned v;
        if (wide) {
            v = (static_cast<unsigned>(bytes[pos]) << 8) | bytes[pos + 1];
            pos += 2;
        } else {
            v = bytes[pos++];
        }
        img[i] = v * scale;
    }
    return img;
}

inline std::vector<std::uint8_t> encode_pgm(const raster& img)
{
    std::string header = "P5\n" + std::to_string(img.width()) + " " +
                         std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.reserve(bytes.size() + img.size());
    for (double v : img)
        bytes.push_back(quantize8(v));
    return bytes;
}

// ---- PNG ----

inline const std::uint8_t png_signature[8] = {137, 80, 78, 71, 13, 10, 26, 10};

inline bool looks_like_png(const std::vector<std::uint8_t>& bytes)
{
    return bytes.size() >= 8 && std::memcmp(bytes.data(), png_signature, 8) == 0;
}

inline std::uint32_t be32(const std::uint8_t* p)
{
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

inline void push_be32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

inline int paeth_predictor(int a, int b, int c)
{
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

struct png_image {
    int width = 0, height = 0;
    int bit_depth = 8;
    int channels = 1;       // channel count as stored in the file (alpha included)
    bool has_alpha = false;
    std::vector<std::uint8_t> raw; // unfiltered scanline bytes
};

inline png_image decode_png(const std::vector<std::uint8_t>& bytes, const std::string& path)
{
    std::size_t pos = 8;
    png_image img;
    bool saw_ihdr = false, saw_iend = false;
    std::vector<std::uint8_t> idat;
    int color_type = 0;

    while (pos + 8 <= bytes.size() && !saw_iend) {
        const std::uint32_t len = be32(&bytes[pos]);
        if (pos + 12 + len > bytes.size())
            throw format_error("truncated PNG chunk: " + path);
        const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
        const std::uint8_t* data = &bytes[pos + 8];
        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13)
                throw format_error("bad IHDR: " + path);
            img.width = static_cast<int>(be32(data));
            img.height = static_cast<int>(be32(data + 4));
            img.bit_depth = data[8];
            color_type = data[9];
            if (data[10] != 0 || data[11] != 0)
                throw format_error("unsupported PNG compression/filter method: " + path);
            if (data[12] != 0)
                throw format_error("interlaced PNG not supported: " + path);
            saw_ihdr = true;
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_iend = true;
        } else if (std::memcmp(type, "PLTE", 4) == 0) {
            throw format_error("palette PNG not supported: " + path);
        }
        pos += 12 + len;
    }
    if (!saw_ihdr || idat.empty())
        throw format_error("not a decodable PNG: " + path);
    if (img.width < 1 || img.height < 1)
        throw format_error("bad PNG dimensions: " + path);
    if (img.bit_depth != 8 && img.bit_depth != 16)
        throw format_error("only 8- and 16-bit PNG supported: " + path);

    int file_channels;
    switch (color_type) {
    case 0: file_channels = 1; break;
    case 2: file_channels = 3; break;
    case 4: file_channels = 2; break;
    case 6: file_channels = 4; break;
    default:
        throw format_error("unsupported PNG color type " + std::to_string(color_type) + ": " + path);
    }

    const std::size_t sample_bytes = img.bit_depth / 8;
    const std::size_t row_bytes = static_cast<std::size_t>(img.width) * file_channels * sample_bytes;
    const std::size_t expected = static_cast<std::size_t>(img.height) * (row_bytes + 1);

    std::vector<std::uint8_t> inflated(expected);
    uLongf dest_len = static_cast<uLongf>(expected);
    const int zrc = uncompress(inflated.data(), &dest_len, idat.data(),
                               static_cast<uLong>(idat.size()));
    if (zrc != Z_OK || dest_len != expected)
        throw format_error("PNG inflate failed: " + path);

    // Undo per-row filtering in place into img.raw.
    img.raw.assign(static_cast<std::size_t>(img.height) * row_bytes, 0);
    const std::size_t bpp = file_channels * sample_bytes;
    for (int r = 0; r < img.height; ++r) {
        const std::uint8_t filter = inflated[static_cast<std::size_t>(r) * (row_bytes + 1)];
        const std::uint8_t* src = &inflated[static_cast<std::size_t>(r) * (row_bytes + 1) + 1];
        std::uint8_t* cur = &img.raw[static_cast<std::size_t>(r) * row_bytes];
        const std::uint8_t* prev = r > 0 ? cur - row_bytes : nullptr;
        for (std::size_t i = 0; i < row_bytes; ++i) {
            const int a = i >= bpp ? cur[i - bpp] : 0;
            const int b = prev ? prev[i] : 0;
            const int c = (prev && i >= bpp) ? prev[i - bpp] : 0;
            int v = src[i];
            switch (filter) {
            case 0: break;
            case 1: v += a; break;
            case 2: v += b; break;
            case 3: v += (a + b) / 2; break;
            case 4: v += paeth_predictor(a, b, c); break;
            default: throw format_error("unknown PNG filter type: " + path);
            }
            cur[i] = static_cast<std::uint8_t>(v & 0xff);
        }
    }
    // Keep file channel count in .channels bookkeeping for the sampler below.
    img.channels = file_channels;
    img.has_alpha = (color_type == 4 || color_type == 6);
    return img;
}

inline raster png_to_gray(const png_image& png)
{
    raster img(png.height, png.width);
    const int sb = png.bit_depth / 8;
    const int fc = png.channels;
    const double scale = png.bit_depth == 8 ? 1.0 / 255.0 : 1.0 / 65535.0;
    const std::size_t row_bytes = static_cast<std::size_t>(png.width) * fc * sb;
    const int color_channels = png.has_alpha ? fc - 1 : fc;
    for (int r = 0; r < png.height; ++r) {
        const std::uint8_t* row = &png.raw[static_cast<std::size_t>(r) * row_bytes];
        for (int c = 0; c < png.width; ++c) {
            const std::uint8_t* px = row + static_cast<std::size_t>(c) * fc * sb;
            auto sample = [&](int ch) {
                const std::uint8_t* s = px + ch * sb;
                unsigned v = sb == 1 ? *s : ((unsigned(s[0]) << 8) | s[1]);
                return v * scale;
            };
            if (color_channels == 1)
                img(r, c) = sample(0);
            else
                img(r, c) = 0.299 * sample(0) + 0.587 * sample(1) + 0.114 * sample(2);
        }
    }
    return img;
}

inline void append_png_chunk(std::vector<std::uint8_t>& out, const char type[4],
                             const std::vector<std::uint8_t>& data)
{
    push_be32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t type_pos = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, &out[type_pos], static_cast<uInt>(4 + data.size()));
    push_be32(out, static_cast<std::uint32_t>(crc));
}

// Encodes 8-bit samples (gray when channels == 1, RGB when channels == 3).
inline std::vector<std::uint8_t> encode_png(int height, int width, int channels,
                                            const std::vector<std::uint8_t>& samples)
{
    const std::size_t row_bytes = static_cast<std::size_t>(width) * channels;
    std::vector<std::uint8_t> scanlines;
    scanlines.reserve(static_cast<std::size_t>(height) * (row_bytes + 1));
    for (int r = 0; r < height; ++r) {
        scanlines.push_back(0); // filter: none
        const std::uint8_t* row = &samples[static_cast<std::size_t>(r) * row_bytes];
        scanlines.insert(scanlines.end(), row, row + row_bytes);
    }

    uLongf bound = compressBound(static_cast<uLong>(scanlines.size()));
    std::vector<std::uint8_t> compressed(bound);
    if (compress2(compressed.data(), &bound, scanlines.data(),
                  static_cast<uLong>(scanlines.size()), 6) != Z_OK)
        throw io_error("PNG deflate failed");
    compressed.resize(bound);

    std::vector<std::uint8_t> out(png_signature, png_signature + 8);
    std::vector<std::uint8_t> ihdr;
    push_be32(ihdr, static_cast<std::uint32_t>(width));
    push_be32(ihdr, static_cast<std::uint32_t>(height));
    ihdr.push_back(8);                                    // bit depth
    ihdr.push_back(channels == 1 ? 0 : 2);                // gray / rgb
    ihdr.push_back(0); ihdr.push_back(0); ihdr.push_back(0);
    append_png_chunk(out, "IHDR", ihdr);
    append_png_chunk(out, "IDAT", compressed);
    append_png_chunk(out, "IEND", {});
    return out;
}

inline bool has_suffix(const std::string& s, const std::string& suffix)
{
    if (s.size() < suffix.size()) return false;
    return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                      [](char a, char b) { return std::tolower(a) == std::tolower(b); });
}

} // namespace detail

/// Loads a PNG or binary PGM (P5) file as a grayscale raster with values in
/// [0,1]. RGB input is converted with luma weights 0.299/0.587/0.114.
/// The format is detected from the file's magic bytes, not its extension.
inline raster load_grayscale(const std::string& path)
{
    const auto bytes = detail::read_file_bytes(path);
    if (detail::looks_like_png(bytes))
        return detail::png_to_gray(detail::decode_png(bytes, path));
    if (detail::looks_like_pgm(bytes))
        return detail::decode_pgm(bytes);
    throw format_error("unsupported image format (expected PNG or binary PGM): " + path);
}

/// Loads a binary ground-truth mask: any nonzero pixel is 1.
inline mask_raster load_mask(const std::string& path)
{
    const raster img = load_grayscale(path);
    mask_raster mask(img.height(), img.width(), 0);
    for (std::size_t i = 0; i < img.size(); ++i)
        mask[i] = img[i] > 0.0 ? 1 : 0;
    return mask;
}

/// Writes an 8-bit grayscale image; values are quantized round(v*255) and
/// clamped to [0,255]. PNG or PGM is chosen by extension.
inline void save_grayscale(const raster& img, const std::string& path)
{
    if (detail::has_suffix(path, ".png")) {
        std::vector<std::uint8_t> samples(img.size());
        for (std::size_t i = 0; i < img.size(); ++i)
            samples[i] = detail::quantize8(img[i]);
        detail::write_file_bytes(path, detail::encode_png(img.height(), img.width(), 1, samples));
        return;
    }
    if (detail::has_suffix(path, ".pgm")) {
        detail::write_file_bytes(path, detail::encode_pgm(img));
        return;
    }
    throw format_error("unsupported output extension (expected .png or .pgm): " + path);
}

/// Writes the base image promoted to RGB with mask-positive pixels painted
/// pure white. Pixels where the mask is 0 keep the base value exactly.
inline void save_overlay(const raster& base, const mask_raster& mask, const std::string& path)
{
    if (base.height() != mask.height() || base.width() != mask.width())
        throw std::invalid_argument("overlay base and mask dimensions differ");
    if (!detail::has_suffix(path, ".png"))
        throw format_error("overlay output must be a .png: " + path);
    std::vector<std::uint8_t> samples(base.size() * 3);
    for (std::size_t i = 0; i < base.size(); ++i) {
        const std::uint8_t v = mask[i] ? 255 : detail::quantize8(base[i]);
        samples[3 * i] = samples[3 * i + 1] = samples[3 * i + 2] = v;
    }
    detail::write_file_bytes(path, detail::encode_png(base.height(), base.width(), 3, samples));
}

/// Min-max normalizes to [0,1] for visualization dumps. A constant image
/// maps to all zeros.
inline raster normalize_min_max(const raster& img)
{
    double lo = img[0], hi = img[0];
    for (double v : img) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    raster out(img.height(), img.width());
    const double span = hi - lo;
    for (std::size_t i = 0; i < img.size(); ++i)
        out[i] = span > 0.0 ? (img[i] - lo) / span : 0.0;
    return out;
}

} // namespace texweave

#endif
