#ifndef TEXWEAVE_CONVOLVE_HPP
#define TEXWEAVE_CONVOLVE_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "texweave/fft.hpp"
#include "texweave/gabor.hpp"
#include "texweave/padding.hpp"
#include "texweave/parallel.hpp"
#include "texweave/raster.hpp"

namespace texweave {

enum class conv_engine { automatic, direct, frequency };

inline const char* to_string(conv_engine e)
{
    switch (e) {
    case conv_engine::automatic: return "auto";
    case conv_engine::direct: return "direct";
    case conv_engine::frequency: return "frequency";
    }
    return "auto";
}

inline conv_engine conv_engine_from_string(const std::string& name)
{
    if (name == "auto") return conv_engine::automatic;
    if (name == "direct") return conv_engine::direct;
    if (name == "frequency" || name == "fft") return conv_engine::frequency;
    throw std::invalid_argument("unknown convolution engine: " + name);
}

namespace detail {

// The frequency path pays off once the kernel window is moderately large;
// the cutoff is fixed so engine selection never depends on timing.
inline conv_engine resolve_engine(conv_engine e, int kh, int kw)
{
    if (e != conv_engine::automatic) return e;
    return kh * kw >= 49 ? conv_engine::frequency : conv_engine::direct;
}

// Border needed so that every kernel tap has a source pixel: the offsets
// from the center reach -center .. dim-1-center.
inline raster pad_for_kernel(const raster& img, int kh, int kw, int cr, int cc,
                             padding_mode mode)
{
    if (mode == padding_mode::reflect && (kh > img.height() || kw > img.width()))
        throw std::invalid_argument("kernel larger than image with reflect padding");
    return pad(img, kh - 1 - cr, cr, kw - 1 - cc, cc, mode);
}

// output(p) = sum_z padded_img(p - z) * psi(z), z over kernel offsets from
// the center; evaluated as a correlation of the padded image with the
// flipped kernel so the inner loops stream both arrays row-major.
inline complex_raster direct_convolve_padded(const raster& padded, const gabor_kernel& k,
                                             int out_height, int out_width)
{
    const int kh = k.values.height(), kw = k.values.width();
    std::vector<double> flip_re(static_cast<std::size_t>(kh) * kw);
    std::vector<double> flip_im(flip_re.size());
    for (int r = 0; r < kh; ++r)
        for (int c = 0; c < kw; ++c) {
            const auto v = k.values(kh - 1 - r, kw - 1 - c);
            flip_re[static_cast<std::size_t>(r) * kw + c] = v.real();
            flip_im[static_cast<std::size_t>(r) * kw + c] = v.imag();
        }

    complex_raster out(out_height, out_width);
    for (int pr = 0; pr < out_height; ++pr) {
        for (int pc = 0; pc < out_width; ++pc) {
            double acc_re = 0.0, acc_im = 0.0;
            for (int r = 0; r < kh; ++r) {
                const double* src = padded.row(pr + r) + pc;
                const double* fre = &flip_re[static_cast<std::size_t>(r) * kw];
                const double* fim = &flip_im[static_cast<std::size_t>(r) * kw];
                for (int c = 0; c < kw; ++c) {
                    acc_re += src[c] * fre[c];
                    acc_im += src[c] * fim[c];
                }
            }
            out(pr, pc) = {acc_re, acc_im};
        }
    }
    return out;
}

// Shared state for convolving one image against many same-size kernels.
struct frequency_plan {
    int out_height = 0, out_width = 0;
    int kernel_height = 0, kernel_width = 0;
    int fft_height = 0, fft_width = 0;
    complex_raster image_fft;
};

inline frequency_plan prepare_frequency(const raster& padded, int out_height, int out_width,
                                        int kh, int kw)
{
    frequency_plan plan;
    plan.out_height = out_height;
    plan.out_width = out_width;
    plan.kernel_height = kh;
    plan.kernel_width = kw;
    plan.fft_height = static_cast<int>(fft::next_pow2(static_cast<std::size_t>(padded.height() + kh - 1)));
    plan.fft_width = static_cast<int>(fft::next_pow2(static_cast<std::size_t>(padded.width() + kw - 1)));
    plan.image_fft = complex_raster(plan.fft_height, plan.fft_width, std::complex<double>{});
    for (int r = 0; r < padded.height(); ++r)
        for (int c = 0; c < padded.width(); ++c)
            plan.image_fft(r, c) = {padded(r, c), 0.0};
    fft::transform_2d(plan.image_fft, false);
    return plan;
}

inline complex_raster frequency_convolve(const frequency_plan& plan, const gabor_kernel& k)
{
    complex_raster work(plan.fft_height, plan.fft_width, std::complex<double>{});
    for (int r = 0; r < plan.kernel_height; ++r)
        for (int c = 0; c < plan.kernel_width; ++c)
            work(r, c) = k.values(r, c);
    fft::transform_2d(work, false);
    for (std::size_t i = 0; i < work.size(); ++i)
        work[i] *= plan.image_fft[i];
    fft::transform_2d(work, true);

    // The linear convolution of the padded image with the kernel holds the
    // requested "same" window starting at (kh-1, kw-1).
    complex_raster out(plan.out_height, plan.out_width);
    for (int r = 0; r < plan.out_height; ++r)
        for (int c = 0; c < plan.out_width; ++c)
            out(r, c) = work(r + plan.kernel_height - 1, c + plan.kernel_width - 1);
    return out;
}

} // namespace detail

/// "Same"-size convolution of a grayscale image with one complex kernel.
/// Output dims equal input dims; borders are synthesized per `mode`. The
/// direct and frequency engines agree within 1e-5 absolute per pixel.
inline complex_raster convolve(const raster& img, const gabor_kernel& k, padding_mode mode,
                               conv_engine engine = conv_engine::automatic)
{
    if (img.empty())
        throw std::invalid_argument("cannot convolve an empty image");
    const int kh = k.values.height(), kw = k.values.width();
    const raster padded = detail::pad_for_kernel(img, kh, kw, k.center_row(), k.center_col(), mode);
    switch (detail::resolve_engine(engine, kh, kw)) {
    case conv_engine::direct:
        return detail::direct_convolve_padded(padded, k, img.height(), img.width());
    default: {
        const auto plan = detail::prepare_frequency(padded, img.height(), img.width(), kh, kw);
        return detail::frequency_convolve(plan, k);
    }
    }
}

/// Complex responses of the image to every kernel of the bank, in the
/// bank's scale-major order. Kernels are distributed over `jobs` threads;
/// each response lands in its own slot, so the stack does not depend on the
/// worker count.
struct response_stack {
    gabor_bank_config config;
    std::vector<complex_raster> responses;
};

inline response_stack transform_all(const raster& img, const gabor_bank_config& cfg,
                                    padding_mode mode,
                                    conv_engine engine = conv_engine::automatic, int jobs = 1)
{
    const auto bank = make_bank(cfg);
    if (img.empty())
        throw std::invalid_argument("cannot transform an empty image");

    const int kh = cfg.kernel_height, kw = cfg.kernel_width;
    const int cr = (kh - 1) / 2, cc = (kw - 1) / 2;
    const raster padded = detail::pad_for_kernel(img, kh, kw, cr, cc, mode);
    const conv_engine resolved = detail::resolve_engine(engine, kh, kw);

    response_stack stack;
    stack.config = cfg;
    stack.responses.resize(bank.size());

    if (resolved == conv_engine::frequency) {
        const auto plan = detail::prepare_frequency(padded, img.height(), img.width(), kh, kw);
        detail::parallel_for(static_cast<int>(bank.size()), jobs, [&](int i) {
            stack.responses[i] = detail::frequency_convolve(plan, bank[i]);
        });
    } else {
        detail::parallel_for(static_cast<int>(bank.size()), jobs, [&](int i) {
            stack.responses[i] = detail::direct_convolve_padded(padded, bank[i], img.height(),
                                                                img.width());
        });
    }
    return stack;
}

/// Pixelwise L2 norm over the whole stack: sqrt(sum_k |r_k(p)|^2), with the
/// accumulation running in the stack's fixed scale-major order so the
/// result is bit-reproducible.
inline raster fuse_l2(const response_stack& stack)
{
    if (stack.responses.empty())
        throw std::invalid_argument("cannot fuse an empty response stack");
    const int M = stack.responses.front().height();
    const int N = stack.responses.front().width();
    for (const auto& r : stack.responses)
        if (r.height() != M || r.width() != N)
            throw std::invalid_argument("response stack dimensions are inconsistent");

    raster fused(M, N, 0.0);
    for (const auto& resp : stack.responses)
        for (std::size_t i = 0; i < fused.size(); ++i)
            fused[i] += std::norm(resp[i]);
    for (double& v : fused)
        v = std::sqrt(v);
    return fused;
}

/// The resultant image: L2 fusion of all kernel responses. Equivalent to
/// fuse_l2(transform_all(...)) but holds at most `jobs` responses at a time;
/// the squared moduli are still accumulated in scale-major kernel order, so
/// the output is bit-identical to the stack route for every worker count.
inline raster gabor_space(const raster& img, const gabor_bank_config& cfg, padding_mode mode,
                          conv_engine engine = conv_engine::automatic, int jobs = 1)
{
    const auto bank = make_bank(cfg);
    if (img.empty())
        throw std::invalid_argument("cannot transform an empty image");

    const int kh = cfg.kernel_height, kw = cfg.kernel_width;
    const int cr = (kh - 1) / 2, cc = (kw - 1) / 2;
    const raster padded = detail::pad_for_kernel(img, kh, kw, cr, cc, mode);
    const conv_engine resolved = detail::resolve_engine(engine, kh, kw);

    detail::frequency_plan plan;
    if (resolved == conv_engine::frequency)
        plan = detail::prepare_frequency(padded, img.height(), img.width(), kh, kw);

    raster accum(img.height(), img.width(), 0.0);
    const int batch = std::max(1, jobs);
    std::vector<complex_raster> slots(static_cast<std::size_t>(batch));

    for (int base = 0; base < static_cast<int>(bank.size()); base += batch) {
        const int n = std::min<int>(batch, static_cast<int>(bank.size()) - base);
        detail::parallel_for(n, jobs, [&](int i) {
            slots[i] = resolved == conv_engine::frequency
                           ? detail::frequency_convolve(plan, bank[base + i])
                           : detail::direct_convolve_padded(padded, bank[base + i],
                                                            img.height(), img.width());
        });
        for (int i = 0; i < n; ++i)
            for (std::size_t p = 0; p < accum.size(); ++p)
                accum[p] += std::norm(slots[i][p]);
    }

    for (double& v : accum)
        v = std::sqrt(v);
    return accum;
}

} // namespace texweave

#endif
