#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ldh/doppler.hpp"
#include "ldh/types.hpp"

namespace ldh {

enum class GrayScale { Linear, Log };

struct DisplayOptions {
    double lo_pct = 1.0;
    double hi_pct = 99.0;
    GrayScale scale = GrayScale::Log;
};

namespace detail {

inline double percentile(const std::vector<double>& sorted, double pct) {
    if (sorted.empty()) return 0.0;
    const double pos = pct / 100.0 * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace detail

/// Percentile-clipped 8-bit rendering. Clip levels come from the nonzero
/// pixels only; log mode applies log10 before clipping. Degenerate rules:
/// an all-zero image renders black, a constant nonzero image renders its
/// nonzero pixels mid-gray 128 (zeros stay black).
template <class T>
Gray8 to_display_gray(const Mat<T>& image, const DisplayOptions& opts = {}) {
    if (!(opts.lo_pct >= 0.0) || !(opts.lo_pct < opts.hi_pct) || !(opts.hi_pct <= 100.0))
        throw InvalidInput("percentiles must satisfy 0 <= lo < hi <= 100");

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(image.size()));
    for (Index y = 0; y < image.cols(); ++y)
        for (Index x = 0; x < image.rows(); ++x) {
            const double v = static_cast<double>(image(x, y));
            if (v != 0.0 && std::isfinite(v))
                values.push_back(opts.scale == GrayScale::Log ? std::log10(std::abs(v)) : v);
        }

    Gray8 out = Gray8::Zero(image.rows(), image.cols());
    if (values.empty()) return out;  // all-zero image

    std::sort(values.begin(), values.end());
    const double lo = detail::percentile(values, opts.lo_pct);
    const double hi = detail::percentile(values, opts.hi_pct);

    for (Index y = 0; y < image.cols(); ++y)
        for (Index x = 0; x < image.rows(); ++x) {
            const double raw = static_cast<double>(image(x, y));
            if (raw == 0.0) continue;  // stays black
            if (hi <= lo) {
                out(x, y) = 128;
                continue;
            }
            const double v = opts.scale == GrayScale::Log ? std::log10(std::abs(raw)) : raw;
            const double unit = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
            out(x, y) = static_cast<unsigned char>(std::lround(unit * 255.0));
        }
    return out;
}

template <class T>
Gray8 to_display_gray(const PowerDopplerImage<T>& image, const DisplayOptions& opts = {}) {
    return to_display_gray(image.m0, opts);
}

/// RGB image with channels in [0, 1], indexed (x, y) like every other image.
struct CompositeImage {
    Mat<float> r, g, b;

    Index nx() const { return r.rows(); }
    Index ny() const { return r.cols(); }
};

struct ChannelVector {
    float r = 0, g = 0, b = 0;
};

/// Two-band fusion: the high band drives red, the low band drives green and
/// blue equally (cyan). Each band is normalized independently.
template <class T>
CompositeImage composite_two_band(const Mat<T>& low, const Mat<T>& high,
                                  const DisplayOptions& opts = {}) {
    if (low.rows() != high.rows() || low.cols() != high.cols())
        throw InvalidInput("composite inputs must have equal dimensions");
    const Gray8 low_gray = to_display_gray(low, opts);
    const Gray8 high_gray = to_display_gray(high, opts);
    CompositeImage out;
    out.r = high_gray.template cast<float>() / 255.0f;
    out.g = low_gray.template cast<float>() / 255.0f;
    out.b = out.g;
    return out;
}

/// Two-phase fusion for artery/vein discrimination: the systole mean maps to
/// an orange channel vector, the diastole mean to blue, summed and clipped.
template <class T>
CompositeImage composite_two_phase(const Mat<T>& systole, const Mat<T>& diastole,
                                   const DisplayOptions& opts = {},
                                   ChannelVector orange = {1.0f, 0.5f, 0.0f},
                                   ChannelVector blue = {0.0f, 0.3f, 1.0f}) {
    if (systole.rows() != diastole.rows() || systole.cols() != diastole.cols())
        throw InvalidInput("composite inputs must have equal dimensions");
    const Mat<float> ws = to_display_gray(systole, opts).template cast<float>() / 255.0f;
    const Mat<float> wd = to_display_gray(diastole, opts).template cast<float>() / 255.0f;
    CompositeImage out;
    auto mix = [&](float cs, float cd) -> Mat<float> {
        return (ws * cs + wd * cd).cwiseMin(1.0f).cwiseMax(0.0f);
    };
    out.r = mix(orange.r, blue.r);
    out.g = mix(orange.g, blue.g);
    out.b = mix(orange.b, blue.b);
    return out;
}

/// Mean of a frame range [first, last] (inclusive) of a movie, for picking
/// systole/diastole phases.
template <class T>
Mat<T> mean_frame_range(const std::vector<PowerDopplerImage<T>>& frames, Index first, Index last) {
    if (frames.empty() || first < 0 || last < first ||
        last >= static_cast<Index>(frames.size()))
        throw InvalidInput("frame range out of bounds");
    Mat<double> acc = Mat<double>::Zero(frames.front().m0.rows(), frames.front().m0.cols());
    for (Index w = first; w <= last; ++w)
        acc += frames[static_cast<std::size_t>(w)].m0.template cast<double>();
    return (acc / static_cast<double>(last - first + 1)).cast<T>();
}

}  // namespace ldh
