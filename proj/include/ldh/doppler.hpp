#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "ldh/stack.hpp"
#include "ldh/svd.hpp"
#include "ldh/types.hpp"
#include "ldh/window.hpp"

namespace ldh {

/// Integration band [f1, f2] in Hz, applied two-sided over |f|.
struct FrequencyBand {
    double f1 = 0.0;
    double f2 = 0.0;
};

inline void validate(const FrequencyBand& band, double fs) {
    if (!(band.f1 >= 0.0) || !(band.f1 < band.f2) || !(band.f2 <= fs / 2.0 * (1.0 + 1e-12)))
        throw InvalidInput("frequency band must satisfy 0 <= f1 < f2 <= fs/2");
}

/// Two-sided frequency axis for an n-point DFT at sampling rate fs:
/// ascending, spacing fs/n, spanning (-fs/2, fs/2] (the Nyquist bin, when it
/// exists, is the positive end).
inline Eigen::VectorXd dft_freq_axis(Index n, double fs) {
    if (n < 1) throw InvalidInput("frequency axis needs n >= 1");
    Eigen::VectorXd axis(n);
    for (Index s = 0; s < n; ++s)
        axis[s] = static_cast<double>(s - (n - 1) / 2) * fs / static_cast<double>(n);
    return axis;
}

/// Ascending-axis position of raw DFT bin k.
inline Index shifted_bin(Index k, Index n) {
    const Index signed_bin = (k <= n / 2) ? k : k - n;
    return signed_bin + (n - 1) / 2;
}

/// Per-pixel Doppler power spectral density of one short-time window.
template <class T>
struct DopplerSpectrum {
    Index nx = 0;
    Index ny = 0;
    double fs = 0.0;
    Index window_start = 0;        // t_n [frames]
    Eigen::VectorXd freq_axis;     // n_t bins, ascending two-sided
    Mat<T> power;                  // (nx*ny) x n_t, bins in freq_axis order

    Index bins() const { return freq_axis.size(); }
};

/// Band-integrated power Doppler image for one window position.
template <class T>
struct PowerDopplerImage {
    Mat<T> m0;  // nx x ny, nonnegative
    FrequencyBand band;
    Index window_start = 0;
};

/// Pixel-wise DPSD of a space-time window: S(f) = |DFT h|^2 with the plain
/// unnormalized transform, no apodization, no zero-padding. Parseval then
/// reads sum_f S(f) = n_t * sum_t |h(t)|^2.
template <class Derived>
DopplerSpectrum<detail::RealScalarOf<Derived>> dpsd_window(const Eigen::MatrixBase<Derived>& window,
                                                           double fs, Index nx, Index ny,
                                                           Index window_start = 0) {
    using T = detail::RealScalarOf<Derived>;
    if (window.cols() < 2) throw InvalidInput("DPSD needs a window of n_t >= 2 frames");
    if (nx * ny != window.rows())
        throw InvalidInput("nx*ny does not match the window rows");
    if (!window.allFinite()) throw InvalidInput("window contains non-finite samples");
    if (!(fs > 0.0)) throw InvalidInput("sampling frequency must be > 0");

    const Index n = window.cols();
    DopplerSpectrum<T> spectrum;
    spectrum.nx = nx;
    spectrum.ny = ny;
    spectrum.fs = fs;
    spectrum.window_start = window_start;
    spectrum.freq_axis = dft_freq_axis(n, fs);
    spectrum.power.resize(window.rows(), n);

    Eigen::FFT<T> fft;
    CVec<T> signal(n), transformed(n);
    for (Index p = 0; p < window.rows(); ++p) {
        signal = window.row(p).transpose();
        fft.fwd(transformed.data(), signal.data(), static_cast<int>(n));
        for (Index k = 0; k < n; ++k)
            spectrum.power(p, shifted_bin(k, n)) = std::norm(transformed[k]);
    }
    return spectrum;
}

/// Axis positions whose |f| falls in the band. Inclusion is half-open
/// [f1, f2), except f2 at Nyquist which is inclusive so that the full band
/// 0..fs/2 covers every bin exactly once.
inline std::vector<Index> band_bins(const Eigen::VectorXd& freq_axis, const FrequencyBand& band,
                                    double fs) {
    validate(band, fs);
    const bool nyquist_inclusive = band.f2 >= fs / 2.0 * (1.0 - 1e-12);
    std::vector<Index> bins;
    for (Index s = 0; s < freq_axis.size(); ++s) {
        const double af = std::abs(freq_axis[s]);
        if (af >= band.f1 && (af < band.f2 || (nyquist_inclusive && af <= band.f2)))
            bins.push_back(s);
    }
    return bins;
}

/// Band-integrated power Doppler, M0 = sum_{f1 <= |f| <= f2} S(f) * fs/n_t.
/// Both sidebands contribute. Accumulation runs in double in ascending bin
/// order so that disjoint bands add exactly.
template <class T>
PowerDopplerImage<T> power_doppler(const DopplerSpectrum<T>& spectrum, const FrequencyBand& band) {
    const std::vector<Index> bins = band_bins(spectrum.freq_axis, band, spectrum.fs);
    if (bins.empty()) throw InvalidInput("frequency band selects no DFT bins");

    const double df = spectrum.fs / static_cast<double>(spectrum.bins());
    PowerDopplerImage<T> image;
    image.band = band;
    image.window_start = spectrum.window_start;
    image.m0.resize(spectrum.nx, spectrum.ny);
    for (Index p = 0; p < spectrum.power.rows(); ++p) {
        double acc = 0.0;
        for (const Index s : bins) acc += static_cast<double>(spectrum.power(p, s));
        image.m0(p % spectrum.nx, p / spectrum.nx) = static_cast<T>(acc * df);
    }
    return image;
}

/// ROI-mean waveform extracted from a power Doppler movie.
struct RoiSeries {
    Eigen::VectorXd time;   // [s], window centers
    Eigen::VectorXd power;  // arbitrary units
};

template <class T>
RoiSeries roi_mean_series(const std::vector<PowerDopplerImage<T>>& frames,
                          const Eigen::VectorXd& timestamps, const Roi& roi) {
    if (frames.empty()) throw InvalidInput("empty movie");
    if (timestamps.size() != static_cast<Index>(frames.size()))
        throw InvalidInput("timestamp count does not match frame count");
    validate(roi, frames.front().m0.rows(), frames.front().m0.cols());

    RoiSeries series;
    series.time = timestamps;
    series.power.resize(static_cast<Index>(frames.size()));
    for (std::size_t w = 0; w < frames.size(); ++w) {
        const auto& m0 = frames[w].m0;
        if (m0.rows() != frames.front().m0.rows() || m0.cols() != frames.front().m0.cols())
            throw InvalidInput("movie frames have inconsistent dimensions");
        double acc = 0.0;
        for (Index y = 0; y < m0.cols(); ++y)
            for (Index x = 0; x < m0.rows(); ++x)
                if (roi.mask(x, y)) acc += static_cast<double>(m0(x, y));
        series.power[static_cast<Index>(w)] = acc / static_cast<double>(roi.count());
    }
    return series;
}

/// Clutter-filter settings shared by the spectrogram and the pipeline.
enum class FilterMode { FourierOnly, Svd };

/// How the clutter rank is chosen in SVD mode.
struct RankRule {
    enum class Kind { Formula, Explicit };
    Kind kind = Kind::Formula;
    double formula_f1 = -1.0;  // < 0: use the integration band's f1
    Index explicit_n_c = 0;

    static RankRule formula() { return {}; }
    static RankRule formula(double f1) { return {Kind::Formula, f1, 0}; }
    static RankRule explicit_rank(Index n_c) { return {Kind::Explicit, -1.0, n_c}; }

    ClutterRank resolve(double fs, Index n_t, double band_f1) const {
        if (kind == Kind::Explicit) {
            if (explicit_n_c < 0 || explicit_n_c > n_t)
                throw InvalidInput("explicit clutter rank must be in [0, n_t]");
            return ClutterRank{explicit_n_c};
        }
        return rank_from_cutoff(fs, n_t, formula_f1 >= 0.0 ? formula_f1 : band_f1);
    }
};

struct FilterSettings {
    FilterMode mode = FilterMode::FourierOnly;
    RankRule rank_rule;
};

/// ROI-averaged DPSD per short-time window, frequency down, windows across.
/// `power` keeps the full two-sided linear data; the dB rendering shows the
/// nonnegative-frequency half only.
template <class T>
struct Spectrogram {
    Mat<T> power;               // n_t bins x n_windows, two-sided linear
    Eigen::VectorXd freq_axis;  // n_t bins, ascending
    Eigen::VectorXd time;       // window centers [s]
    double fs = 0.0;
};

/// dB rendering of the nonnegative-frequency half, 10*log10(v / global max),
/// rows ascending from 0 Hz to fs/2.
template <class T>
Mat<T> spectrogram_db(const Spectrogram<T>& gram) {
    const double peak = static_cast<double>(gram.power.maxCoeff());
    if (!(peak > 0.0)) throw InvalidInput("all-zero spectrogram");
    const Index first = (gram.power.rows() - 1) / 2;  // bin at 0 Hz
    const double floor_ratio = std::pow(10.0, kDbFloor / 10.0);
    Mat<T> db(gram.power.rows() - first, gram.power.cols());
    for (Index c = 0; c < gram.power.cols(); ++c)
        for (Index r = first; r < gram.power.rows(); ++r)
            db(r - first, c) = static_cast<T>(
                10.0 * std::log10(std::max(static_cast<double>(gram.power(r, c)) / peak,
                                           floor_ratio)));
    return db;
}

/// Spectrogram of the ROI-averaged DPSD over a window plan, with optional
/// per-window SVD clutter filtering. Only ROI rows are filtered (the
/// temporal projector acts row-wise) but the basis always comes from the
/// full field.
template <class T>
Spectrogram<T> spectrogram(const HologramStack<T>& stack, const Roi& roi, const WindowPlan& plan,
                           const FilterSettings& filter = {}, double rank_band_f1 = 0.0) {
    validate(stack);
    validate(roi, stack.nx, stack.ny);
    if (plan.windows() < 1) throw InvalidInput("window plan is empty");
    if (plan.starts.back() + plan.n_t > stack.nt)
        throw InvalidInput("window plan exceeds the stack length");

    const std::vector<Index> rois = roi.pixel_indices();
    const Index n = plan.n_t;

    Spectrogram<T> gram;
    gram.fs = stack.fs;
    gram.freq_axis = dft_freq_axis(n, stack.fs);
    gram.time.resize(plan.windows());
    gram.power.resize(n, plan.windows());

    Eigen::FFT<T> fft;
    CVec<T> signal(n), transformed(n);
    CMat<T> rows(static_cast<Index>(rois.size()), n);
    for (Index w = 0; w < plan.windows(); ++w) {
        const Index start = plan.starts[static_cast<std::size_t>(w)];
        const auto window = casorati_view(stack, start, n);
        for (std::size_t i = 0; i < rois.size(); ++i)
            rows.row(static_cast<Index>(i)) = window.row(rois[i]);
        if (filter.mode == FilterMode::Svd) {
            const SvdBasis<T> basis =
                compute_svd_basis(window, stack.nx, stack.ny, SpatialVectors::None);
            const ClutterRank n_c = filter.rank_rule.resolve(stack.fs, n, rank_band_f1);
            if (n_c.value > 0) {
                const auto kept = basis.temporal.leftCols(n_c.value);
                rows -= (rows * kept) * kept.adjoint();
            }
        }
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
        for (Index i = 0; i < rows.rows(); ++i) {
            signal = rows.row(i).transpose();
            fft.fwd(transformed.data(), signal.data(), static_cast<int>(n));
            for (Index k = 0; k < n; ++k)
                mean[shifted_bin(k, n)] += std::norm(transformed[k]);
        }
        gram.power.col(w) = (mean / static_cast<double>(rois.size())).cast<T>();
        gram.time[w] = (static_cast<double>(start) + static_cast<double>(n) / 2.0) / stack.fs;
    }
    return gram;
}

}  // namespace ldh
