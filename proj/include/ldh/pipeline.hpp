#pragma once

#include <atomic>
#include <chrono>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ldh/doppler.hpp"
#include "ldh/stack.hpp"
#include "ldh/svd.hpp"
#include "ldh/types.hpp"
#include "ldh/window.hpp"

namespace ldh {

enum class Emit : unsigned {
    Movie = 1u << 0,
    MeanImage = 1u << 1,
    Spectrogram = 1u << 2,
    Series = 1u << 3,
};

inline unsigned operator|(Emit a, Emit b) {
    return static_cast<unsigned>(a) | static_cast<unsigned>(b);
}
inline unsigned operator|(unsigned a, Emit b) { return a | static_cast<unsigned>(b); }
inline bool emits(unsigned set, Emit item) { return (set & static_cast<unsigned>(item)) != 0; }

struct PipelineConfig {
    WindowPlan plan;
    FrequencyBand band;
    FilterMode mode = FilterMode::Svd;
    RankRule rank_rule;
    unsigned emit = Emit::Movie | Emit::MeanImage;
    std::optional<Roi> roi;          // required for Spectrogram / Series
    int windows_in_flight = 2;       // worker count == resident-window bound
};

/// Wall time spent per stage, seconds.
struct StageTimings {
    double svd = 0, filter = 0, spectrum = 0, integrate = 0, total = 0;

    StageTimings& operator+=(const StageTimings& other) {
        svd += other.svd;
        filter += other.filter;
        spectrum += other.spectrum;
        integrate += other.integrate;
        total += other.total;
        return *this;
    }
};

template <class T>
struct PowerDopplerMovie {
    std::vector<PowerDopplerImage<T>> frames;  // one per window, in window order
    Eigen::VectorXd timestamps;                // [s], strictly increasing
    FrequencyBand band;
    FilterMode mode = FilterMode::Svd;
};

template <class T>
struct ProcessResult {
    PowerDopplerMovie<T> movie;
    Mat<T> mean_image;                        // per-pixel mean of the movie frames
    std::optional<Spectrogram<T>> spectrogram;
    std::optional<RoiSeries> series;
    ClutterRank rank_used{0};
    std::vector<StageTimings> window_timings;
    StageTimings totals;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

template <class T>
void validate(const HologramStack<T>& stack, const PipelineConfig& cfg) {
    validate(stack);
    if (cfg.plan.windows() < 1) throw InvalidInput("window plan is empty");
    if (cfg.plan.starts.back() + cfg.plan.n_t > stack.nt)
        throw InvalidInput("window plan exceeds the stack length");
    validate(cfg.band, stack.fs);
    if ((emits(cfg.emit, Emit::Spectrogram) || emits(cfg.emit, Emit::Series)) && !cfg.roi)
        throw InvalidInput("spectrogram and series outputs require an ROI");
    if (cfg.roi) validate(*cfg.roi, stack.nx, stack.ny);
    if (cfg.windows_in_flight < 1) throw InvalidInput("need at least one worker");
}

/// Run the per-window chain over the whole plan: extract window, optionally
/// SVD-filter it, transform to the DPSD, integrate the band. Windows are
/// independent; a bounded pool of workers each owns one window end-to-end
/// and results are merged in window order, so the output never depends on
/// scheduling. The basis is recomputed for every window.
template <class T>
ProcessResult<T> process_stack(const HologramStack<T>& stack, const PipelineConfig& cfg) {
    validate(stack, cfg);

    const Index n = cfg.plan.n_t;
    const Index window_count = cfg.plan.windows();
    const ClutterRank n_c = cfg.mode == FilterMode::Svd
                                ? cfg.rank_rule.resolve(stack.fs, n, cfg.band.f1)
                                : ClutterRank{0};

    const bool want_gram = emits(cfg.emit, Emit::Spectrogram);
    const std::vector<Index> roi_rows = cfg.roi ? cfg.roi->pixel_indices() : std::vector<Index>{};

    struct WindowOutput {
        PowerDopplerImage<T> image;
        Eigen::VectorXd roi_dpsd;  // two-sided, only when a spectrogram is requested
        StageTimings timings;
    };
    std::vector<WindowOutput> outputs(static_cast<std::size_t>(window_count));

    std::atomic<Index> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    Index failed_window = -1;

    auto worker = [&]() {
        for (;;) {
            const Index w = next.fetch_add(1);
            if (w >= window_count) return;
            try {
                const Index start = cfg.plan.starts[static_cast<std::size_t>(w)];
                WindowOutput& out = outputs[static_cast<std::size_t>(w)];
                const auto t_window = std::chrono::steady_clock::now();
                const auto view = casorati_view(stack, start, n);

                DopplerSpectrum<T> spectrum;
                if (cfg.mode == FilterMode::Svd) {
                    auto t0 = std::chrono::steady_clock::now();
                    const SvdBasis<T> basis =
                        compute_svd_basis(view, stack.nx, stack.ny, SpatialVectors::None);
                    out.timings.svd = detail::seconds_since(t0);

                    t0 = std::chrono::steady_clock::now();
                    const CMat<T> filtered = clutter_filter(view, basis, n_c);
                    out.timings.filter = detail::seconds_since(t0);

                    t0 = std::chrono::steady_clock::now();
                    spectrum = dpsd_window(filtered, stack.fs, stack.nx, stack.ny, start);
                    out.timings.spectrum = detail::seconds_since(t0);
                } else {
                    const auto t0 = std::chrono::steady_clock::now();
                    spectrum = dpsd_window(view, stack.fs, stack.nx, stack.ny, start);
                    out.timings.spectrum = detail::seconds_since(t0);
                }
                if (!spectrum.power.allFinite())
                    throw NumericalFailure("non-finite spectrum");

                const auto t0 = std::chrono::steady_clock::now();
                out.image = power_doppler(spectrum, cfg.band);
                out.timings.integrate = detail::seconds_since(t0);

                if (want_gram) {
                    out.roi_dpsd = Eigen::VectorXd::Zero(n);
                    for (const Index p : roi_rows)
                        out.roi_dpsd += spectrum.power.row(p).transpose().template cast<double>();
                    out.roi_dpsd /= static_cast<double>(roi_rows.size());
                }
                out.timings.total = detail::seconds_since(t_window);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                    failed_window = w;
                }
                return;
            }
        }
    };

    const int worker_count =
        static_cast<int>(std::min<Index>(cfg.windows_in_flight, window_count));
    if (worker_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
        for (auto& thread : pool) thread.join();
    }
    if (failure) {
        const std::string where = "window " + std::to_string(failed_window) + ": ";
        try {
            std::rethrow_exception(failure);
        } catch (const InvalidInput& e) {
            throw InvalidInput(where + e.what());
        } catch (const std::exception& e) {
            throw NumericalFailure(where + e.what());
        }
    }

    ProcessResult<T> result;
    result.rank_used = n_c;
    result.movie.band = cfg.band;
    result.movie.mode = cfg.mode;
    result.movie.timestamps.resize(window_count);
    result.movie.frames.reserve(static_cast<std::size_t>(window_count));
    result.window_timings.reserve(static_cast<std::size_t>(window_count));

    Mat<double> mean_acc = Mat<double>::Zero(stack.nx, stack.ny);
    for (Index w = 0; w < window_count; ++w) {
        WindowOutput& out = outputs[static_cast<std::size_t>(w)];
        result.movie.timestamps[w] =
            (static_cast<double>(cfg.plan.starts[static_cast<std::size_t>(w)]) +
             static_cast<double>(n) / 2.0) /
            stack.fs;
        mean_acc += out.image.m0.template cast<double>();
        result.totals += out.timings;
        result.window_timings.push_back(out.timings);
        result.movie.frames.push_back(std::move(out.image));
    }
    if (emits(cfg.emit, Emit::MeanImage))
        result.mean_image = (mean_acc / static_cast<double>(window_count)).cast<T>();

    if (want_gram) {
        Spectrogram<T> gram;
        gram.fs = stack.fs;
        gram.freq_axis = dft_freq_axis(n, stack.fs);
        gram.time = result.movie.timestamps;
        gram.power.resize(n, window_count);
        for (Index w = 0; w < window_count; ++w)
            gram.power.col(w) = outputs[static_cast<std::size_t>(w)].roi_dpsd.template cast<T>();
        result.spectrogram = std::move(gram);
    }
    if (emits(cfg.emit, Emit::Series))
        result.series = roi_mean_series(result.movie.frames, result.movie.timestamps, *cfg.roi);
    return result;
}

/// Side-by-side run of the SVD and Fourier-only modes on identical windows.
template <class T>
struct ModeComparison {
    ProcessResult<T> svd;
    ProcessResult<T> fourier;
    Eigen::VectorXd frame_rel_diff;   // per-window relative Frobenius difference
    Eigen::VectorXd roi_power_ratio;  // per-window ROI mean power, svd / fourier
};

template <class T>
ModeComparison<T> compare_modes(const HologramStack<T>& stack, PipelineConfig cfg) {
    ModeComparison<T> cmp;
    cfg.mode = FilterMode::Svd;
    cmp.svd = process_stack(stack, cfg);
    cfg.mode = FilterMode::FourierOnly;
    cmp.fourier = process_stack(stack, cfg);

    const Index window_count = cfg.plan.windows();
    cmp.frame_rel_diff.resize(window_count);
    cmp.roi_power_ratio.resize(window_count);
    const Roi roi = cfg.roi ? *cfg.roi : roi_full(stack.nx, stack.ny);
    for (Index w = 0; w < window_count; ++w) {
        const auto& a = cmp.svd.movie.frames[static_cast<std::size_t>(w)].m0;
        const auto& b = cmp.fourier.movie.frames[static_cast<std::size_t>(w)].m0;
        const double base = b.template cast<double>().norm();
        cmp.frame_rel_diff[w] =
            (a.template cast<double>() - b.template cast<double>()).norm() /
            (base > 0.0 ? base : 1.0);
        double num = 0.0, den = 0.0;
        for (Index y = 0; y < stack.ny; ++y)
            for (Index x = 0; x < stack.nx; ++x)
                if (roi.mask(x, y)) {
                    num += static_cast<double>(a(x, y));
                    den += static_cast<double>(b(x, y));
                }
        cmp.roi_power_ratio[w] = den > 0.0 ? num / den : 0.0;
    }
    return cmp;
}

}  // namespace ldh
