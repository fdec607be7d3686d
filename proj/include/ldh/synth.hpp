#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ldh/doppler.hpp"
#include "ldh/rng.hpp"
#include "ldh/stack.hpp"
#include "ldh/types.hpp"

namespace ldh {

/// One vessel painted into the flow map. `sigma` is the blood-signal
/// amplitude at the vessel axis (power sigma^2); the profile tapers
/// parabolically to the wall so the ground-truth map has spatial structure.
struct VesselShape {
    enum class Kind { Disk, Rect, Annulus };
    Kind kind = Kind::Disk;
    double cx = 0, cy = 0;          // disk / annulus center
    double r0 = 0, r1 = 0;          // disk: r0 radius; annulus: [r0, r1]
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // rect corners (inclusive)
    double bandwidth_hz = 0;        // Lorentzian half width at half maximum
    double sigma = 1.0;
};

/// One scheduled motion-clutter burst: a single spatial pattern times a
/// narrowband temporal modulation, so spatially rank-1 (or near-rank-1 in
/// smooth mode with a phase wobble).
struct ClutterBurst {
    Index start = 0;      // first frame
    Index duration = 0;   // frames
    double center_hz = 0;
    double amplitude = 0;
    enum class Pattern { Uniform, Smooth } pattern = Pattern::Uniform;
};

/// Camera-jitter artifact: a diffraction-like pattern around one pixel,
/// gated by a high-frequency pseudo-random chip sequence on a carrier.
struct JitterSpec {
    Index x = 0, y = 0;
    double carrier_hz = 0;
    double amplitude = 0;
    Index chip_frames = 16;  // chip length; spectral spread ~ fs / chip_frames
};

struct SynthScene {
    Index nx = 0, ny = 0, nt = 0;
    double fs = 0;
    std::uint64_t seed = 0;
    double background_amplitude = 0;  // static speckle field
    std::vector<VesselShape> vessels;
    double pulse_hz = 0;     // cardiac-like power modulation of the blood signal
    double pulse_depth = 0;  // 0 = stationary flow
    std::vector<ClutterBurst> clutter;
    double clutter_wobble = 0;  // smooth-pattern phase wobble [rad]; > 0 => near-rank-1
    std::optional<JitterSpec> jitter;
    double noise_amplitude = 0;  // optional additive white complex noise
};

/// Everything a test needs to score a reconstruction without touching the
/// generator internals again.
struct GroundTruth {
    Index nx = 0, ny = 0, nt = 0;
    double fs = 0;
    Mat<double> blood_sigma2;       // nx x ny, stationary blood power (before pulse modulation)
    Mat<double> blood_rho;          // nx x ny, AR(1) coefficient per pixel
    Eigen::VectorXd envelope;       // nt, blood power modulation e(t), mean-one-ish
    std::vector<ClutterBurst> bursts;
    Mat<double> jitter_pattern_abs;  // nx x ny, |s(x,y)|; empty if no jitter
};

namespace synth_detail {

// Component tags keying the random streams; see rng.hpp.
inline constexpr std::uint64_t kBackground = 1;
inline constexpr std::uint64_t kBlood = 2;
inline constexpr std::uint64_t kClutter = 3;
inline constexpr std::uint64_t kJitter = 4;
inline constexpr std::uint64_t kNoise = 5;

inline double hann01(double u) { return 0.5 - 0.5 * std::cos(2.0 * M_PI * u); }

/// AR(1) coefficient realizing a Lorentzian line of the given HWHM.
inline double rho_from_bandwidth(double bandwidth_hz, double fs) {
    return std::exp(-2.0 * M_PI * bandwidth_hz / fs);
}

/// Blood power modulation e(t) in [1-depth, 1]: raised-cosine peaks at the
/// pulse rate, squared to sharpen the systolic lobe.
inline double pulse_envelope(double t_s, double pulse_hz, double depth) {
    if (pulse_hz <= 0.0 || depth <= 0.0) return 1.0;
    const double lobe = hann01(pulse_hz * t_s);
    return (1.0 - depth) + depth * lobe * lobe;
}

/// Low-order polynomial clutter pattern for ClutterBurst::Pattern::Smooth:
/// gently varying magnitude and phase, still a single spatial vector.
inline std::complex<double> smooth_pattern(Index x, Index y, Index nx, Index ny) {
    const double u = nx > 1 ? 2.0 * static_cast<double>(x) / static_cast<double>(nx - 1) - 1.0 : 0.0;
    const double v = ny > 1 ? 2.0 * static_cast<double>(y) / static_cast<double>(ny - 1) - 1.0 : 0.0;
    const double magnitude = 1.0 + 0.45 * (0.6 * u + 0.8 * v - 0.5 * u * v);
    const double phase = M_PI * (0.7 * u - 0.4 * v + 0.3 * u * u);
    return std::polar(std::max(magnitude, 0.1), phase);
}

/// Smooth tilt field used by the near-rank-1 wobble mode.
inline double wobble_phase(Index x, Index y, Index nx, Index ny) {
    const double u = nx > 1 ? 2.0 * static_cast<double>(x) / static_cast<double>(nx - 1) - 1.0 : 0.0;
    const double v = ny > 1 ? 2.0 * static_cast<double>(y) / static_cast<double>(ny - 1) - 1.0 : 0.0;
    return u + 0.5 * v;
}

/// Diffraction-like complex pattern radiating from the jittering pixel:
/// quadratic-phase rings with a slow radial decay, magnitude 1 at the pixel.
inline std::complex<double> jitter_pattern(Index x, Index y, const JitterSpec& spec) {
    const double dx = static_cast<double>(x - spec.x);
    const double dy = static_cast<double>(y - spec.y);
    const double r2 = dx * dx + dy * dy;
    const double magnitude = 1.0 / (1.0 + std::sqrt(r2) / 8.0);
    return std::polar(magnitude, 0.2 * r2);
}

}  // namespace synth_detail

inline void validate(const SynthScene& scene) {
    if (scene.nx < 1 || scene.ny < 1 || scene.nt < 1 || !(scene.fs > 0.0))
        throw InvalidInput("scene dimensions must be positive");
    for (const auto& vessel : scene.vessels) {
        if (vessel.bandwidth_hz < 0.0 || vessel.bandwidth_hz > scene.fs / 2.0)
            throw InvalidInput("vessel bandwidth must lie in [0, fs/2]");
        if (vessel.sigma < 0.0) throw InvalidInput("vessel amplitude must be >= 0");
    }
    for (const auto& burst : scene.clutter) {
        if (std::abs(burst.center_hz) > scene.fs / 2.0)
            throw InvalidInput("clutter center frequency exceeds Nyquist");
        if (burst.amplitude < 0.0) throw InvalidInput("clutter amplitude must be >= 0");
        if (burst.start < 0 || burst.duration < 0 || burst.start + burst.duration > scene.nt)
            throw InvalidInput("clutter burst exceeds the acquisition");
    }
    if (scene.jitter) {
        if (std::abs(scene.jitter->carrier_hz) > scene.fs / 2.0)
            throw InvalidInput("jitter carrier exceeds Nyquist");
        if (scene.jitter->chip_frames < 1) throw InvalidInput("jitter chip length must be >= 1");
    }
    if (scene.background_amplitude < 0.0 || scene.noise_amplitude < 0.0 ||
        scene.pulse_depth < 0.0 || scene.pulse_depth > 1.0)
        throw InvalidInput("amplitudes must be >= 0 and pulse depth in [0, 1]");
}

/// Paint the vessel list into per-pixel (sigma^2, rho) maps. Later vessels
/// override earlier ones where they overlap.
inline void paint_vessels(const SynthScene& scene, Mat<double>& sigma2, Mat<double>& rho) {
    sigma2 = Mat<double>::Zero(scene.nx, scene.ny);
    rho = Mat<double>::Zero(scene.nx, scene.ny);
    for (const auto& vessel : scene.vessels) {
        const double rho_v = synth_detail::rho_from_bandwidth(vessel.bandwidth_hz, scene.fs);
        for (Index y = 0; y < scene.ny; ++y) {
            for (Index x = 0; x < scene.nx; ++x) {
                double weight = -1.0;  // < 0: outside
                const double dx = static_cast<double>(x) - vessel.cx;
                const double dy = static_cast<double>(y) - vessel.cy;
                const double r = std::sqrt(dx * dx + dy * dy);
                switch (vessel.kind) {
                    case VesselShape::Kind::Disk:
                        if (r <= vessel.r0 && vessel.r0 > 0.0) {
                            const double q = r / vessel.r0;
                            weight = 1.0 - 0.75 * q * q;  // parabolic profile
                        }
                        break;
                    case VesselShape::Kind::Annulus:
                        if (r >= vessel.r0 && r <= vessel.r1) weight = 1.0;
                        break;
                    case VesselShape::Kind::Rect:
                        if (x >= vessel.x0 && x <= vessel.x1 && y >= vessel.y0 && y <= vessel.y1)
                            weight = 1.0;
                        break;
                }
                if (weight > 0.0) {
                    sigma2(x, y) = vessel.sigma * vessel.sigma * weight;
                    rho(x, y) = rho_v;
                }
            }
        }
    }
}

/// Synthesize a hologram stack with known ground truth. Components are
/// accumulated in the fixed order background, blood, clutter, jitter, noise;
/// each draws from its own (seed, component, pixel) stream, so generating a
/// sub-scene and summing reproduces the joint stack bit for bit.
template <class T = float>
std::pair<HologramStack<T>, GroundTruth> generate_stack(const SynthScene& scene) {
    using namespace synth_detail;
    validate(scene);

    HologramStack<T> stack;
    stack.nx = scene.nx;
    stack.ny = scene.ny;
    stack.nt = scene.nt;
    stack.fs = scene.fs;
    stack.frames = CMat<T>::Zero(scene.nx * scene.ny, scene.nt);

    GroundTruth truth;
    truth.nx = scene.nx;
    truth.ny = scene.ny;
    truth.nt = scene.nt;
    truth.fs = scene.fs;
    truth.bursts = scene.clutter;
    paint_vessels(scene, truth.blood_sigma2, truth.blood_rho);

    truth.envelope.resize(scene.nt);
    for (Index t = 0; t < scene.nt; ++t)
        truth.envelope[t] = pulse_envelope(static_cast<double>(t) / scene.fs, scene.pulse_hz,
                                           scene.pulse_depth);

    const Index npix = scene.nx * scene.ny;

    // Static background speckle, frozen in time.
    if (scene.background_amplitude > 0.0) {
        for (Index p = 0; p < npix; ++p) {
            RandomStream rng(scene.seed, kBackground, static_cast<std::uint64_t>(p));
            const std::complex<T> value(
                static_cast<std::complex<T>>(scene.background_amplitude *
                                             rng.next_complex_gaussian()));
            stack.frames.row(p).array() += value;
        }
    }

    // Blood: per-pixel independent complex AR(1) process (Lorentzian line),
    // power-modulated by the pulse envelope.
    for (Index p = 0; p < npix; ++p) {
        const Index x = p % scene.nx;
        const Index y = p / scene.nx;
        const double sigma2 = truth.blood_sigma2(x, y);
        if (sigma2 <= 0.0) continue;
        const double sigma = std::sqrt(sigma2);
        const double rho = truth.blood_rho(x, y);
        const double drive = sigma * std::sqrt(std::max(0.0, 1.0 - rho * rho));
        RandomStream rng(scene.seed, kBlood, static_cast<std::uint64_t>(p));
        std::complex<double> state = sigma * rng.next_complex_gaussian();
        for (Index t = 0; t < scene.nt; ++t) {
            if (t > 0) state = rho * state + drive * rng.next_complex_gaussian();
            stack.frames(p, t) +=
                static_cast<std::complex<T>>(std::sqrt(truth.envelope[t]) * state);
        }
    }

    // Motion clutter: one spatial vector times a narrowband Hann-gated tone.
    for (std::size_t b = 0; b < scene.clutter.size(); ++b) {
        const ClutterBurst& burst = scene.clutter[b];
        if (burst.amplitude <= 0.0 || burst.duration < 1) continue;
        RandomStream rng(scene.seed, kClutter, static_cast<std::uint64_t>(b));
        const double phase0 = 2.0 * M_PI * rng.next_uniform();
        CVec<double> pattern(npix);
        for (Index p = 0; p < npix; ++p) {
            const Index x = p % scene.nx;
            const Index y = p / scene.nx;
            pattern[p] = burst.pattern == ClutterBurst::Pattern::Uniform
                             ? std::complex<double>(1.0, 0.0)
                             : smooth_pattern(x, y, scene.nx, scene.ny);
        }
        for (Index t = burst.start; t < burst.start + burst.duration; ++t) {
            const double u = (static_cast<double>(t - burst.start) + 0.5) /
                             static_cast<double>(burst.duration);
            const double gate = burst.amplitude * hann01(u);
            const std::complex<double> tone =
                std::polar(gate, 2.0 * M_PI * burst.center_hz * static_cast<double>(t) /
                                     scene.fs + phase0);
            if (scene.clutter_wobble > 0.0 &&
                burst.pattern == ClutterBurst::Pattern::Smooth) {
                const double depth =
                    scene.clutter_wobble * std::sin(2.0 * M_PI * u);  // slow tilt drift
                for (Index p = 0; p < npix; ++p) {
                    const Index x = p % scene.nx;
                    const Index y = p / scene.nx;
                    const std::complex<double> tilt =
                        std::polar(1.0, depth * wobble_phase(x, y, scene.nx, scene.ny));
                    stack.frames(p, t) += static_cast<std::complex<T>>(pattern[p] * tilt * tone);
                }
            } else {
                for (Index p = 0; p < npix; ++p)
                    stack.frames(p, t) += static_cast<std::complex<T>>(pattern[p] * tone);
            }
        }
    }

    // Camera jitter: separable pattern times a chip-gated carrier.
    if (scene.jitter && scene.jitter->amplitude > 0.0) {
        const JitterSpec& spec = *scene.jitter;
        truth.jitter_pattern_abs.resize(scene.nx, scene.ny);
        CVec<double> pattern(npix);
        for (Index p = 0; p < npix; ++p) {
            const Index x = p % scene.nx;
            const Index y = p / scene.nx;
            pattern[p] = jitter_pattern(x, y, spec);
            truth.jitter_pattern_abs(x, y) = std::abs(pattern[p]);
        }
        for (Index t = 0; t < scene.nt; ++t) {
            RandomStream chip(scene.seed, kJitter,
                              static_cast<std::uint64_t>(t / spec.chip_frames));
            const double sign = chip.next_uniform() < 0.5 ? -1.0 : 1.0;
            const std::complex<double> gate =
                std::polar(spec.amplitude * sign,
                           2.0 * M_PI * spec.carrier_hz * static_cast<double>(t) / scene.fs);
            for (Index p = 0; p < npix; ++p)
                stack.frames(p, t) += static_cast<std::complex<T>>(pattern[p] * gate);
        }
    }

    // Optional white complex noise floor.
    if (scene.noise_amplitude > 0.0) {
        for (Index p = 0; p < npix; ++p) {
            RandomStream rng(scene.seed, kNoise, static_cast<std::uint64_t>(p));
            for (Index t = 0; t < scene.nt; ++t)
                stack.frames(p, t) += static_cast<std::complex<T>>(scene.noise_amplitude *
                                                                   rng.next_complex_gaussian());
        }
    }

    return {std::move(stack), std::move(truth)};
}

namespace synth_detail {

/// Antiderivative of the wrapped-Lorentzian line (1-rho^2)/(1-2 rho cos(th)+rho^2)
/// on [0, pi]: A(th) = 2 atan(c tan(th/2)) with c = (1+rho)/(1-rho).
inline double lorentzian_cdf(double theta, double rho) {
    if (theta >= M_PI) return M_PI;
    if (theta <= 0.0) return 0.0;
    const double c = (1.0 + rho) / (1.0 - rho);
    return 2.0 * std::atan(c * std::tan(theta / 2.0));
}

}  // namespace synth_detail

/// Fraction of a unit-power Lorentzian process falling in |f| in [f1, f2].
inline double lorentzian_band_fraction(double rho, const FrequencyBand& band, double fs) {
    if (rho >= 1.0) return band.f1 <= 0.0 ? 1.0 : 0.0;  // static pixel: all power at 0 Hz
    const double theta1 = 2.0 * M_PI * band.f1 / fs;
    const double theta2 = 2.0 * M_PI * band.f2 / fs;
    return (synth_detail::lorentzian_cdf(theta2, rho) -
            synth_detail::lorentzian_cdf(theta1, rho)) /
           M_PI;
}

/// Analytic expected band power of the blood component per pixel, normalized
/// so the full band 0..fs/2 returns the pixel's time-averaged total power.
inline Mat<double> ground_truth_band_power(const GroundTruth& truth, const FrequencyBand& band) {
    validate(band, truth.fs);
    const double envelope_mean = truth.envelope.size() > 0 ? truth.envelope.mean() : 1.0;
    Mat<double> expected(truth.nx, truth.ny);
    for (Index y = 0; y < truth.ny; ++y)
        for (Index x = 0; x < truth.nx; ++x)
            expected(x, y) = truth.blood_sigma2(x, y) * envelope_mean *
                             lorentzian_band_fraction(truth.blood_rho(x, y), band, truth.fs);
    return expected;
}

}  // namespace ldh
