#pragma once

#include <iosfwd>
#include <string>

#include "ldh/synth.hpp"

namespace ldh {

// Scene description file: flat `key = value...` lines, `#` comments.
// Scalar keys: nx, ny, nt, fs, seed, background_amplitude, pulse_hz,
// pulse_depth, clutter_wobble, noise_amplitude.
// Repeatable keys:
//   vessel  = disk <cx> <cy> <r> <bandwidth_hz> <sigma>
//   vessel  = rect <x0> <y0> <x1> <y1> <bandwidth_hz> <sigma>
//   vessel  = annulus <cx> <cy> <r_in> <r_out> <bandwidth_hz> <sigma>
//   clutter = <start> <duration> <center_hz> <amplitude> <uniform|smooth>
// Optional jitter block:
//   jitter  = <x> <y> <carrier_hz> <amplitude> [chip_frames]

SynthScene parse_scene(std::istream& in);
SynthScene load_scene(const std::string& path);
void save_scene(const SynthScene& scene, const std::string& path);

/// Ground-truth sidecar written next to a synthesized stack: scene scalars,
/// the burst schedule, the envelope, and the sigma^2 / rho / jitter maps as
/// grid CSV blocks. Documented in the README.
void write_ground_truth(const GroundTruth& truth, const std::string& path);

}  // namespace ldh
