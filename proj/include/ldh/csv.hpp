#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ldh/types.hpp"

namespace ldh {

// CSV conventions: one header row, times in seconds with 6 decimals, powers
// in scientific notation with 6 significant digits. Grid files carry their
// shape in a leading `# nx=<n> ny=<n>` comment and one row per y line.

void write_series_csv(const std::string& path, const Eigen::VectorXd& time,
                      const Eigen::VectorXd& power);

void write_grid_csv(const std::string& path, const Eigen::MatrixXd& grid);
Eigen::MatrixXd read_grid_csv(const std::string& path);

/// Spectrogram export: header `freq_hz,<t0>,<t1>,...`, one row per bin.
void write_spectrogram_csv(const std::string& path, const Eigen::VectorXd& freq_axis,
                           const Eigen::VectorXd& time, const Eigen::MatrixXd& map);

/// Singular-value profile: index, lambda, dB relative to lambda_1, and the
/// cumulative energy fraction sum(lambda_i^2) / total.
void write_singular_profile_csv(const std::string& path, const Eigen::VectorXd& lambdas);

}  // namespace ldh
