#pragma once

#include <vector>

#include "ldh/types.hpp"

namespace ldh {

/// Sliding short-time window schedule over a stack of nt_total frames.
struct WindowPlan {
    Index n_t = 0;               // window length [frames]
    Index hop = 0;               // window advance [frames]
    std::vector<Index> starts;   // window start indices, strictly increasing
    double t_win = 0.0;          // window duration [s] = n_t / fs

    Index windows() const { return static_cast<Index>(starts.size()); }
};

/// All starts 0, hop, 2*hop, ... with start + n_t <= nt_total. Frames that do
/// not fill a final window are dropped.
inline WindowPlan plan_windows(Index nt_total, Index n_t, Index hop, double fs) {
    if (n_t < 1 || nt_total < 1) throw InvalidInput("window and stack lengths must be >= 1");
    if (n_t > nt_total)
        throw InvalidInput("window length " + std::to_string(n_t) +
                           " exceeds stack length " + std::to_string(nt_total));
    if (hop < 1 || hop > n_t) throw InvalidInput("hop must be in [1, n_t]");
    if (!(fs > 0.0)) throw InvalidInput("sampling frequency must be > 0");

    WindowPlan plan;
    plan.n_t = n_t;
    plan.hop = hop;
    plan.t_win = static_cast<double>(n_t) / fs;
    for (Index start = 0; start + n_t <= nt_total; start += hop) plan.starts.push_back(start);
    return plan;
}

/// Default schedule: windows overlapping by half (hop = n_t / 2).
inline WindowPlan plan_windows(Index nt_total, Index n_t, double fs) {
    return plan_windows(nt_total, n_t, std::max<Index>(1, n_t / 2), fs);
}

}  // namespace ldh
