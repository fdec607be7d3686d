#pragma once

#include <string>
#include <vector>

#include "ldh/types.hpp"

namespace ldh {

/// Time series of complex-valued holograms plus sampling metadata.
///
/// Storage is already the space-time ("Casorati") layout: `frames` has one
/// column per hologram, each column holding the nx*ny pixels of that frame
/// flattened row-major over (y, x), i.e. pixel (x, y) lives at row y*nx + x.
/// This makes window extraction a column block and the space-time matrix a
/// zero-copy view. 2D images derived from a column are nx-by-ny matrices
/// indexed (x, y).
template <class T>
struct HologramStack {
    Index nx = 0;
    Index ny = 0;
    Index nt = 0;
    double fs = 0.0;  // sampling frequency [Hz]
    CMat<T> frames;   // (nx*ny) x nt

    Index pixels() const { return nx * ny; }
};

inline Index flat_pixel(Index x, Index y, Index nx) { return y * nx + x; }

template <class T>
void validate(const HologramStack<T>& stack) {
    if (stack.nx < 1 || stack.ny < 1 || stack.nt < 1)
        throw InvalidInput("hologram stack dimensions must all be >= 1");
    if (!(stack.fs > 0.0))
        throw InvalidInput("hologram stack sampling frequency must be > 0");
    if (stack.frames.rows() != stack.pixels() || stack.frames.cols() != stack.nt)
        throw InvalidInput("hologram stack payload does not match its dimensions");
    if (!stack.frames.allFinite())
        throw InvalidInput("hologram stack contains non-finite samples");
}

/// Zero-copy view of one frame as an nx-by-ny image indexed (x, y).
template <class T>
Eigen::Map<const CMat<T>> frame_view(const HologramStack<T>& stack, Index t) {
    if (t < 0 || t >= stack.nt) throw InvalidInput("frame index out of range");
    return Eigen::Map<const CMat<T>>(stack.frames.col(t).data(), stack.nx, stack.ny);
}

/// Zero-copy space-time view of `n_t` consecutive frames starting at `start`.
template <class T>
auto casorati_view(const HologramStack<T>& stack, Index start, Index n_t) {
    if (n_t < 1) throw InvalidInput("window length must be >= 1");
    if (start < 0 || start + n_t > stack.nt)
        throw InvalidInput("window [" + std::to_string(start) + ", " +
                           std::to_string(start + n_t) + ") exceeds stack length " +
                           std::to_string(stack.nt));
    return stack.frames.middleCols(start, n_t);
}

/// Copying reshape of a window slice into a standalone space-time matrix.
/// Entry (p, j) is the sample of flattened pixel p at window-relative frame j.
template <class T>
CMat<T> reshape_to_casorati(const HologramStack<T>& stack, Index start, Index n_t) {
    return casorati_view(stack, start, n_t);
}

/// Inverse reshape: columns of `m` become frames of a stack slice.
template <class T>
HologramStack<T> reshape_from_casorati(const CMat<T>& m, Index nx, Index ny, double fs) {
    if (nx < 1 || ny < 1) throw InvalidInput("pixel dimensions must be >= 1");
    if (m.rows() != nx * ny)
        throw InvalidInput("space-time matrix has " + std::to_string(m.rows()) +
                           " rows, expected nx*ny = " + std::to_string(nx * ny));
    HologramStack<T> slice;
    slice.nx = nx;
    slice.ny = ny;
    slice.nt = m.cols();
    slice.fs = fs;
    slice.frames = m;
    return slice;
}

/// Boolean pixel mask over an nx-by-ny field, indexed (x, y).
struct Roi {
    BoolGrid mask;

    Index count() const { return static_cast<Index>(mask.count()); }

    /// Flattened indices (y*nx + x) of the selected pixels, ascending.
    std::vector<Index> pixel_indices() const {
        std::vector<Index> out;
        out.reserve(static_cast<std::size_t>(count()));
        const Index nx = mask.rows();
        for (Index y = 0; y < mask.cols(); ++y)
            for (Index x = 0; x < nx; ++x)
                if (mask(x, y)) out.push_back(flat_pixel(x, y, nx));
        return out;
    }
};

inline void validate(const Roi& roi, Index nx, Index ny) {
    if (roi.mask.rows() != nx || roi.mask.cols() != ny)
        throw InvalidInput("ROI mask dimensions do not match the image");
    if (roi.count() < 1) throw InvalidInput("ROI selects no pixels");
}

inline Roi roi_full(Index nx, Index ny) {
    return Roi{BoolGrid::Constant(nx, ny, true)};
}

inline Roi roi_disk(Index nx, Index ny, double cx, double cy, double radius) {
    Roi roi{BoolGrid::Constant(nx, ny, false)};
    for (Index y = 0; y < ny; ++y)
        for (Index x = 0; x < nx; ++x) {
            const double dx = static_cast<double>(x) - cx;
            const double dy = static_cast<double>(y) - cy;
            if (dx * dx + dy * dy <= radius * radius) roi.mask(x, y) = true;
        }
    return roi;
}

/// Inclusive corner rectangle [x0, x1] x [y0, y1].
inline Roi roi_rect(Index nx, Index ny, Index x0, Index y0, Index x1, Index y1) {
    Roi roi{BoolGrid::Constant(nx, ny, false)};
    for (Index y = std::max<Index>(0, y0); y <= std::min(ny - 1, y1); ++y)
        for (Index x = std::max<Index>(0, x0); x <= std::min(nx - 1, x1); ++x)
            roi.mask(x, y) = true;
    return roi;
}

}  // namespace ldh
