#pragma once

#include <string>

#include "ldh/stack.hpp"
#include "ldh/types.hpp"

namespace ldh {

// Stack container ("LDH1"), all little-endian:
//   bytes  0-3   magic "LDH1"
//   bytes  4-7   u32 nx
//   bytes  8-11  u32 ny
//   bytes 12-15  u32 nt_total
//   bytes 16-19  f32 fs [Hz]
//   bytes 20-    nt_total frames, each nx*ny complex samples as interleaved
//                f32 (re, im), row-major (y outer, x inner)
// Total payload: nx*ny*nt_total*8 bytes. Read/write round-trips bit-exactly.

inline constexpr char kStackMagic[4] = {'L', 'D', 'H', '1'};
inline constexpr std::size_t kStackHeaderBytes = 20;

HologramStack<float> read_stack(const std::string& path);
void write_stack(const HologramStack<float>& stack, const std::string& path);

}  // namespace ldh
