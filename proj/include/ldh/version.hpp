#pragma once

namespace ldh {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ldh
