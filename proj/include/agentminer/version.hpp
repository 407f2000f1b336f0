#pragma once

namespace am {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace am
