#pragma once

namespace vcselcov {

inline constexpr const char* kVersion = "vcselcov 0.1.0";

}  // namespace vcselcov
