#pragma once

namespace breatherlab {

inline constexpr const char* kVersion = "breather-lab 0.1.0";

}  // namespace breatherlab
