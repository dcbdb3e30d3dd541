#pragma once

namespace minami {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace minami
