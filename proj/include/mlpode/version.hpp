#pragma once

namespace mlpode {
inline constexpr const char* kVersion = "0.1.0";
}
