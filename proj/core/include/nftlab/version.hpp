#pragma once

namespace nft {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nft
