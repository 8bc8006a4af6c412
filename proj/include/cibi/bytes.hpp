#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cibi {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

} // namespace cibi
