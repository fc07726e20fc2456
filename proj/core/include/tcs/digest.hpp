#pragma once

#include <string>
#include <string_view>

namespace tcs {

/// Lower-case hex SHA-256 of the bytes of text.
std::string sha256Hex(std::string_view text);

}  // namespace tcs
