#pragma once

#include <string>

namespace knotcert {

// SHA-256 of the given bytes as lowercase hex.
std::string sha256_hex(const std::string& bytes);

}  // namespace knotcert
