#pragma once

#include <string>

namespace reliatran {

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

// Digest of a file's raw bytes. Throws ParseError when the file
// cannot be opened.
std::string sha256_file(const std::string& path);

}  // namespace reliatran
