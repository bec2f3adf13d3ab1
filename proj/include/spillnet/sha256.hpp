#pragma once

#include <cstdint>
#include <string>

namespace spillnet {

/// SHA-256 of a byte string, returned as lowercase hex. Used for manifest
/// checksums and config hashing; no external crypto dependency.
std::string sha256_hex(const std::string& data);

std::string sha256_file(const std::string& path);

}  // namespace spillnet
