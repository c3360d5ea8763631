// Minimal SHA-256, used for canonical-form digests in output files.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace p1f {

std::string sha256_hex(const uint8_t* data, size_t len);
std::string sha256_hex(const std::vector<uint8_t>& data);
std::string sha256_hex(const std::string& data);

} // namespace p1f
