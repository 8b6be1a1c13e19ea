#pragma once

#include <string>

namespace frjac {

// Hex digest of the SHA-256 of `data`; used for input fingerprints in reports.
std::string sha256_hex(const std::string& data);

}  // namespace frjac
