#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mathreuse::util {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

constexpr std::uint64_t fnv1a(std::string_view s, std::uint64_t h = kFnvOffset) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

// Hex SHA-256 of a byte string (OpenSSL).
std::string sha256_hex(std::string_view bytes);

}  // namespace mathreuse::util
