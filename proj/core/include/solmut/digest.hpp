#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace solmut {

/// FNV-1a, 32-bit.
constexpr std::uint32_t fnv1a32(std::string_view data, std::uint32_t h = 0x811c9dc5u) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x01000193u;
    }
    return h;
}

/// FNV-1a, 64-bit.
constexpr std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex32(std::uint32_t v) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", v);
    return buf;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace solmut
