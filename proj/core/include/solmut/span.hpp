#pragma once

#include <cstdint>
#include <string_view>

namespace solmut {

/// Half-open byte range into a source buffer, plus the 1-based position of
/// its first byte.
struct Span {
    std::uint32_t start_byte = 0;
    std::uint32_t end_byte = 0;
    std::uint32_t start_line = 1;
    std::uint32_t start_col = 1;

    [[nodiscard]] std::uint32_t size() const { return end_byte - start_byte; }
    [[nodiscard]] bool empty() const { return end_byte <= start_byte; }

    [[nodiscard]] bool contains(const Span& other) const {
        return start_byte <= other.start_byte && other.end_byte <= end_byte;
    }
    [[nodiscard]] bool overlaps(const Span& other) const {
        return start_byte < other.end_byte && other.start_byte < end_byte;
    }

    [[nodiscard]] std::string_view slice(std::string_view source) const {
        return source.substr(start_byte, end_byte - start_byte);
    }

    friend bool operator==(const Span&, const Span&) = default;
};

/// Span running from the start of `first` to the end of `last`.
inline Span join(const Span& first, const Span& last) {
    Span s = first;
    s.end_byte = last.end_byte;
    return s;
}

} // namespace solmut
