#pragma once

#include <array>
#include <string_view>

namespace solmut {

/// Ether and time unit suffixes, in increasing magnitude.
struct UnitTable {
    static constexpr std::array<std::string_view, 4> ether_units{"wei", "szabo", "finney", "ether"};
    static constexpr std::array<std::string_view, 5> time_units{"seconds", "minutes", "hours", "days",
                                                                "weeks"};
};

/// Globals targeted by AVR, GVC and MFR, in canonical member-access spelling.
struct GlobalTable {
    static constexpr std::array<std::string_view, 3> address_globals{"msg.sender", "tx.origin",
                                                                     "block.coinbase"};
    static constexpr std::array<std::string_view, 6> value_globals{
        "now", "block.timestamp", "block.number", "msg.value", "block.difficulty", "block.gaslimit"};
    static constexpr std::array<std::string_view, 2> math_functions{"addmod", "mulmod"};
};

template <std::size_t N>
constexpr bool table_contains(const std::array<std::string_view, N>& table, std::string_view word) {
    for (auto w : table)
        if (w == word) return true;
    return false;
}

} // namespace solmut
