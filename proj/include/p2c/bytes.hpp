#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace p2c {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Lowercase hex.
std::string to_hex(ByteView data);

/// Accepts upper or lower case; throws Error("bad_hex") on odd length or non-hex digits.
Bytes from_hex(std::string_view hex);

template <std::size_t N>
std::array<std::uint8_t, N> fixed_from_hex(std::string_view hex);

inline Bytes to_bytes(std::string_view text) { return Bytes(text.begin(), text.end()); }

inline void append(Bytes& out, ByteView data) { out.insert(out.end(), data.begin(), data.end()); }

inline void append(Bytes& out, std::string_view text) { out.insert(out.end(), text.begin(), text.end()); }

void append_u32_be(Bytes& out, std::uint32_t v);

void append_u64_be(Bytes& out, std::uint64_t v);

} // namespace p2c

#include "p2c/error.hpp"

namespace p2c {

template <std::size_t N>
std::array<std::uint8_t, N> fixed_from_hex(std::string_view hex) {
    Bytes raw = from_hex(hex);
    if (raw.size() != N) {
        throw Error("bad_length", "expected " + std::to_string(N) + " bytes, got " + std::to_string(raw.size()));
    }
    std::array<std::uint8_t, N> out{};
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

} // namespace p2c
