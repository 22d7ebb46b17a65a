#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "p2c/bytes.hpp"

namespace p2c {

/// Fixed-width digest. The tag keeps 256- and 160-bit digests from mixing.
template <std::size_t N, class Tag>
struct Digest {
    static constexpr std::size_t size = N;
    std::array<std::uint8_t, N> bytes{};

    ByteView view() const { return bytes; }
    std::string hex() const { return to_hex(bytes); }
    static Digest from_hex(std::string_view text) { return Digest{fixed_from_hex<N>(text)}; }

    auto operator<=>(const Digest&) const = default;
};

struct Digest256Tag {};
struct Digest160Tag {};

using Digest256 = Digest<32, Digest256Tag>;
using Digest160 = Digest<20, Digest160Tag>;

Digest256 sha256(ByteView data);

inline Digest256 sha256(std::string_view text) {
    return sha256(ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Digest160 ripemd160(ByteView data);

/// RIPEMD-160(SHA-256(data)), the 20-byte address hash.
Digest160 hash160(ByteView data);

Digest256 hmac_sha256(ByteView key, ByteView data);

} // namespace p2c
