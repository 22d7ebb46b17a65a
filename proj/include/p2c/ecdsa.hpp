#pragma once

#include <array>
#include <string>
#include <string_view>

#include "p2c/curve.hpp"

namespace p2c {

/// ECDSA signature, serialized as 64 bytes r || s.
struct Signature {
    Scalar r;
    Scalar s;

    std::array<std::uint8_t, 64> to_bytes() const;
    std::string hex() const;
    /// Throws Error("invalid_signature") unless both halves are in [1, n).
    static Signature from_bytes(ByteView raw64);
    static Signature from_hex(std::string_view hex);

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Signs SHA-256(message). The nonce is derived per RFC 6979 (HMAC-SHA256), so
/// signing is reproducible. s is normalized to the lower half of the order.
Signature ecdsa_sign(const Scalar& secret, ByteView message);

/// True iff `sig` is valid for SHA-256(message) under `pub`. Never throws.
bool ecdsa_verify(const Point& pub, ByteView message, const Signature& sig);

} // namespace p2c
