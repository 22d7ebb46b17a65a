#pragma once

#include <array>

#include "p2c/bytes.hpp"
#include "p2c/random.hpp"

namespace p2c {

using SymmetricKey = std::array<std::uint8_t, 32>;

/// ChaCha20-Poly1305. Output layout: nonce(12) || ciphertext || tag(16).
Bytes aead_seal(const SymmetricKey& key, ByteView plaintext, RandomSource& rng);

/// Throws Error("authentication_failure") if the tag does not verify or the box is truncated.
Bytes aead_open(const SymmetricKey& key, ByteView sealed);

} // namespace p2c
