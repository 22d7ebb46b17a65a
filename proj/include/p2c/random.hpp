#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "p2c/curve.hpp"
#include "p2c/hash.hpp"

namespace p2c {

/// Source of random bytes. Every module that needs fresh salts, keys or
/// nonces draws from one of these so a seeded run is reproducible end to end.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;

    template <std::size_t N>
    std::array<std::uint8_t, N> bytes() {
        std::array<std::uint8_t, N> out{};
        fill(out);
        return out;
    }

    /// Uniform in [1, n) by rejection.
    Scalar nonzero_scalar();
    KeyPair keypair() { return KeyPair::from_secret(nonzero_scalar()); }
};

/// OpenSSL RAND_bytes.
class SystemRandom final : public RandomSource {
public:
    void fill(std::span<std::uint8_t> out) override;
};

/// SHA-256 in counter mode over a seed: block_i = SHA-256(seed || i). Not for
/// production keys; this backs `--seed` demos and tests.
class SeededRandom final : public RandomSource {
public:
    explicit SeededRandom(std::uint64_t seed);
    explicit SeededRandom(ByteView seed);

    void fill(std::span<std::uint8_t> out) override;

private:
    Bytes seed_;
    std::uint64_t counter_ = 0;
    Digest256 block_;
    std::size_t used_ = 32;
};

} // namespace p2c
