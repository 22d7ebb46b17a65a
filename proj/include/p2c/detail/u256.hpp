#pragma once

#include <array>
#include <cstdint>

namespace p2c::detail {

/// 256-bit unsigned integer, little-endian 64-bit limbs.
struct U256 {
    std::array<std::uint64_t, 4> w{};

    static constexpr U256 from_u64(std::uint64_t v) { return U256{{v, 0, 0, 0}}; }

    /// Reads 32 big-endian bytes.
    static U256 from_be(const std::uint8_t* in);
    void to_be(std::uint8_t* out) const;

    constexpr bool is_zero() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }
    constexpr bool bit(unsigned i) const { return (w[i / 64] >> (i % 64)) & 1u; }
    constexpr unsigned nibble(unsigned i) const { return static_cast<unsigned>(w[i / 16] >> (4 * (i % 16))) & 0xfu; }

    friend constexpr bool operator==(const U256&, const U256&) = default;
};

/// -1, 0, 1.
int compare(const U256& a, const U256& b);

/// r = a + b, returns carry out.
std::uint64_t add_carry(U256& r, const U256& a, const U256& b);

/// r = a - b, returns borrow out.
std::uint64_t sub_borrow(U256& r, const U256& a, const U256& b);

} // namespace p2c::detail
