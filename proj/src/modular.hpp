#pragma once

#include "p2c/detail/u256.hpp"

namespace p2c::detail {

/// Arithmetic modulo an odd m with 2^255 < m < 2^256 (both secp256k1 p and n qualify).
/// The mont_* functions take and return Montgomery representatives (x * 2^256 mod m).
class Modulus {
public:
    explicit Modulus(const U256& m);

    const U256& value() const { return m_; }

    /// Reduces any 256-bit value; one subtraction suffices since m > 2^255.
    U256 reduce(const U256& x) const;

    U256 add(const U256& a, const U256& b) const;
    U256 sub(const U256& a, const U256& b) const;
    U256 neg(const U256& a) const;

    U256 mont_mul(const U256& a, const U256& b) const;
    U256 mont_sqr(const U256& a) const { return mont_mul(a, a); }
    U256 to_mont(const U256& a) const { return mont_mul(a, r2_); }
    U256 from_mont(const U256& a) const { return mont_mul(a, U256::from_u64(1)); }
    const U256& mont_one() const { return r_; }
    U256 mont_pow(const U256& base, const U256& exponent) const;

    /// Plain residues in and out.
    U256 mul(const U256& a, const U256& b) const { return mont_mul(mont_mul(a, b), r2_); }
    U256 inverse(const U256& a) const;

private:
    U256 m_;
    U256 r_;   // 2^256 mod m
    U256 r2_;  // 2^512 mod m
    U256 m_minus_2_;
    std::uint64_t m0inv_;  // -m^-1 mod 2^64
};

const Modulus& field_modulus();
const Modulus& order_modulus();

} // namespace p2c::detail
