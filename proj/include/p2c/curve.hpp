#pragma once

// secp256k1 group arithmetic. The group is written multiplicatively, matching
// the pay-to-contract literature: `a * b` is the group operation and `a.pow(k)`
// is exponentiation, so a public key is g^s = point_from_scalar(s).

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "p2c/bytes.hpp"
#include "p2c/detail/u256.hpp"

namespace p2c {

/// Integer modulo the group order n. Always reduced.
class Scalar {
public:
    Scalar() = default;

    static Scalar from_u64(std::uint64_t v);
    /// Big-endian 32 bytes, reduced modulo n.
    static Scalar reduce_bytes(ByteView be32);
    /// Big-endian 32 bytes that must already be < n; throws Error("scalar_out_of_range").
    static Scalar from_bytes(ByteView be32);
    static Scalar from_hex(std::string_view hex);

    std::array<std::uint8_t, 32> to_bytes() const;
    std::string hex() const;
    bool is_zero() const { return v_.is_zero(); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    /// Throws Error("zero_inverse") for zero.
    Scalar inverse() const;

    const detail::U256& limbs() const { return v_; }

    friend bool operator==(const Scalar&, const Scalar&) = default;

private:
    explicit Scalar(const detail::U256& v) : v_(v) {}
    detail::U256 v_;
};

/// Affine secp256k1 point or the identity. Non-identity values always lie on the curve.
class Point {
public:
    /// The identity.
    Point() = default;

    static const Point& generator();
    /// Throws Error("invalid_point") if (x, y) is not on the curve.
    static Point from_affine(ByteView x_be32, ByteView y_be32);
    /// SEC1 compressed form; throws Error("invalid_point").
    static Point decode(ByteView compressed);
    static Point from_hex(std::string_view hex);

    bool is_identity() const { return identity_; }
    std::array<std::uint8_t, 32> x_bytes() const;
    std::array<std::uint8_t, 32> y_bytes() const;

    /// 33-byte SEC1 compressed encoding; throws Error("identity_not_encodable").
    std::array<std::uint8_t, 33> encode() const;
    std::string hex() const;

    Point operator*(const Point& o) const;
    Point pow(const Scalar& k) const;
    Point inverse() const;

    friend bool operator==(const Point& a, const Point& b) {
        return a.identity_ == b.identity_ && (a.identity_ || (a.x_ == b.x_ && a.y_ == b.y_));
    }
    /// Arbitrary total order so points can key ordered containers.
    friend bool operator<(const Point& a, const Point& b);

    // Raw affine coordinates as plain residues mod p.
    const detail::U256& raw_x() const { return x_; }
    const detail::U256& raw_y() const { return y_; }
    static Point from_raw(const detail::U256& x, const detail::U256& y);

private:
    bool identity_ = true;
    detail::U256 x_;
    detail::U256 y_;
};

/// g^k.
Point point_from_scalar(const Scalar& k);

/// SHA-256(data) as a big-endian integer, reduced modulo n.
Scalar hash_to_scalar(ByteView data);

inline Scalar hash_to_scalar(std::string_view text) {
    return hash_to_scalar(ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

struct KeyPair {
    Scalar secret;
    Point pub;

    /// Throws Error("zero_private_key") for zero.
    static KeyPair from_secret(const Scalar& secret);
};

} // namespace p2c
