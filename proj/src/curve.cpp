#include "p2c/curve.hpp"

#include <vector>

#include "modular.hpp"
#include "p2c/error.hpp"
#include "p2c/hash.hpp"

namespace p2c {

using detail::U256;

namespace {

const detail::Modulus& fp() { return detail::field_modulus(); }
const detail::Modulus& fn() { return detail::order_modulus(); }

// Jacobian (X/Z^2, Y/Z^3) with coordinates in Montgomery form; Z == 0 is the identity.
struct Jacobian {
    U256 x, y, z;
    bool is_identity() const { return z.is_zero(); }
};

Jacobian to_jacobian(const Point& p) {
    if (p.is_identity()) return Jacobian{};
    return Jacobian{fp().to_mont(p.raw_x()), fp().to_mont(p.raw_y()), fp().mont_one()};
}

Point to_affine(const Jacobian& j) {
    if (j.is_identity()) return Point{};
    const auto& f = fp();
    U256 zinv = f.to_mont(f.inverse(f.from_mont(j.z)));
    U256 zinv2 = f.mont_sqr(zinv);
    U256 x = f.mont_mul(j.x, zinv2);
    U256 y = f.mont_mul(j.y, f.mont_mul(zinv2, zinv));
    return Point::from_raw(f.from_mont(x), f.from_mont(y));
}

// dbl-2009-l for a = 0.
Jacobian dbl(const Jacobian& p) {
    if (p.is_identity() || p.y.is_zero()) return Jacobian{};
    const auto& f = fp();
    U256 a = f.mont_sqr(p.x);
    U256 b = f.mont_sqr(p.y);
    U256 c = f.mont_sqr(b);
    U256 xb = f.add(p.x, b);
    U256 d = f.sub(f.sub(f.mont_sqr(xb), a), c);
    d = f.add(d, d);
    U256 e = f.add(f.add(a, a), a);
    U256 ff = f.mont_sqr(e);
    Jacobian r;
    r.x = f.sub(ff, f.add(d, d));
    U256 c8 = f.add(c, c);
    c8 = f.add(c8, c8);
    c8 = f.add(c8, c8);
    r.y = f.sub(f.mont_mul(e, f.sub(d, r.x)), c8);
    U256 yz = f.mont_mul(p.y, p.z);
    r.z = f.add(yz, yz);
    return r;
}

Jacobian add(const Jacobian& p, const Jacobian& q) {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    const auto& f = fp();
    U256 z1z1 = f.mont_sqr(p.z);
    U256 z2z2 = f.mont_sqr(q.z);
    U256 u1 = f.mont_mul(p.x, z2z2);
    U256 u2 = f.mont_mul(q.x, z1z1);
    U256 s1 = f.mont_mul(p.y, f.mont_mul(q.z, z2z2));
    U256 s2 = f.mont_mul(q.y, f.mont_mul(p.z, z1z1));
    U256 h = f.sub(u2, u1);
    U256 r = f.sub(s2, s1);
    if (h.is_zero()) {
        if (r.is_zero()) return dbl(p);
        return Jacobian{};
    }
    U256 h2 = f.mont_sqr(h);
    U256 h3 = f.mont_mul(h2, h);
    U256 u1h2 = f.mont_mul(u1, h2);
    Jacobian out;
    out.x = f.sub(f.sub(f.mont_sqr(r), h3), f.add(u1h2, u1h2));
    out.y = f.sub(f.mont_mul(r, f.sub(u1h2, out.x)), f.mont_mul(s1, h3));
    out.z = f.mont_mul(f.mont_mul(p.z, q.z), h);
    return out;
}

// Fixed-base comb: table[i][j - 1] = j * 16^i * G.
struct GeneratorTable {
    std::vector<std::array<Jacobian, 15>> rows;

    GeneratorTable() : rows(64) {
        Jacobian base = to_jacobian(Point::generator());
        for (auto& row : rows) {
            Jacobian acc = base;
            row[0] = acc;
            for (int j = 1; j < 15; ++j) {
                acc = add(acc, base);
                row[j] = acc;
            }
            for (int k = 0; k < 4; ++k) base = dbl(base);
        }
    }
};

const GeneratorTable& generator_table() {
    static const GeneratorTable table;
    return table;
}

bool on_curve(const U256& x, const U256& y) {
    const auto& f = fp();
    U256 xm = f.to_mont(x);
    U256 ym = f.to_mont(y);
    U256 rhs = f.add(f.mont_mul(f.mont_sqr(xm), xm), f.to_mont(U256::from_u64(7)));
    return f.mont_sqr(ym) == rhs;
}

std::array<std::uint8_t, 32> be_bytes(const U256& v) {
    std::array<std::uint8_t, 32> out{};
    v.to_be(out.data());
    return out;
}

} // namespace

// --- Scalar -----------------------------------------------------------------

Scalar Scalar::from_u64(std::uint64_t v) { return Scalar(fn().reduce(U256::from_u64(v))); }

Scalar Scalar::reduce_bytes(ByteView be32) {
    if (be32.size() != 32) throw Error("bad_length", "scalar must be 32 bytes");
    return Scalar(fn().reduce(U256::from_be(be32.data())));
}

Scalar Scalar::from_bytes(ByteView be32) {
    if (be32.size() != 32) throw Error("bad_length", "scalar must be 32 bytes");
    U256 v = U256::from_be(be32.data());
    if (detail::compare(v, fn().value()) >= 0) throw Error("scalar_out_of_range", "scalar out of range");
    return Scalar(v);
}

Scalar Scalar::from_hex(std::string_view hex) { return from_bytes(fixed_from_hex<32>(hex)); }

std::array<std::uint8_t, 32> Scalar::to_bytes() const { return be_bytes(v_); }

std::string Scalar::hex() const { return to_hex(to_bytes()); }

Scalar Scalar::operator+(const Scalar& o) const { return Scalar(fn().add(v_, o.v_)); }
Scalar Scalar::operator-(const Scalar& o) const { return Scalar(fn().sub(v_, o.v_)); }
Scalar Scalar::operator*(const Scalar& o) const { return Scalar(fn().mul(v_, o.v_)); }
Scalar Scalar::operator-() const { return Scalar(fn().neg(v_)); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("zero_inverse", "zero has no inverse");
    return Scalar(fn().inverse(v_));
}

// --- Point ------------------------------------------------------------------

const Point& Point::generator() {
    static const Point g = Point::from_raw(
        U256{{0x59F2815B16F81798ull, 0x029BFCDB2DCE28D9ull, 0x55A06295CE870B07ull, 0x79BE667EF9DCBBACull}},
        U256{{0x9C47D08FFB10D4B8ull, 0xFD17B448A6855419ull, 0x5DA4FBFC0E1108A8ull, 0x483ADA7726A3C465ull}});
    return g;
}

Point Point::from_raw(const U256& x, const U256& y) {
    Point p;
    p.identity_ = false;
    p.x_ = x;
    p.y_ = y;
    return p;
}

Point Point::from_affine(ByteView x_be32, ByteView y_be32) {
    if (x_be32.size() != 32 || y_be32.size() != 32) throw Error("invalid_point", "invalid point");
    U256 x = U256::from_be(x_be32.data());
    U256 y = U256::from_be(y_be32.data());
    const U256& p = fp().value();
    if (detail::compare(x, p) >= 0 || detail::compare(y, p) >= 0 || !on_curve(x, y)) {
        throw Error("invalid_point", "invalid point");
    }
    return from_raw(x, y);
}

Point Point::decode(ByteView compressed) {
    if (compressed.size() != 33 || (compressed[0] != 0x02 && compressed[0] != 0x03)) {
        throw Error("invalid_point", "invalid point");
    }
    const auto& f = fp();
    U256 x = U256::from_be(compressed.data() + 1);
    if (detail::compare(x, f.value()) >= 0) throw Error("invalid_point", "invalid point");
    U256 xm = f.to_mont(x);
    U256 rhs = f.add(f.mont_mul(f.mont_sqr(xm), xm), f.to_mont(U256::from_u64(7)));
    // p = 3 mod 4, so a square root is rhs^((p + 1) / 4).
    U256 exponent;
    detail::add_carry(exponent, f.value(), U256::from_u64(1));  // p + 1 < 2^256
    for (int i = 0; i < 2; ++i) {
        for (int l = 0; l < 4; ++l) exponent.w[l] = (exponent.w[l] >> 1) | (l < 3 ? exponent.w[l + 1] << 63 : 0);
    }
    U256 ym = f.mont_pow(rhs, exponent);
    if (f.mont_sqr(ym) != rhs) throw Error("invalid_point", "invalid point");
    U256 y = f.from_mont(ym);
    bool want_odd = compressed[0] == 0x03;
    if (static_cast<bool>(y.w[0] & 1u) != want_odd) y = f.neg(y);
    return from_raw(x, y);
}

Point Point::from_hex(std::string_view hex) {
    Bytes raw;
    try {
        raw = p2c::from_hex(hex);
    } catch (const Error&) {
        throw Error("invalid_point", "invalid point");
    }
    return decode(raw);
}

std::array<std::uint8_t, 32> Point::x_bytes() const { return be_bytes(x_); }
std::array<std::uint8_t, 32> Point::y_bytes() const { return be_bytes(y_); }

std::array<std::uint8_t, 33> Point::encode() const {
    if (identity_) throw Error("identity_not_encodable", "identity not encodable");
    std::array<std::uint8_t, 33> out{};
    out[0] = (y_.w[0] & 1u) ? 0x03 : 0x02;
    x_.to_be(out.data() + 1);
    return out;
}

std::string Point::hex() const { return to_hex(encode()); }

Point Point::operator*(const Point& o) const { return to_affine(add(to_jacobian(*this), to_jacobian(o))); }

Point Point::inverse() const {
    if (identity_) return *this;
    return from_raw(x_, fp().neg(y_));
}

Point Point::pow(const Scalar& k) const {
    if (identity_ || k.is_zero()) return Point{};
    std::array<Jacobian, 16> multiples;
    multiples[0] = Jacobian{};
    multiples[1] = to_jacobian(*this);
    for (int i = 2; i < 16; ++i) multiples[i] = add(multiples[i - 1], multiples[1]);
    Jacobian acc;
    const U256& e = k.limbs();
    for (int i = 63; i >= 0; --i) {
        for (int d = 0; d < 4; ++d) acc = dbl(acc);
        unsigned nib = e.nibble(static_cast<unsigned>(i));
        if (nib != 0) acc = add(acc, multiples[nib]);
    }
    return to_affine(acc);
}

bool operator<(const Point& a, const Point& b) {
    if (a.identity_ != b.identity_) return a.identity_;
    if (a.identity_) return false;
    int c = detail::compare(a.x_, b.x_);
    if (c != 0) return c < 0;
    return detail::compare(a.y_, b.y_) < 0;
}

Point point_from_scalar(const Scalar& k) {
    const auto& table = generator_table();
    const U256& e = k.limbs();
    Jacobian acc;
    for (unsigned i = 0; i < 64; ++i) {
        unsigned nib = e.nibble(i);
        if (nib != 0) acc = add(acc, table.rows[i][nib - 1]);
    }
    return to_affine(acc);
}

Scalar hash_to_scalar(ByteView data) { return Scalar::reduce_bytes(sha256(data).view()); }

KeyPair KeyPair::from_secret(const Scalar& secret) {
    if (secret.is_zero()) throw Error("zero_private_key", "private key must be nonzero");
    return KeyPair{secret, point_from_scalar(secret)};
}

} // namespace p2c
