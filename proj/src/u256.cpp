#include "p2c/detail/u256.hpp"

#include "modular.hpp"

namespace p2c::detail {

__extension__ using u128 = unsigned __int128;

U256 U256::from_be(const std::uint8_t* in) {
    U256 r;
    for (int limb = 0; limb < 4; ++limb) {
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b) v = (v << 8) | in[(3 - limb) * 8 + b];
        r.w[limb] = v;
    }
    return r;
}

void U256::to_be(std::uint8_t* out) const {
    for (int limb = 0; limb < 4; ++limb) {
        for (int b = 0; b < 8; ++b) out[(3 - limb) * 8 + b] = static_cast<std::uint8_t>(w[limb] >> (56 - 8 * b));
    }
}

int compare(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
        if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
    }
    return 0;
}

std::uint64_t add_carry(U256& r, const U256& a, const U256& b) {
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = u128(a.w[i]) + b.w[i] + carry;
        r.w[i] = static_cast<std::uint64_t>(s);
        carry = s >> 64;
    }
    return static_cast<std::uint64_t>(carry);
}

std::uint64_t sub_borrow(U256& r, const U256& a, const U256& b) {
    std::uint64_t borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 d = u128(a.w[i]) - b.w[i] - borrow;
        r.w[i] = static_cast<std::uint64_t>(d);
        borrow = static_cast<std::uint64_t>(d >> 64) & 1u;
    }
    return borrow;
}

Modulus::Modulus(const U256& m) : m_(m) {
    // 2^256 mod m = 2^256 - m because m > 2^255.
    sub_borrow(r_, U256{}, m_);
    r2_ = r_;
    for (int i = 0; i < 256; ++i) r2_ = add(r2_, r2_);

    std::uint64_t inv = m_.w[0];
    for (int i = 0; i < 5; ++i) inv *= 2 - m_.w[0] * inv;
    m0inv_ = ~inv + 1;

    sub_borrow(m_minus_2_, m_, U256::from_u64(2));
}

U256 Modulus::reduce(const U256& x) const {
    if (compare(x, m_) < 0) return x;
    U256 r;
    sub_borrow(r, x, m_);
    return r;
}

U256 Modulus::add(const U256& a, const U256& b) const {
    U256 s;
    std::uint64_t carry = add_carry(s, a, b);
    if (carry || compare(s, m_) >= 0) sub_borrow(s, s, m_);
    return s;
}

U256 Modulus::sub(const U256& a, const U256& b) const {
    U256 d;
    if (sub_borrow(d, a, b)) add_carry(d, d, m_);
    return d;
}

U256 Modulus::neg(const U256& a) const {
    if (a.is_zero()) return a;
    U256 r;
    sub_borrow(r, m_, a);
    return r;
}

U256 Modulus::mont_mul(const U256& a, const U256& b) const {
    std::uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        u128 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 s = u128(a.w[j]) * b.w[i] + t[j] + carry;
            t[j] = static_cast<std::uint64_t>(s);
            carry = s >> 64;
        }
        u128 s = u128(t[4]) + carry;
        t[4] = static_cast<std::uint64_t>(s);
        t[5] = static_cast<std::uint64_t>(s >> 64);

        std::uint64_t q = t[0] * m0inv_;
        s = u128(q) * m_.w[0] + t[0];
        carry = s >> 64;
        for (int j = 1; j < 4; ++j) {
            s = u128(q) * m_.w[j] + t[j] + carry;
            t[j - 1] = static_cast<std::uint64_t>(s);
            carry = s >> 64;
        }
        s = u128(t[4]) + carry;
        t[3] = static_cast<std::uint64_t>(s);
        t[4] = t[5] + static_cast<std::uint64_t>(s >> 64);
        t[5] = 0;
    }
    U256 r{{t[0], t[1], t[2], t[3]}};
    if (t[4] != 0 || compare(r, m_) >= 0) sub_borrow(r, r, m_);
    return r;
}

U256 Modulus::mont_pow(const U256& base, const U256& exponent) const {
    U256 result = r_;
    for (int i = 255; i >= 0; --i) {
        result = mont_sqr(result);
        if (exponent.bit(static_cast<unsigned>(i))) result = mont_mul(result, base);
    }
    return result;
}

U256 Modulus::inverse(const U256& a) const {
    return from_mont(mont_pow(to_mont(a), m_minus_2_));
}

const Modulus& field_modulus() {
    static const Modulus p(U256{{0xFFFFFFFEFFFFFC2Full, 0xFFFFFFFFFFFFFFFFull, 0xFFFFFFFFFFFFFFFFull, 0xFFFFFFFFFFFFFFFFull}});
    return p;
}

const Modulus& order_modulus() {
    static const Modulus n(U256{{0xBFD25E8CD0364141ull, 0xBAAEDCE6AF48A03Bull, 0xFFFFFFFFFFFFFFFEull, 0xFFFFFFFFFFFFFFFFull}});
    return n;
}

} // namespace p2c::detail
