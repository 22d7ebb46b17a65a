#include "p2c/ecdsa.hpp"

#include "modular.hpp"
#include "p2c/error.hpp"
#include "p2c/hash.hpp"

namespace p2c {

namespace {

bool is_high(const Scalar& s) {
    // n / 2, rounded down.
    static const detail::U256 half{{0xDFE92F46681B20A0ull, 0x5D576E7357A4501Dull, 0xFFFFFFFFFFFFFFFFull, 0x7FFFFFFFFFFFFFFFull}};
    return detail::compare(s.limbs(), half) > 0;
}

Digest256 hmac_chain(const Digest256& key, const Digest256& v, int sep, ByteView x, ByteView h) {
    Bytes msg(v.bytes.begin(), v.bytes.end());
    if (sep >= 0) msg.push_back(static_cast<std::uint8_t>(sep));
    append(msg, x);
    append(msg, h);
    return hmac_sha256(key.view(), msg);
}

} // namespace

std::array<std::uint8_t, 64> Signature::to_bytes() const {
    std::array<std::uint8_t, 64> out{};
    auto rb = r.to_bytes();
    auto sb = s.to_bytes();
    std::copy(rb.begin(), rb.end(), out.begin());
    std::copy(sb.begin(), sb.end(), out.begin() + 32);
    return out;
}

std::string Signature::hex() const { return to_hex(to_bytes()); }

Signature Signature::from_bytes(ByteView raw64) {
    if (raw64.size() != 64) throw Error("invalid_signature", "signature must be 64 bytes");
    Signature sig;
    try {
        sig.r = Scalar::from_bytes(raw64.subspan(0, 32));
        sig.s = Scalar::from_bytes(raw64.subspan(32, 32));
    } catch (const Error&) {
        throw Error("invalid_signature", "signature component out of range");
    }
    if (sig.r.is_zero() || sig.s.is_zero()) throw Error("invalid_signature", "zero signature component");
    return sig;
}

Signature Signature::from_hex(std::string_view hex) { return from_bytes(p2c::from_hex(hex)); }

Signature ecdsa_sign(const Scalar& secret, ByteView message) {
    if (secret.is_zero()) throw Error("zero_private_key", "private key must be nonzero");
    const Digest256 digest = sha256(message);
    const Scalar z = Scalar::reduce_bytes(digest.view());
    const auto x = secret.to_bytes();
    const auto h = z.to_bytes();

    Digest256 v;
    v.bytes.fill(0x01);
    Digest256 k;
    k.bytes.fill(0x00);
    k = hmac_chain(k, v, 0x00, x, h);
    v = hmac_sha256(k.view(), v.view());
    k = hmac_chain(k, v, 0x01, x, h);
    v = hmac_sha256(k.view(), v.view());

    for (;;) {
        v = hmac_sha256(k.view(), v.view());
        detail::U256 candidate = detail::U256::from_be(v.bytes.data());
        if (!candidate.is_zero() && detail::compare(candidate, detail::order_modulus().value()) < 0) {
            Scalar nonce = Scalar::from_bytes(v.view());
            Point big_r = point_from_scalar(nonce);
            Scalar r = Scalar::reduce_bytes(big_r.x_bytes());
            if (!r.is_zero()) {
                Scalar s = nonce.inverse() * (z + r * secret);
                if (!s.is_zero()) {
                    if (is_high(s)) s = -s;
                    return Signature{r, s};
                }
            }
        }
        k = hmac_chain(k, v, 0x00, {}, {});
        v = hmac_sha256(k.view(), v.view());
    }
}

bool ecdsa_verify(const Point& pub, ByteView message, const Signature& sig) {
    if (pub.is_identity() || sig.r.is_zero() || sig.s.is_zero()) return false;
    const Scalar z = Scalar::reduce_bytes(sha256(message).view());
    const Scalar w = sig.s.inverse();
    const Point big_r = point_from_scalar(z * w) * pub.pow(sig.r * w);
    if (big_r.is_identity()) return false;
    return Scalar::reduce_bytes(big_r.x_bytes()) == sig.r;
}

} // namespace p2c
