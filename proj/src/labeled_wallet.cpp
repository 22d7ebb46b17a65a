#include "p2c/labeled_wallet.hpp"

#include "p2c/error.hpp"

namespace p2c {

namespace {

[[noreturn]] void degenerate() { throw Error("degenerate_derived_key", "degenerate derived key"); }

constexpr std::string_view base_script_domain = "p2c/base-script";

Bytes base_script_message(const Script& base) {
    Bytes msg = to_bytes(base_script_domain);
    append(msg, base.serialize());
    return msg;
}

} // namespace

WalletBase::WalletBase(const Point& pubbase) : pubbase_(pubbase) {
    if (pubbase.is_identity()) throw Error("identity_pubbase", "pubbase must not be the identity");
}

WalletBase::WalletBase(const KeyPair& base) : private_base_(base.secret), pubbase_(base.pub) {
    if (base.secret.is_zero() || point_from_scalar(base.secret) != base.pub) {
        throw Error("inconsistent_keypair", "pubbase does not match private base");
    }
}

const Scalar& WalletBase::private_base() const {
    if (!private_base_) throw Error("watch_only", "wallet base has no private key");
    return *private_base_;
}

Scalar derive_private(const Scalar& base, Label label, DerivationScheme scheme) {
    if (base.is_zero()) throw Error("zero_private_key", "private base must be nonzero");
    const Scalar h = hash_to_scalar(label);
    Scalar derived = scheme == DerivationScheme::additive ? base + h : base * h;
    if (derived.is_zero()) degenerate();
    return derived;
}

Point derive_public(const Point& pubbase, Label label, DerivationScheme scheme) {
    if (pubbase.is_identity()) throw Error("identity_pubbase", "pubbase must not be the identity");
    const Scalar h = hash_to_scalar(label);
    Point derived = scheme == DerivationScheme::additive ? pubbase * point_from_scalar(h) : pubbase.pow(h);
    if (derived.is_identity()) degenerate();
    return derived;
}

Address derive_address(const Point& pubbase, Label label) {
    return p2pkh_address(derive_public(pubbase, label, DerivationScheme::additive));
}

Script derive_script(const Script& base, Label label) {
    bool saw_point = false;
    bool saw_hash = false;
    Script out;
    out.ops.reserve(base.ops.size());
    for (const auto& el : base.ops) {
        if (const auto* p = std::get_if<Point>(&el)) {
            saw_point = true;
            out.ops.emplace_back(derive_public(*p, label));
        } else {
            saw_hash = saw_hash || std::holds_alternative<Digest160>(el);
            out.ops.push_back(el);
        }
    }
    if (!saw_point) {
        if (saw_hash) throw Error("hashed_pubkeys_not_derivable", "hashed pubkeys not derivable");
        throw Error("nothing_to_derive", "nothing to derive");
    }
    return out;
}

Signature sign_base_script(const Scalar& reputation_secret, const Script& base) {
    return ecdsa_sign(reputation_secret, base_script_message(base));
}

bool verify_base_script(const Point& reputation_pub, const Script& base, const Signature& sig) {
    return ecdsa_verify(reputation_pub, base_script_message(base), sig);
}

} // namespace p2c
