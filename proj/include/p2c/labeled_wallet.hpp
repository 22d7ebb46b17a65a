#pragma once

#include <optional>

#include "p2c/ecdsa.hpp"
#include "p2c/script.hpp"

namespace p2c {

/// Additive: s[x] = s + H(x), a[x] = a * g^H(x).
/// Multiplicative: s[x] = s * H(x), a[x] = a^H(x).
enum class DerivationScheme { additive, multiplicative };

/// Labels are raw bytes. Textual labels are their UTF-8 bytes; contract labels
/// are the 32 raw bytes of the contract hash.
using Label = ByteView;

inline Label text_label(std::string_view text) {
    return Label(reinterpret_cast<const std::uint8_t*>(text.data()), text.size());
}

/// Base of a type-2 labeled wallet. Without the private base it is watch-only:
/// every address can still be derived, no private key can.
class WalletBase {
public:
    explicit WalletBase(const Point& pubbase);
    explicit WalletBase(const KeyPair& base);

    const Point& pubbase() const { return pubbase_; }
    bool watch_only() const { return !private_base_.has_value(); }
    /// Throws Error("watch_only") when the private base is absent.
    const Scalar& private_base() const;

private:
    std::optional<Scalar> private_base_;
    Point pubbase_;
};

/// Throws Error("zero_private_key") for a zero base and
/// Error("degenerate_derived_key") if the result is zero.
Scalar derive_private(const Scalar& base, Label label, DerivationScheme scheme = DerivationScheme::additive);

/// Needs no private key. Throws Error("identity_pubbase") for the identity and
/// Error("degenerate_derived_key") if the result is the identity.
Point derive_public(const Point& pubbase, Label label, DerivationScheme scheme = DerivationScheme::additive);

/// Hash160 of the additively derived pubkey: the address d_addr(P, x).
Address derive_address(const Point& pubbase, Label label);

/// Replaces every pubkey literal by its additively derived counterpart; every
/// other element is kept as is. Throws Error("hashed_pubkeys_not_derivable")
/// when the script only carries pubkey hashes and Error("nothing_to_derive")
/// when it carries no keys at all.
Script derive_script(const Script& base, Label label);

/// Detached signature of the reputation key over a base script's serialization.
Signature sign_base_script(const Scalar& reputation_secret, const Script& base);
bool verify_base_script(const Point& reputation_pub, const Script& base, const Signature& sig);

} // namespace p2c
