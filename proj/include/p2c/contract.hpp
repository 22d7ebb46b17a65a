#pragma once

// Contracts are salted Merkle trees of named fields. Any subtree can be
// replaced by its digest (redaction) without changing the root hash, and the
// root hash is what the payment address is derived from.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "p2c/ecdsa.hpp"
#include "p2c/random.hpp"
#include "p2c/script.hpp"

namespace p2c {

using Salt = std::array<std::uint8_t, 16>;

struct ContractNode;
struct NamedNode;

struct Leaf {
    Salt salt{};
    Bytes value;
    /// When set, value is ephemeral pubkey (33) || AEAD box.
    bool encrypted = false;
};

/// Children are kept sorted by name and names are unique.
struct Branch {
    Salt salt{};
    std::vector<NamedNode> children;

    const ContractNode* find(std::string_view name) const;
    ContractNode* find(std::string_view name);
    /// Inserts in sorted position; throws Error("path_collision") if the name exists.
    ContractNode& insert(std::string name, ContractNode node);
};

struct Redacted {
    Digest256 digest;
};

struct ContractNode {
    std::variant<Leaf, Branch, Redacted> body;
};

struct NamedNode {
    std::string name;
    ContractNode node;
};

/// Slash-separated field names from the root, e.g. "order/delivery_address".
class FieldPath {
public:
    /// Throws Error("invalid_path") on empty paths or empty segments.
    static FieldPath parse(std::string_view text);
    explicit FieldPath(std::vector<std::string> segments);

    const std::vector<std::string>& segments() const { return segments_; }
    std::string str() const;

    friend bool operator==(const FieldPath&, const FieldPath&) = default;

private:
    std::vector<std::string> segments_;
};

inline constexpr std::string_view merchant_pubkey_path = "merchant/pubkey";
inline constexpr std::string_view tracking_key_path = "merchant/tracking_key";
inline constexpr std::string_view order_branch = "order";
inline constexpr std::string_view price_path = "order/price";

struct Contract {
    ContractNode root{Branch{}};
    Point merchant_pubkey;
    /// Keyed by path text.
    std::map<std::string, Signature> static_signatures;
    std::map<std::string, Signature> dynamic_signatures;
    std::optional<Point> dynamic_signing_key;
};

// --- encoding ---------------------------------------------------------------

/// Deterministic JSON: sorted keys, no whitespace, hex for binary fields.
std::string canonical_encode(const ContractNode& node);
/// Throws Error("bad_contract") on malformed input.
ContractNode decode_node(std::string_view json);

/// Contract file format: {dynamic_signatures, dynamic_signing_key?, merchant_pubkey, root, static_signatures}.
std::string encode_contract(const Contract& c);
Contract decode_contract(std::string_view json);

// --- hashing ----------------------------------------------------------------

/// Leaf: SHA-256(0x00 || salt || value). Branch: SHA-256(0x01 || salt || per child
/// in name order: u32be(len(name)) || name || child digest). Redacted: stored digest.
Digest256 node_digest(const ContractNode& node);

Digest256 contract_hash(const Contract& c);

/// d_addr(P, H(x)): the merchant pubkey derived with the 32 raw bytes of the contract hash.
Address payment_address(const Contract& c);

/// Private key for payment_address, held by the merchant only.
Scalar payment_secret(const Contract& c, const Scalar& merchant_secret);

// --- access and editing -----------------------------------------------------

/// Throws Error("no_such_field") if any segment is missing or hidden by redaction.
const ContractNode& resolve(const Contract& c, const FieldPath& path);

/// Value of an unencrypted leaf. Throws Error("no_such_field") / Error("not_a_leaf") / Error("field_encrypted").
Bytes read_field(const Contract& c, const FieldPath& path);

/// Amount to pay, from the "order/price" leaf in integer satoshis. Throws Error("missing_price").
std::uint64_t contract_price(const Contract& c);

/// Copy with the subtree at `path` replaced by its digest. The hash is unchanged.
/// Throws Error("no_such_field") / Error("already_redacted").
Contract redact(const Contract& c, const FieldPath& path);

/// Hybrid-encrypts a leaf to `recipient`. The digest commits to the ciphertext, so
/// the contract hash changes: encrypt before signing and before paying.
/// Throws Error("not_a_leaf") / Error("already_encrypted").
Contract encrypt_leaf(const Contract& c, const FieldPath& path, const Point& recipient, RandomSource& rng);

/// Throws Error("authentication_failure") for the wrong key or a damaged box.
Bytes decrypt_leaf(const Contract& c, const FieldPath& path, const Scalar& recipient_secret);

// --- signing ----------------------------------------------------------------

/// Signed message for a field: u32be(len(path)) || path || node digest.
Bytes field_signature_message(const FieldPath& path, const Digest256& digest);

/// Signs each path with `key`. The merchant reputation key yields static
/// signatures and the tracking key yields dynamic ones; any other key throws
/// Error("key_mismatch").
Contract sign_static(const Contract& c, const Scalar& key, const std::vector<FieldPath>& paths);

struct SignatureCheck {
    enum class Status { valid, invalid, hidden };
    std::string path;
    bool dynamic = false;
    Status status = Status::valid;
};

struct VerificationReport {
    bool ok = true;
    std::vector<SignatureCheck> signatures;
    std::vector<std::string> redacted_paths;
    std::vector<std::string> encrypted_paths;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;
};

/// Never throws; problems are report entries. `ok` is true iff every checkable
/// signature verifies and the embedded identity keys agree with the header.
VerificationReport verify_contract(const Contract& c);

// --- assembly ---------------------------------------------------------------

using FieldList = std::vector<std::pair<std::string, std::string>>;

/// Signed template (contract form): the static fields plus "merchant/pubkey"
/// (and "merchant/tracking_key" when given), every top-level entry signed
/// with the reputation key. Paths under "order/" are refused.
Contract make_template(const KeyPair& reputation, const FieldList& static_fields, RandomSource& rng,
                       const std::optional<Point>& tracking_key = std::nullopt);

/// Fills order fields (paths relative to "order/") into a template; every new
/// node gets a fresh salt from `rng`. Throws Error("path_collision").
Contract build_contract(const Contract& form, const FieldList& order_fields, RandomSource& rng);

/// Human-readable dump of every visible field, for approval prompts.
std::string render_contract(const Contract& c);

} // namespace p2c
