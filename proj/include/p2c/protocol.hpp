#pragma once

// Customer and merchant sides of pay-to-contract, plus the offline/anonymous
// extensions: blockchain signaling via Diffie-Hellman, the Chaum-Pedersen
// proof that attributes a signal, and redemption through the filestore.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "p2c/chain.hpp"
#include "p2c/cipher.hpp"
#include "p2c/contract.hpp"
#include "p2c/labeled_wallet.hpp"

namespace p2c {

struct MerchantIdentity {
    KeyPair reputation;
    /// Optional script base (e.g. 2-of-2 multisig) and the keys behind it.
    std::optional<Script> base_script;
    std::vector<Scalar> base_script_keys;
    std::optional<KeyPair> tracking_key;
};

/// Merchant keys the customer's signing device knows, each under an alias.
class CustomerTrustStore {
public:
    /// Throws Error("alias_exists").
    void add(const std::string& alias, const Point& key);
    std::optional<std::string> alias_for(const Point& key) const;
    std::optional<Point> find(const std::string& alias) const;
    const std::map<std::string, Point>& entries() const { return known_; }

    std::string to_json() const;
    static CustomerTrustStore from_json(std::string_view text);

private:
    std::map<std::string, Point> known_;
};

/// P2PKH keys the customer spends from. Change goes back to the first key.
class CustomerWallet {
public:
    void add(const KeyPair& key) { keys_.push_back(key); }
    const std::vector<KeyPair>& keys() const { return keys_; }
    std::uint64_t balance(const Ledger& ledger) const;

    struct Selection {
        std::vector<SpendKey> spends;
        std::vector<Point> input_keys;
        std::uint64_t total = 0;
    };
    /// Greedy in key order. Throws Error("insufficient_funds").
    Selection select(const Ledger& ledger, std::uint64_t amount) const;
    Address change_address() const;

private:
    std::vector<KeyPair> keys_;
};

enum class OrderState { awaiting_payment, paid, accepted, unmatched };

const char* to_string(OrderState s);

struct OrderStatus {
    Digest256 contract_hash;
    OrderState state = OrderState::awaiting_payment;
    std::optional<Digest256> paying_txid;
    std::uint64_t received = 0;
};

/// Asked before paying. Receives the contract and the trust-store alias of its merchant key.
using ApprovalCallback = std::function<bool(const Contract&, const std::string& alias)>;

/// Customer side of the basic protocol: checks the merchant key against the
/// trust store, verifies the contract, asks for approval, then pays
/// "order/price" to the contract's payment address and keeps the contract as
/// a receipt. Errors: "untrusted_merchant", "invalid_contract", "declined",
/// "missing_price", "insufficient_funds".
Digest256 customer_approve_and_pay(const Contract& contract, const CustomerTrustStore& trust, const CustomerWallet& wallet,
                                   Ledger& ledger, const ApprovalCallback& approve, std::vector<Contract>& receipts);

// --- signaling --------------------------------------------------------------

/// x-coordinate of P^s = a^K, big-endian. Kept as raw bytes: it is a field
/// element and can exceed the group order.
struct SignalValue {
    std::array<std::uint8_t, 32> bytes{};

    ByteView view() const { return bytes; }
    std::string hex() const { return to_hex(bytes); }
    static SignalValue from_hex(std::string_view text) { return SignalValue{fixed_from_hex<32>(text)}; }

    auto operator<=>(const SignalValue&) const = default;
};

/// Customer-side computation from the signal secret s.
SignalValue signal_value(const Scalar& signal_secret, const Point& merchant_pub);
/// Merchant-side computation from the reputation secret K and the on-chain key a.
SignalValue signal_value_for_merchant(const Scalar& merchant_secret, const Point& signal_pub);

/// merchant_controlled pays d_addr(P, c); customer_controlled pays d_addr(a, c).
enum class SignalVariant { merchant_controlled, customer_controlled };

Address signal_address(const SignalValue& value, const Point& merchant_pub, const Point& signal_pub, SignalVariant variant);

/// Client-side guard: a signal key may signal to a given merchant once.
class SignalKeyRegistry {
public:
    bool used(const Point& signal_pub, const Point& merchant_pub) const { return used_.contains({signal_pub, merchant_pub}); }
    void mark(const Point& signal_pub, const Point& merchant_pub) { used_.insert({signal_pub, merchant_pub}); }

private:
    std::set<std::pair<Point, Point>> used_;
};

/// A transaction before signing.
struct TxDraft {
    std::vector<SpendKey> spends;
    std::vector<TxOutput> outputs;

    /// Explicit pubkeys the signed transaction will expose.
    std::vector<Point> pubkeys() const;
};

/// Appends the signal output to `draft`. Errors: "signal_key_not_in_transaction",
/// "signal_key_reuse".
SignalValue attach_signal(TxDraft& draft, const KeyPair& signal_key, const Point& merchant_pub, std::uint64_t amount,
                          SignalVariant variant, SignalKeyRegistry& registry);

struct SignalRecord {
    Point signal_pubkey;
    Point shared_point;
    SignalValue value;
    Digest256 txid;
    std::uint32_t output_index = 0;
    std::uint64_t amount = 0;
    SignalVariant variant = SignalVariant::merchant_controlled;
};

/// Merchant bookkeeping for incremental scans.
struct SignalScanState {
    std::size_t watermark = 0;
    std::set<SignalValue> seen;
};

/// For every explicit pubkey a past the watermark, computes c from a^K and
/// checks the same transaction's outputs for d_addr(P, c) (and d_addr(a, c)
/// when `scan_customer_variant`). Records are deduplicated by value.
std::vector<SignalRecord> merchant_scan_signals(const MerchantIdentity& identity, const Ledger& ledger, SignalScanState& state,
                                                bool scan_customer_variant = true);

/// True once the signal output has been spent. Informational only.
bool signal_output_spent(const Ledger& ledger, const SignalRecord& record);

// --- Chaum-Pedersen ---------------------------------------------------------

/// Proof that log_P(shared) = log_g(a) without revealing it.
struct DlegProof {
    Point shared;    // P^s
    Point commit_g;  // g^u
    Point commit_p;  // P^u
    Scalar response; // u + v*s

    std::string to_json() const;
    /// Throws Error("bad_proof").
    static DlegProof from_json(std::string_view text);

    friend bool operator==(const DlegProof&, const DlegProof&) = default;
};

/// v = H(P || P^s || g^u || P^u) over compressed encodings, reduced mod n.
Scalar dleq_challenge(const Point& merchant_pub, const Point& shared, const Point& commit_g, const Point& commit_p);

DlegProof prove_dh(const Scalar& signal_secret, const Point& merchant_pub, RandomSource& rng);

/// Checks g^resp = g^u * a^v and P^resp = P^u * (P^s)^v with v recomputed. Never throws.
bool verify_dh(const DlegProof& proof, const Point& signal_pub, const Point& merchant_pub);

// --- merchant side ----------------------------------------------------------

/// Total received at the payment address; when `signal` is given and was sent
/// in a paying transaction, its output counts too (both outputs belong to the
/// merchant). A contract without a readable price is never paid.
/// Errors: "foreign_contract".
OrderStatus merchant_detect_payment(const MerchantIdentity& identity, const Contract& contract, const Ledger& ledger,
                                    const SignalRecord* signal = nullptr);

/// Spends every unspent output at the contract's payment address to `to`,
/// using the derived key K[H(x)]. Errors: "foreign_contract", "nothing_to_spend".
Digest256 merchant_sweep(const MerchantIdentity& identity, const Contract& contract, Ledger& ledger, const Address& to);

/// Spends a P2SH output locked to the identity's base script derived with `label`.
Digest256 merchant_spend_script_output(const MerchantIdentity& identity, const Outpoint& outpoint, Label label, Ledger& ledger,
                                       const Address& to);

/// Public receipt check: anyone holding the contract can confirm payment.
struct ReceiptCheck {
    Address payment_address;
    std::uint64_t price = 0;
    std::uint64_t received = 0;
    std::vector<Digest256> txids;
    bool paid = false;
};
ReceiptCheck verify_receipt(const Contract& contract, const Ledger& ledger);

// --- redemption -------------------------------------------------------------

/// c' = SHA-256(c).
SymmetricKey redemption_key(const SignalValue& value);
/// SHA-256(c').
Digest256 redemption_filename(const SignalValue& value);

/// Encrypts the canonical contract under c' and posts it as SHA-256(c').
/// Errors: "filename_exists".
Digest256 redeem_post(const Contract& contract, const SignalValue& value, FileStore& fs, RandomSource& rng);

struct Retrieval {
    std::optional<Contract> contract;
    Bytes contract_bytes;
    OrderStatus status;
};

/// Errors: "bad_ciphertext", "foreign_contract". A missing file yields status unmatched.
Retrieval merchant_retrieve(const MerchantIdentity& identity, const SignalRecord& record, const FileStore& fs, const Ledger& ledger);

struct CombinedPayment {
    Digest256 txid;
    SignalValue value;
    Address payment_address;
    Address signal_address;
};

/// Pays the contract and signals in one transaction. `signal_amount` of the
/// price goes to the signal output and the rest to the payment address.
CombinedPayment combined_pay_and_signal(const Contract& contract, const KeyPair& signal_key, const CustomerTrustStore& trust,
                                        const CustomerWallet& wallet, Ledger& ledger, const ApprovalCallback& approve,
                                        SignalKeyRegistry& registry, std::uint64_t signal_amount, std::vector<Contract>& receipts);

} // namespace p2c
