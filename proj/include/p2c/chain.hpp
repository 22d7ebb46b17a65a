#pragma once

// In-process stand-ins for the two public media the protocol relies on: an
// append-only UTXO ledger and a write-once filestore keyed by digest. There
// are no blocks, mining or reorgs; a broadcast either validates and appends
// or is rejected.

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "p2c/ecdsa.hpp"
#include "p2c/script.hpp"

namespace p2c {

struct Outpoint {
    Digest256 txid;
    std::uint32_t index = 0;

    auto operator<=>(const Outpoint&) const = default;
};

/// With `pubkey` set the output pays to that explicit key (and `payto` is its
/// P2PKH hash); otherwise only the address digest is on the ledger.
struct TxOutput {
    Address payto;
    std::uint64_t amount = 0;
    std::optional<Point> pubkey;

    static TxOutput to_address(const Address& addr, std::uint64_t amount) { return TxOutput{addr, amount, std::nullopt}; }
    static TxOutput to_pubkey(const Point& pub, std::uint64_t amount) { return TxOutput{p2pkh_address(pub), amount, pub}; }

    friend bool operator==(const TxOutput&, const TxOutput&) = default;
};

/// P2PKH inputs carry `pubkey` and one signature; P2SH inputs carry the
/// redeem script and its CHECKMULTISIG signatures in key order.
struct TxInput {
    Outpoint prev;
    std::optional<Point> pubkey;
    std::optional<Script> redeem_script;
    std::vector<Signature> signatures;

    friend bool operator==(const TxInput&, const TxInput&) = default;
};

struct Transaction {
    /// Set only on faucet (coinbase) transactions; makes their txids unique.
    std::optional<std::uint64_t> coinbase_sequence;
    std::vector<TxInput> inputs;
    std::vector<TxOutput> outputs;

    bool is_coinbase() const { return coinbase_sequence.has_value(); }

    /// Canonical JSON without signatures; this is what every input signs.
    std::string signing_preimage() const;
    /// SHA-256 of the signing preimage.
    Digest256 txid() const;

    /// Canonical JSON including signatures. One ledger record.
    std::string to_json() const;
    /// Throws Error("bad_transaction").
    static Transaction from_json(std::string_view text);

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct ScanHit {
    Digest256 txid;
    std::uint32_t index = 0;
    std::uint64_t amount = 0;
    bool spent = false;
};

struct PubkeySighting {
    Point pubkey;
    Digest256 txid;
    std::size_t position = 0;
};

class Ledger {
public:
    Ledger() = default;
    Ledger(const Ledger&) = delete;
    Ledger& operator=(const Ledger&) = delete;

    /// Mints a coinbase output. Test and demo setup only.
    Digest256 faucet(const TxOutput& output);
    Digest256 faucet(const Address& addr, std::uint64_t amount) { return faucet(TxOutput::to_address(addr, amount)); }

    /// Validates and appends. Errors: "spent_outpoint", "missing_utxo",
    /// "invalid_signature", "key_mismatch", "script_mismatch", "insufficient_funds",
    /// "bad_transaction".
    Digest256 broadcast(const Transaction& tx);

    std::optional<TxOutput> unspent(const Outpoint& op) const;
    /// The output regardless of spent state.
    std::optional<TxOutput> output(const Outpoint& op) const;
    bool is_spent(const Outpoint& op) const;

    /// Every output ever paid to `addr`, in ledger order.
    std::vector<ScanHit> scan_address(const Address& addr) const;
    /// Unspent outputs paying to `addr`.
    std::vector<std::pair<Outpoint, TxOutput>> unspent_for(const Address& addr) const;

    /// Explicit pubkeys (input keys, redeem-script keys, pay-to-pubkey outputs)
    /// of transactions at position >= `from`, in ledger order.
    std::vector<PubkeySighting> list_pubkeys(std::size_t from = 0) const;

    std::size_t size() const;
    std::optional<Transaction> find(const Digest256& txid) const;
    Transaction at(std::size_t position) const;
    std::vector<Transaction> transactions() const;

    std::uint64_t total_issued() const;
    std::uint64_t unspent_total() const;

    /// Newline-delimited transaction records.
    void write(std::ostream& out) const;
    /// Re-broadcasts each record, so a tampered file fails validation.
    void replay(std::istream& in);

private:
    Digest256 append_locked(const Transaction& tx);
    void validate_locked(const Transaction& tx) const;

    mutable std::shared_mutex mu_;
    std::vector<Transaction> txs_;
    std::map<Digest256, std::size_t> positions_;
    std::map<Outpoint, TxOutput> utxo_;
    std::set<Outpoint> spent_;
    std::map<Address, std::vector<Outpoint>> address_index_;
    std::map<Point, std::vector<std::size_t>> pubkey_index_;
    std::uint64_t issued_ = 0;
};

/// Keys for one input. A single key spends a P2PKH output; a redeem script plus
/// keys spends a P2SH multisig output.
struct SpendKey {
    Outpoint outpoint;
    std::vector<Scalar> keys;
    std::optional<Script> redeem_script;

    static SpendKey single(const Outpoint& op, const Scalar& key) { return SpendKey{op, {key}, std::nullopt}; }
    static SpendKey multisig(const Outpoint& op, const Script& script, std::vector<Scalar> keys) {
        return SpendKey{op, std::move(keys), script};
    }
};

/// Builds and signs a transaction against the current ledger state.
/// Errors: "missing_utxo", "key_mismatch" (key does not match output),
/// "insufficient_funds", "script_mismatch".
Transaction build_transaction(const Ledger& ledger, const std::vector<SpendKey>& spends, const std::vector<TxOutput>& outputs);

class FileStore {
public:
    FileStore() = default;
    FileStore(const FileStore&) = delete;
    FileStore& operator=(const FileStore&) = delete;

    /// Throws Error("filename_exists").
    void put(const Digest256& name, Bytes data);
    std::optional<Bytes> get(const Digest256& name) const;
    std::size_t size() const;

    void write(std::ostream& out) const;
    void replay(std::istream& in);

private:
    mutable std::shared_mutex mu_;
    std::map<Digest256, Bytes> files_;
};

} // namespace p2c
