#include "p2c/chain.hpp"

#include <mutex>

#include "p2c/error.hpp"

namespace p2c {

namespace {

bool checked_add(std::uint64_t& acc, std::uint64_t v) {
    if (acc > UINT64_MAX - v) return false;
    acc += v;
    return true;
}

// CHECKMULTISIG: each signature must match a key strictly after the previous match.
bool check_multisig(const MultisigTemplate& t, ByteView message, const std::vector<Signature>& sigs) {
    if (static_cast<int>(sigs.size()) != t.required) return false;
    std::size_t key = 0;
    for (const auto& sig : sigs) {
        while (key < t.keys.size() && !ecdsa_verify(t.keys[key], message, sig)) ++key;
        if (key == t.keys.size()) return false;
        ++key;
    }
    return true;
}

ByteView as_bytes(const std::string& s) { return ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()); }

} // namespace

// --- validation --------------------------------------------------------------

void Ledger::validate_locked(const Transaction& tx) const {
    if (tx.is_coinbase()) throw Error("bad_transaction", "coinbase transactions come from the faucet only");
    if (tx.inputs.empty()) throw Error("bad_transaction", "transaction has no inputs");
    for (const auto& out : tx.outputs) {
        if (out.pubkey && out.payto != p2pkh_address(*out.pubkey)) {
            throw Error("bad_transaction", "pay-to-pubkey output with inconsistent address");
        }
    }

    const std::string preimage = tx.signing_preimage();
    std::set<Outpoint> seen;
    std::uint64_t in_total = 0;
    for (const auto& in : tx.inputs) {
        if (!seen.insert(in.prev).second || spent_.contains(in.prev)) throw Error("spent_outpoint", "spent outpoint");
        auto it = utxo_.find(in.prev);
        if (it == utxo_.end()) throw Error("missing_utxo", "missing utxo");
        const TxOutput& prev = it->second;
        if (prev.payto.kind == AddressKind::p2pkh) {
            if (!in.pubkey || p2pkh_address(*in.pubkey) != prev.payto) throw Error("key_mismatch", "key does not match output");
            if (in.signatures.size() != 1 || !ecdsa_verify(*in.pubkey, as_bytes(preimage), in.signatures.front())) {
                throw Error("invalid_signature", "invalid signature");
            }
        } else {
            if (!in.redeem_script || p2sh_address(*in.redeem_script) != prev.payto) {
                throw Error("script_mismatch", "redeem script does not match output");
            }
            auto t = match_multisig(*in.redeem_script);
            if (!t) throw Error("script_mismatch", "unsupported redeem script");
            if (!check_multisig(*t, as_bytes(preimage), in.signatures)) throw Error("invalid_signature", "invalid signature");
        }
        if (!checked_add(in_total, prev.amount)) throw Error("bad_transaction", "input total overflows");
    }
    std::uint64_t out_total = 0;
    for (const auto& out : tx.outputs) {
        if (!checked_add(out_total, out.amount)) throw Error("bad_transaction", "output total overflows");
    }
    if (out_total > in_total) throw Error("insufficient_funds", "insufficient funds");
}

Digest256 Ledger::append_locked(const Transaction& tx) {
    const Digest256 id = tx.txid();
    if (positions_.contains(id)) throw Error("spent_outpoint", "spent outpoint");
    const std::size_t pos = txs_.size();
    for (const auto& in : tx.inputs) {
        utxo_.erase(in.prev);
        spent_.insert(in.prev);
        if (in.pubkey) pubkey_index_[*in.pubkey].push_back(pos);
        if (in.redeem_script) {
            for (const auto& el : in.redeem_script->ops) {
                if (const auto* p = std::get_if<Point>(&el)) pubkey_index_[*p].push_back(pos);
            }
        }
    }
    for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) {
        const TxOutput& out = tx.outputs[i];
        utxo_.emplace(Outpoint{id, i}, out);
        address_index_[out.payto].push_back(Outpoint{id, i});
        if (out.pubkey) pubkey_index_[*out.pubkey].push_back(pos);
    }
    txs_.push_back(tx);
    positions_.emplace(id, pos);
    return id;
}

Digest256 Ledger::faucet(const TxOutput& output) {
    std::unique_lock lock(mu_);
    if (issued_ > UINT64_MAX - output.amount) throw Error("bad_transaction", "issuance overflows");
    Transaction tx;
    tx.coinbase_sequence = txs_.size();
    tx.outputs.push_back(output);
    Digest256 id = append_locked(tx);
    issued_ += output.amount;
    return id;
}

Digest256 Ledger::broadcast(const Transaction& tx) {
    std::unique_lock lock(mu_);
    validate_locked(tx);
    return append_locked(tx);
}

// --- queries -----------------------------------------------------------------

std::optional<TxOutput> Ledger::unspent(const Outpoint& op) const {
    std::shared_lock lock(mu_);
    auto it = utxo_.find(op);
    if (it == utxo_.end()) return std::nullopt;
    return it->second;
}

std::optional<TxOutput> Ledger::output(const Outpoint& op) const {
    std::shared_lock lock(mu_);
    auto it = positions_.find(op.txid);
    if (it == positions_.end()) return std::nullopt;
    const auto& outs = txs_[it->second].outputs;
    if (op.index >= outs.size()) return std::nullopt;
    return outs[op.index];
}

bool Ledger::is_spent(const Outpoint& op) const {
    std::shared_lock lock(mu_);
    return spent_.contains(op);
}

std::vector<ScanHit> Ledger::scan_address(const Address& addr) const {
    std::shared_lock lock(mu_);
    std::vector<ScanHit> hits;
    auto it = address_index_.find(addr);
    if (it == address_index_.end()) return hits;
    for (const auto& op : it->second) {
        const auto& tx = txs_[positions_.at(op.txid)];
        hits.push_back(ScanHit{op.txid, op.index, tx.outputs[op.index].amount, spent_.contains(op)});
    }
    return hits;
}

std::vector<std::pair<Outpoint, TxOutput>> Ledger::unspent_for(const Address& addr) const {
    std::shared_lock lock(mu_);
    std::vector<std::pair<Outpoint, TxOutput>> out;
    auto it = address_index_.find(addr);
    if (it == address_index_.end()) return out;
    for (const auto& op : it->second) {
        auto u = utxo_.find(op);
        if (u != utxo_.end()) out.emplace_back(op, u->second);
    }
    return out;
}

std::vector<PubkeySighting> Ledger::list_pubkeys(std::size_t from) const {
    std::shared_lock lock(mu_);
    std::vector<PubkeySighting> out;
    for (std::size_t pos = from; pos < txs_.size(); ++pos) {
        const Transaction& tx = txs_[pos];
        const Digest256 id = tx.txid();
        auto add = [&](const Point& p) { out.push_back(PubkeySighting{p, id, pos}); };
        for (const auto& in : tx.inputs) {
            if (in.pubkey) add(*in.pubkey);
            if (in.redeem_script) {
                for (const auto& el : in.redeem_script->ops) {
                    if (const auto* p = std::get_if<Point>(&el)) add(*p);
                }
            }
        }
        for (const auto& o : tx.outputs) {
            if (o.pubkey) add(*o.pubkey);
        }
    }
    return out;
}

std::size_t Ledger::size() const {
    std::shared_lock lock(mu_);
    return txs_.size();
}

std::optional<Transaction> Ledger::find(const Digest256& txid) const {
    std::shared_lock lock(mu_);
    auto it = positions_.find(txid);
    if (it == positions_.end()) return std::nullopt;
    return txs_[it->second];
}

Transaction Ledger::at(std::size_t position) const {
    std::shared_lock lock(mu_);
    if (position >= txs_.size()) throw Error("out_of_range", "no transaction at position " + std::to_string(position));
    return txs_[position];
}

std::vector<Transaction> Ledger::transactions() const {
    std::shared_lock lock(mu_);
    return txs_;
}

std::uint64_t Ledger::total_issued() const {
    std::shared_lock lock(mu_);
    return issued_;
}

std::uint64_t Ledger::unspent_total() const {
    std::shared_lock lock(mu_);
    std::uint64_t total = 0;
    for (const auto& [op, out] : utxo_) total += out.amount;
    return total;
}

// --- transaction building ----------------------------------------------------

Transaction build_transaction(const Ledger& ledger, const std::vector<SpendKey>& spends, const std::vector<TxOutput>& outputs) {
    Transaction tx;
    tx.outputs = outputs;
    std::uint64_t in_total = 0;
    for (const auto& spend : spends) {
        auto prev = ledger.unspent(spend.outpoint);
        if (!prev) throw Error("missing_utxo", "missing utxo");
        TxInput in;
        in.prev = spend.outpoint;
        if (prev->payto.kind == AddressKind::p2pkh) {
            if (spend.keys.size() != 1 || spend.redeem_script) throw Error("key_mismatch", "key does not match output");
            Point pub = point_from_scalar(spend.keys.front());
            if (p2pkh_address(pub) != prev->payto) throw Error("key_mismatch", "key does not match output");
            in.pubkey = pub;
        } else {
            if (!spend.redeem_script || p2sh_address(*spend.redeem_script) != prev->payto) {
                throw Error("script_mismatch", "redeem script does not match output");
            }
            auto t = match_multisig(*spend.redeem_script);
            if (!t) throw Error("script_mismatch", "unsupported redeem script");
            in.redeem_script = spend.redeem_script;
        }
        if (!checked_add(in_total, prev->amount)) throw Error("bad_transaction", "input total overflows");
        tx.inputs.push_back(std::move(in));
    }
    std::uint64_t out_total = 0;
    for (const auto& o : outputs) {
        if (!checked_add(out_total, o.amount)) throw Error("bad_transaction", "output total overflows");
    }
    if (out_total > in_total) throw Error("insufficient_funds", "insufficient funds");

    const std::string preimage = tx.signing_preimage();
    for (std::size_t i = 0; i < spends.size(); ++i) {
        const SpendKey& spend = spends[i];
        TxInput& in = tx.inputs[i];
        if (!in.redeem_script) {
            in.signatures.push_back(ecdsa_sign(spend.keys.front(), as_bytes(preimage)));
            continue;
        }
        // Sign with the supplied keys in script key order.
        auto t = *match_multisig(*in.redeem_script);
        for (const auto& script_key : t.keys) {
            if (static_cast<int>(in.signatures.size()) == t.required) break;
            for (const auto& k : spend.keys) {
                if (point_from_scalar(k) == script_key) {
                    in.signatures.push_back(ecdsa_sign(k, as_bytes(preimage)));
                    break;
                }
            }
        }
        if (static_cast<int>(in.signatures.size()) < t.required) throw Error("key_mismatch", "not enough keys for redeem script");
    }
    return tx;
}

// --- filestore ---------------------------------------------------------------

void FileStore::put(const Digest256& name, Bytes data) {
    std::unique_lock lock(mu_);
    if (!files_.emplace(name, std::move(data)).second) throw Error("filename_exists", "filename exists");
}

std::optional<Bytes> FileStore::get(const Digest256& name) const {
    std::shared_lock lock(mu_);
    auto it = files_.find(name);
    if (it == files_.end()) return std::nullopt;
    return it->second;
}

std::size_t FileStore::size() const {
    std::shared_lock lock(mu_);
    return files_.size();
}

} // namespace p2c
