#include "p2c/protocol.hpp"

#include <json.hpp>

#include "p2c/error.hpp"

namespace p2c {

using nlohmann::json;

namespace {

void check_contract_for_payment(const Contract& contract, const CustomerTrustStore& trust, const ApprovalCallback& approve) {
    auto alias = trust.alias_for(contract.merchant_pubkey);
    if (!alias) throw Error("untrusted_merchant", "untrusted merchant");
    VerificationReport report = verify_contract(contract);
    if (!report.ok || contract.static_signatures.empty()) {
        std::string why = report.failures.empty() ? "no static signatures" : report.failures.front();
        throw Error("invalid_contract", "invalid contract: " + why);
    }
    if (!approve || !approve(contract, *alias)) throw Error("declined", "declined");
}

void require_own_contract(const MerchantIdentity& identity, const Contract& contract) {
    if (contract.merchant_pubkey != identity.reputation.pub) throw Error("foreign_contract", "foreign contract");
}

} // namespace

// --- trust store / wallet ---------------------------------------------------

void CustomerTrustStore::add(const std::string& alias, const Point& key) {
    if (key.is_identity()) throw Error("invalid_point", "invalid point");
    if (!known_.emplace(alias, key).second) throw Error("alias_exists", "alias exists: " + alias);
}

std::optional<std::string> CustomerTrustStore::alias_for(const Point& key) const {
    for (const auto& [alias, k] : known_) {
        if (k == key) return alias;
    }
    return std::nullopt;
}

std::optional<Point> CustomerTrustStore::find(const std::string& alias) const {
    auto it = known_.find(alias);
    if (it == known_.end()) return std::nullopt;
    return it->second;
}

std::string CustomerTrustStore::to_json() const {
    json j = json::object();
    for (const auto& [alias, k] : known_) j[alias] = k.hex();
    return j.dump();
}

CustomerTrustStore CustomerTrustStore::from_json(std::string_view text) {
    CustomerTrustStore store;
    try {
        json j = json::parse(text);
        for (const auto& [alias, k] : j.items()) store.add(alias, Point::from_hex(k.get<std::string>()));
    } catch (const json::exception& e) {
        throw Error("bad_trust_store", std::string("malformed trust store: ") + e.what());
    }
    return store;
}

std::uint64_t CustomerWallet::balance(const Ledger& ledger) const {
    std::uint64_t total = 0;
    for (const auto& k : keys_) {
        for (const auto& [op, out] : ledger.unspent_for(p2pkh_address(k.pub))) total += out.amount;
    }
    return total;
}

CustomerWallet::Selection CustomerWallet::select(const Ledger& ledger, std::uint64_t amount) const {
    Selection sel;
    for (const auto& k : keys_) {
        for (const auto& [op, out] : ledger.unspent_for(p2pkh_address(k.pub))) {
            if (sel.total >= amount && !sel.spends.empty()) return sel;
            sel.spends.push_back(SpendKey::single(op, k.secret));
            sel.input_keys.push_back(k.pub);
            sel.total += out.amount;
        }
    }
    if (sel.total < amount || sel.spends.empty()) throw Error("insufficient_funds", "insufficient funds");
    return sel;
}

Address CustomerWallet::change_address() const {
    if (keys_.empty()) throw Error("empty_wallet", "wallet has no keys");
    return p2pkh_address(keys_.front().pub);
}

const char* to_string(OrderState s) {
    switch (s) {
    case OrderState::awaiting_payment: return "awaiting_payment";
    case OrderState::paid: return "paid";
    case OrderState::accepted: return "accepted";
    case OrderState::unmatched: return "unmatched";
    }
    return "unknown";
}

// --- basic protocol ---------------------------------------------------------

Digest256 customer_approve_and_pay(const Contract& contract, const CustomerTrustStore& trust, const CustomerWallet& wallet,
                                   Ledger& ledger, const ApprovalCallback& approve, std::vector<Contract>& receipts) {
    check_contract_for_payment(contract, trust, approve);
    const std::uint64_t price = contract_price(contract);
    const Address pay_to = payment_address(contract);

    auto sel = wallet.select(ledger, price);
    std::vector<TxOutput> outputs{TxOutput::to_address(pay_to, price)};
    if (sel.total > price) outputs.push_back(TxOutput::to_address(wallet.change_address(), sel.total - price));
    Digest256 txid = ledger.broadcast(build_transaction(ledger, sel.spends, outputs));
    receipts.push_back(contract);
    return txid;
}

OrderStatus merchant_detect_payment(const MerchantIdentity& identity, const Contract& contract, const Ledger& ledger,
                                    const SignalRecord* signal) {
    require_own_contract(identity, contract);
    OrderStatus status;
    status.contract_hash = contract_hash(contract);
    const Address addr = payment_address(contract);

    // Only the holder of K can produce the key for this address.
    const Scalar key = payment_secret(contract, identity.reputation.secret);
    if (p2pkh_address(point_from_scalar(key)) != addr) throw Error("internal", "derived key does not match payment address");

    std::optional<std::uint64_t> price;
    try {
        price = contract_price(contract);
    } catch (const Error&) {
        // unpriced contracts are never paid
    }
    bool signal_counted = false;
    for (const auto& hit : ledger.scan_address(addr)) {
        status.received += hit.amount;
        if (!status.paying_txid) status.paying_txid = hit.txid;
        if (signal && !signal_counted && signal->variant == SignalVariant::merchant_controlled && signal->txid == hit.txid) {
            status.received += signal->amount;
            signal_counted = true;
        }
    }
    status.state = status.paying_txid && price && status.received >= *price ? OrderState::paid : OrderState::awaiting_payment;
    return status;
}

Digest256 merchant_sweep(const MerchantIdentity& identity, const Contract& contract, Ledger& ledger, const Address& to) {
    require_own_contract(identity, contract);
    const Scalar key = payment_secret(contract, identity.reputation.secret);
    std::vector<SpendKey> spends;
    std::uint64_t total = 0;
    for (const auto& [op, out] : ledger.unspent_for(payment_address(contract))) {
        spends.push_back(SpendKey::single(op, key));
        total += out.amount;
    }
    if (spends.empty()) throw Error("nothing_to_spend", "nothing to spend at payment address");
    return ledger.broadcast(build_transaction(ledger, spends, {TxOutput::to_address(to, total)}));
}

Digest256 merchant_spend_script_output(const MerchantIdentity& identity, const Outpoint& outpoint, Label label, Ledger& ledger,
                                       const Address& to) {
    if (!identity.base_script) throw Error("no_base_script", "merchant has no base script");
    const Script derived = derive_script(*identity.base_script, label);
    std::vector<Scalar> keys;
    for (const auto& k : identity.base_script_keys) keys.push_back(derive_private(k, label));
    auto prev = ledger.unspent(outpoint);
    if (!prev) throw Error("missing_utxo", "missing utxo");
    return ledger.broadcast(
        build_transaction(ledger, {SpendKey::multisig(outpoint, derived, std::move(keys))}, {TxOutput::to_address(to, prev->amount)}));
}

ReceiptCheck verify_receipt(const Contract& contract, const Ledger& ledger) {
    ReceiptCheck check;
    check.payment_address = payment_address(contract);
    check.price = contract_price(contract);
    for (const auto& hit : ledger.scan_address(check.payment_address)) {
        check.received += hit.amount;
        check.txids.push_back(hit.txid);
    }
    check.paid = !check.txids.empty() && check.received >= check.price;
    return check;
}

// --- signaling --------------------------------------------------------------

SignalValue signal_value(const Scalar& signal_secret, const Point& merchant_pub) {
    return SignalValue{merchant_pub.pow(signal_secret).x_bytes()};
}

SignalValue signal_value_for_merchant(const Scalar& merchant_secret, const Point& signal_pub) {
    return SignalValue{signal_pub.pow(merchant_secret).x_bytes()};
}

Address signal_address(const SignalValue& value, const Point& merchant_pub, const Point& signal_pub, SignalVariant variant) {
    return derive_address(variant == SignalVariant::merchant_controlled ? merchant_pub : signal_pub, value.view());
}

std::vector<Point> TxDraft::pubkeys() const {
    std::vector<Point> out;
    for (const auto& s : spends) {
        if (!s.redeem_script && s.keys.size() == 1) out.push_back(point_from_scalar(s.keys.front()));
        if (s.redeem_script) {
            for (const auto& el : s.redeem_script->ops) {
                if (const auto* p = std::get_if<Point>(&el)) out.push_back(*p);
            }
        }
    }
    for (const auto& o : outputs) {
        if (o.pubkey) out.push_back(*o.pubkey);
    }
    return out;
}

SignalValue attach_signal(TxDraft& draft, const KeyPair& signal_key, const Point& merchant_pub, std::uint64_t amount,
                          SignalVariant variant, SignalKeyRegistry& registry) {
    const auto keys = draft.pubkeys();
    if (std::find(keys.begin(), keys.end(), signal_key.pub) == keys.end()) {
        throw Error("signal_key_not_in_transaction", "signal key does not appear in the transaction");
    }
    if (registry.used(signal_key.pub, merchant_pub)) throw Error("signal_key_reuse", "signal key reuse");
    SignalValue value = signal_value(signal_key.secret, merchant_pub);
    draft.outputs.push_back(TxOutput::to_address(signal_address(value, merchant_pub, signal_key.pub, variant), amount));
    registry.mark(signal_key.pub, merchant_pub);
    return value;
}

std::vector<SignalRecord> merchant_scan_signals(const MerchantIdentity& identity, const Ledger& ledger, SignalScanState& state,
                                                bool scan_customer_variant) {
    std::vector<SignalRecord> records;
    const Point& merchant_pub = identity.reputation.pub;
    const std::size_t end = ledger.size();
    std::optional<Transaction> current;
    std::size_t current_pos = 0;
    for (const auto& sighting : ledger.list_pubkeys(state.watermark)) {
        if (sighting.position >= end) break;
        if (sighting.pubkey == merchant_pub) continue;
        const Point shared = sighting.pubkey.pow(identity.reputation.secret);
        const SignalValue value{shared.x_bytes()};
        if (state.seen.contains(value)) continue;
        if (!current || current_pos != sighting.position) {
            current = ledger.at(sighting.position);
            current_pos = sighting.position;
        }

        auto match = [&](SignalVariant variant) -> bool {
            const Address addr = signal_address(value, merchant_pub, sighting.pubkey, variant);
            for (std::uint32_t i = 0; i < current->outputs.size(); ++i) {
                if (current->outputs[i].payto == addr) {
                    records.push_back(SignalRecord{sighting.pubkey, shared, value, sighting.txid, i, current->outputs[i].amount, variant});
                    return true;
                }
            }
            return false;
        };
        if (match(SignalVariant::merchant_controlled) || (scan_customer_variant && match(SignalVariant::customer_controlled))) {
            state.seen.insert(value);
        }
    }
    state.watermark = end;
    return records;
}

bool signal_output_spent(const Ledger& ledger, const SignalRecord& record) {
    return ledger.is_spent(Outpoint{record.txid, record.output_index});
}

// --- Chaum-Pedersen ---------------------------------------------------------

Scalar dleq_challenge(const Point& merchant_pub, const Point& shared, const Point& commit_g, const Point& commit_p) {
    Bytes pre;
    append(pre, merchant_pub.encode());
    append(pre, shared.encode());
    append(pre, commit_g.encode());
    append(pre, commit_p.encode());
    return hash_to_scalar(pre);
}

DlegProof prove_dh(const Scalar& signal_secret, const Point& merchant_pub, RandomSource& rng) {
    if (signal_secret.is_zero()) throw Error("zero_private_key", "signal key must be nonzero");
    if (merchant_pub.is_identity()) throw Error("invalid_point", "invalid point");
    const Scalar u = rng.nonzero_scalar();
    DlegProof proof;
    proof.shared = merchant_pub.pow(signal_secret);
    proof.commit_g = point_from_scalar(u);
    proof.commit_p = merchant_pub.pow(u);
    const Scalar v = dleq_challenge(merchant_pub, proof.shared, proof.commit_g, proof.commit_p);
    proof.response = u + v * signal_secret;
    return proof;
}

bool verify_dh(const DlegProof& proof, const Point& signal_pub, const Point& merchant_pub) {
    if (proof.shared.is_identity() || proof.commit_g.is_identity() || proof.commit_p.is_identity() || signal_pub.is_identity() ||
        merchant_pub.is_identity()) {
        return false;
    }
    const Scalar v = dleq_challenge(merchant_pub, proof.shared, proof.commit_g, proof.commit_p);
    return point_from_scalar(proof.response) == proof.commit_g * signal_pub.pow(v) &&
           merchant_pub.pow(proof.response) == proof.commit_p * proof.shared.pow(v);
}

std::string DlegProof::to_json() const {
    return json{{"commit_g", commit_g.hex()}, {"commit_p", commit_p.hex()}, {"response", response.hex()}, {"shared", shared.hex()}}
        .dump();
}

DlegProof DlegProof::from_json(std::string_view text) {
    try {
        json j = json::parse(text);
        DlegProof p;
        p.shared = Point::from_hex(j.at("shared").get<std::string>());
        p.commit_g = Point::from_hex(j.at("commit_g").get<std::string>());
        p.commit_p = Point::from_hex(j.at("commit_p").get<std::string>());
        p.response = Scalar::from_hex(j.at("response").get<std::string>());
        return p;
    } catch (const json::exception& e) {
        throw Error("bad_proof", std::string("malformed proof: ") + e.what());
    } catch (const Error& e) {
        throw Error("bad_proof", std::string("malformed proof: ") + e.what());
    }
}

// --- redemption -------------------------------------------------------------

SymmetricKey redemption_key(const SignalValue& value) { return sha256(value.view()).bytes; }

Digest256 redemption_filename(const SignalValue& value) {
    const SymmetricKey key = redemption_key(value);
    return sha256(key);
}

Digest256 redeem_post(const Contract& contract, const SignalValue& value, FileStore& fs, RandomSource& rng) {
    const std::string plain = encode_contract(contract);
    Bytes box = aead_seal(redemption_key(value), to_bytes(plain), rng);
    const Digest256 name = redemption_filename(value);
    fs.put(name, std::move(box));
    return name;
}

Retrieval merchant_retrieve(const MerchantIdentity& identity, const SignalRecord& record, const FileStore& fs, const Ledger& ledger) {
    Retrieval out;
    auto box = fs.get(redemption_filename(record.value));
    if (!box) {
        out.status.state = OrderState::unmatched;
        return out;
    }
    try {
        out.contract_bytes = aead_open(redemption_key(record.value), *box);
    } catch (const Error&) {
        throw Error("bad_ciphertext", "bad ciphertext");
    }
    Contract c = decode_contract(std::string_view(reinterpret_cast<const char*>(out.contract_bytes.data()), out.contract_bytes.size()));
    require_own_contract(identity, c);
    out.status = merchant_detect_payment(identity, c, ledger, &record);
    if (out.status.state == OrderState::paid) out.status.state = OrderState::accepted;
    out.contract = std::move(c);
    return out;
}

CombinedPayment combined_pay_and_signal(const Contract& contract, const KeyPair& signal_key, const CustomerTrustStore& trust,
                                        const CustomerWallet& wallet, Ledger& ledger, const ApprovalCallback& approve,
                                        SignalKeyRegistry& registry, std::uint64_t signal_amount, std::vector<Contract>& receipts) {
    check_contract_for_payment(contract, trust, approve);
    const std::uint64_t price = contract_price(contract);
    if (signal_amount > price) throw Error("bad_split", "signal amount exceeds the price");
    if (registry.used(signal_key.pub, contract.merchant_pubkey)) throw Error("signal_key_reuse", "signal key reuse");

    CombinedPayment result;
    result.payment_address = payment_address(contract);
    auto sel = wallet.select(ledger, price);

    TxDraft draft;
    draft.spends = sel.spends;
    draft.outputs.push_back(TxOutput::to_address(result.payment_address, price - signal_amount));
    const std::uint64_t change = sel.total - price;
    const bool key_in_inputs = std::find(sel.input_keys.begin(), sel.input_keys.end(), signal_key.pub) != sel.input_keys.end();
    if (!key_in_inputs) {
        // The signal key must be visible on chain; route the change to it.
        draft.outputs.push_back(TxOutput::to_pubkey(signal_key.pub, change));
    } else if (change > 0) {
        draft.outputs.push_back(TxOutput::to_address(wallet.change_address(), change));
    }
    result.value = attach_signal(draft, signal_key, contract.merchant_pubkey, signal_amount, SignalVariant::merchant_controlled, registry);
    result.signal_address = draft.outputs.back().payto;
    result.txid = ledger.broadcast(build_transaction(ledger, draft.spends, draft.outputs));
    receipts.push_back(contract);
    return result;
}

} // namespace p2c
