#include "p2c/scenario.hpp"

#include <json.hpp>

#include "p2c/error.hpp"

namespace p2c {

using nlohmann::json;

namespace {

class Recorder {
public:
    void event(std::string_view actor, std::string_view action, json inputs, json result) {
        json e = {{"action", action}, {"actor", actor}, {"inputs", std::move(inputs)}, {"result", std::move(result)}, {"step", ++step_}};
        out_.lines.push_back(e.dump());
    }
    Transcript take() { return std::move(out_); }

private:
    Transcript out_;
    int step_ = 0;
};

constexpr std::uint64_t customer_funds = 100000;

// Common storefront: a signed template with static terms and a price list.
Contract storefront_template(const KeyPair& reputation, RandomSource& rng) {
    return make_template(reputation,
                         {{"merchant/name", "Acme Widgets"},
                          {"pricelist/widget", "2500"},
                          {"pricelist/gadget", "7000"},
                          {"terms/service", "Ships within 5 days. Returns within 30 days."},
                          {"terms/warranty", "1 year"}},
                         rng);
}

FieldList widget_order(std::string_view delivery) {
    return {{"item", "widget"}, {"quantity", "2"}, {"price", "5000"}, {"delivery_address", std::string(delivery)},
            {"payment_deadline", "ledger position 1000"}};
}

json status_json(const OrderStatus& s) {
    json j = {{"contract_hash", s.contract_hash.hex()}, {"received", s.received}, {"state", to_string(s.state)}};
    if (s.paying_txid) j["paying_txid"] = s.paying_txid->hex();
    return j;
}

json failures_json(const VerificationReport& r) { return json{{"failures", r.failures}, {"ok", r.ok}, {"warnings", r.warnings}}; }

ApprovalCallback auto_approve() {
    return [](const Contract&, const std::string&) { return true; };
}

// Unrelated traffic so signals have something to hide among.
void decoys(Ledger& ledger, RandomSource& rng, int count, Recorder& rec) {
    std::vector<std::string> ids;
    for (int i = 0; i < count; ++i) {
        KeyPair from = rng.keypair();
        KeyPair to = rng.keypair();
        Digest256 coin = ledger.faucet(p2pkh_address(from.pub), 1000 + static_cast<std::uint64_t>(i));
        Transaction tx = build_transaction(ledger, {SpendKey::single(Outpoint{coin, 0}, from.secret)},
                                          {TxOutput::to_address(p2pkh_address(to.pub), 900),
                                           TxOutput::to_address(p2pkh_address(from.pub), 100 + static_cast<std::uint64_t>(i))});
        ids.push_back(ledger.broadcast(tx).hex());
    }
    rec.event("public", "decoy_traffic", {{"count", count}}, {{"txids", ids}});
}

Transcript basic(RandomSource& rng, const ApprovalCallback& approve) {
    Recorder rec;
    Ledger ledger;

    MerchantIdentity merchant{rng.keypair(), std::nullopt, {}, std::nullopt};
    rec.event("merchant", "create_reputation_key", json::object(), {{"pubkey", merchant.reputation.pub.hex()}});

    Contract form = storefront_template(merchant.reputation, rng);
    rec.event("merchant", "sign_static_fields_offline", {{"fields", 5}},
              {{"signed_paths", json(std::vector<std::string>{"merchant", "pricelist", "terms"})}, {"template_hash", contract_hash(form).hex()}});

    CustomerTrustStore trust;
    trust.add("acme", merchant.reputation.pub);
    CustomerWallet wallet;
    wallet.add(rng.keypair());
    Digest256 funding = ledger.faucet(wallet.change_address(), customer_funds);
    rec.event("customer", "setup_device", {{"alias", "acme"}, {"merchant_pubkey", merchant.reputation.pub.hex()}},
              {{"funding_txid", funding.hex()}, {"balance", wallet.balance(ledger)}});

    Contract x = build_contract(form, widget_order("1 Main St, Springfield"), rng);
    rec.event("webshop", "form_contract", {{"order", "2 x widget"}},
              {{"contract_hash", contract_hash(x).hex()}, {"contract", json::parse(encode_contract(x))}});

    rec.event("customer", "verify_contract", {{"contract_hash", contract_hash(x).hex()}}, failures_json(verify_contract(x)));

    std::vector<Contract> receipts;
    Digest256 txid = customer_approve_and_pay(x, trust, wallet, ledger, approve, receipts);
    rec.event("customer", "approve_and_pay", {{"payment_address", payment_address(x).to_string()}, {"price", contract_price(x)}},
              {{"receipts_stored", receipts.size()}, {"txid", txid.hex()}});

    OrderStatus status = merchant_detect_payment(merchant, x, ledger);
    rec.event("merchant", "detect_payment", {{"contract_hash", contract_hash(x).hex()}}, status_json(status));

    KeyPair cold = rng.keypair();
    Digest256 sweep = merchant_sweep(merchant, x, ledger, p2pkh_address(cold.pub));
    rec.event("merchant", "spend_with_derived_key", {{"to", p2pkh_address(cold.pub).to_string()}},
              {{"accepted", true}, {"txid", sweep.hex()}, {"cold_balance", ledger.unspent_for(p2pkh_address(cold.pub)).front().second.amount}});

    Contract shown = redact(x, FieldPath::parse("order/delivery_address"));
    ReceiptCheck receipt = verify_receipt(shown, ledger);
    rec.event("auditor", "verify_redacted_receipt", {{"redacted", "order/delivery_address"}},
              {{"contract_hash", contract_hash(shown).hex()}, {"paid", receipt.paid}, {"received", receipt.received}});
    return rec.take();
}

Transcript offline(RandomSource& rng, const ApprovalCallback& approve) {
    Recorder rec;
    Ledger ledger;
    FileStore public_board;

    MerchantIdentity merchant{rng.keypair(), std::nullopt, {}, std::nullopt};
    Contract form = storefront_template(merchant.reputation, rng);
    const std::string form_bytes = encode_contract(form);
    const Digest256 form_name = sha256(form_bytes);
    public_board.put(form_name, to_bytes(form_bytes));
    rec.event("merchant", "post_contract_form", {{"pubkey", merchant.reputation.pub.hex()}}, {{"form_name", form_name.hex()}});

    CustomerTrustStore trust;
    trust.add("acme", merchant.reputation.pub);
    CustomerWallet wallet;
    wallet.add(rng.keypair());
    Digest256 funding = ledger.faucet(wallet.change_address(), customer_funds);
    rec.event("customer", "setup_device", {{"alias", "acme"}}, {{"funding_txid", funding.hex()}});

    Bytes fetched = *public_board.get(form_name);
    Contract retrieved_form = decode_contract(std::string_view(reinterpret_cast<const char*>(fetched.data()), fetched.size()));
    rec.event("customer", "retrieve_contract_form", {{"form_name", form_name.hex()}}, failures_json(verify_contract(retrieved_form)));

    Contract x = build_contract(retrieved_form, widget_order("22 Elm Rd, Shelbyville"), rng);
    rec.event("customer", "fill_order", {{"order", "2 x widget"}}, {{"contract_hash", contract_hash(x).hex()}});

    std::vector<Contract> receipts;
    Digest256 txid = customer_approve_and_pay(x, trust, wallet, ledger, approve, receipts);
    rec.event("customer", "approve_and_pay", {{"payment_address", payment_address(x).to_string()}}, {{"txid", txid.hex()}});

    // One-way channel: the webshop only ever receives.
    std::vector<std::string> inbox{encode_contract(x)};
    rec.event("customer", "redeem_via_one_way_channel", {{"bytes", inbox.back().size()}}, {{"delivered", true}});

    Contract redeemed = decode_contract(inbox.back());
    Address monitor = payment_address(redeemed);
    rec.event("webshop", "derive_address_to_monitor", {{"contract_hash", contract_hash(redeemed).hex()}}, {{"address", monitor.to_string()}});

    OrderStatus status = merchant_detect_payment(merchant, redeemed, ledger);
    if (status.state == OrderState::paid) status.state = OrderState::accepted;
    rec.event("webshop", "accept_order", {{"address", monitor.to_string()}}, status_json(status));
    return rec.take();
}

Transcript anonymous(RandomSource& rng, const ApprovalCallback& approve) {
    Recorder rec;
    Ledger ledger;
    FileStore fs;

    MerchantIdentity merchant{rng.keypair(), std::nullopt, {}, std::nullopt};
    Contract form = storefront_template(merchant.reputation, rng);
    rec.event("merchant", "publish_contract_form", {{"pubkey", merchant.reputation.pub.hex()}}, {{"template_hash", contract_hash(form).hex()}});

    CustomerTrustStore trust;
    trust.add("acme", merchant.reputation.pub);
    CustomerWallet wallet;
    KeyPair signal_key = rng.keypair();
    wallet.add(signal_key);
    Digest256 funding = ledger.faucet(wallet.change_address(), customer_funds);
    rec.event("customer", "setup_device", {{"alias", "acme"}}, {{"funding_txid", funding.hex()}});

    decoys(ledger, rng, 12, rec);

    Contract x = build_contract(form, widget_order("PO Box 7, Capital City"), rng);
    rec.event("customer", "fill_order", {{"order", "2 x widget"}}, {{"contract_hash", contract_hash(x).hex()}});

    SignalKeyRegistry registry;
    std::vector<Contract> receipts;
    const std::uint64_t signal_share = contract_price(x) / 10;
    CombinedPayment paid = combined_pay_and_signal(x, signal_key, trust, wallet, ledger, approve, registry, signal_share, receipts);
    rec.event("customer", "pay_and_signal", {{"signal_amount", signal_share}, {"signal_pubkey", signal_key.pub.hex()}},
              {{"payment_address", paid.payment_address.to_string()},
               {"signal_address", paid.signal_address.to_string()},
               {"signal_value", paid.value.hex()},
               {"txid", paid.txid.hex()}});

    Digest256 filename = redeem_post(x, paid.value, fs, rng);
    rec.event("customer", "post_encrypted_contract", {{"signal_value", paid.value.hex()}}, {{"filename", filename.hex()}});

    decoys(ledger, rng, 12, rec);

    SignalScanState scan;
    auto records = merchant_scan_signals(merchant, ledger, scan);
    json found = json::array();
    for (const auto& r : records) found.push_back({{"txid", r.txid.hex()}, {"value", r.value.hex()}});
    rec.event("webshop", "scan_signals", {{"ledger_size", ledger.size()}}, {{"signals", found}, {"watermark", scan.watermark}});
    if (records.size() != 1) throw Error("scenario_failed", "expected exactly one signal");

    Retrieval got = merchant_retrieve(merchant, records.front(), fs, ledger);
    const std::string posted = encode_contract(x);
    const bool identical = got.contract_bytes == to_bytes(posted);
    rec.event("webshop", "retrieve_and_match", {{"filename", redemption_filename(records.front().value).hex()}},
              {{"bytes_identical", identical}, {"status", status_json(got.status)}});

    KeyPair cold = rng.keypair();
    Digest256 sweep = merchant_sweep(merchant, *got.contract, ledger, p2pkh_address(cold.pub));
    Scalar signal_secret = derive_private(merchant.reputation.secret, records.front().value.view());
    Digest256 collect = ledger.broadcast(build_transaction(
        ledger, {SpendKey::single(Outpoint{records.front().txid, records.front().output_index}, signal_secret)},
        {TxOutput::to_address(p2pkh_address(cold.pub), records.front().amount)}));
    rec.event("merchant", "collect_funds", {{"to", p2pkh_address(cold.pub).to_string()}},
              {{"payment_sweep_txid", sweep.hex()}, {"signal_output_spent", signal_output_spent(ledger, records.front())},
               {"signal_sweep_txid", collect.hex()}});

    DlegProof proof = prove_dh(signal_key.secret, merchant.reputation.pub, rng);
    rec.event("customer", "dispute_prove_signal", {{"signal_pubkey", signal_key.pub.hex()}}, json::parse(proof.to_json()));

    const bool valid = verify_dh(proof, signal_key.pub, merchant.reputation.pub);
    const SignalValue revealed{proof.shared.x_bytes()};
    auto located = ledger.scan_address(signal_address(revealed, merchant.reputation.pub, signal_key.pub, SignalVariant::merchant_controlled));
    rec.event("arbiter", "dispute_verify_signal", {{"merchant_pubkey", merchant.reputation.pub.hex()}},
              {{"located_txid", located.empty() ? "" : located.front().txid.hex()}, {"valid", valid}});
    return rec.take();
}

Transcript tamper(RandomSource& rng, const ApprovalCallback& approve) {
    Recorder rec;
    Ledger ledger;

    MerchantIdentity merchant{rng.keypair(), std::nullopt, {}, std::nullopt};
    Contract form = storefront_template(merchant.reputation, rng);
    CustomerTrustStore trust;
    trust.add("acme", merchant.reputation.pub);
    CustomerWallet wallet;
    wallet.add(rng.keypair());
    ledger.faucet(wallet.change_address(), customer_funds);
    rec.event("setup", "merchant_and_customer", {{"merchant_pubkey", merchant.reputation.pub.hex()}}, {{"balance", wallet.balance(ledger)}});

    Contract x = build_contract(form, widget_order("1 Main St, Springfield"), rng);
    rec.event("webshop", "form_contract", {{"order", "2 x widget"}}, {{"contract_hash", contract_hash(x).hex()}});

    // The attacker rewrites the webshop's copy; the customer still sees the true x.
    Contract tampered = x;
    {
        auto& order = std::get<Branch>(std::get<Branch>(tampered.root.body).find("order")->body);
        std::get<Leaf>(order.find("delivery_address")->body).value = to_bytes("13 Mallory Lane, Elsewhere");
    }
    rec.event("attacker", "tamper_webshop_copy", {{"field", "order/delivery_address"}},
              {{"tampered_hash", contract_hash(tampered).hex()}, {"tampered_payment_address", payment_address(tampered).to_string()}});

    std::vector<Contract> receipts;
    Digest256 txid = customer_approve_and_pay(x, trust, wallet, ledger, approve, receipts);
    rec.event("customer", "approve_and_pay", {{"payment_address", payment_address(x).to_string()}}, {{"txid", txid.hex()}});

    OrderStatus watched = merchant_detect_payment(merchant, tampered, ledger);
    rec.event("merchant", "watch_tampered_contract", {{"contract_hash", contract_hash(tampered).hex()}}, status_json(watched));

    rec.event("customer", "submit_receipt", {{"channel", "out-of-band"}}, {{"contract_hash", contract_hash(receipts.back()).hex()}});
    OrderStatus truth = merchant_detect_payment(merchant, receipts.back(), ledger);
    rec.event("merchant", "check_true_contract", {{"contract_hash", contract_hash(receipts.back()).hex()}}, status_json(truth));

    KeyPair cold = rng.keypair();
    Digest256 sweep = merchant_sweep(merchant, receipts.back(), ledger, p2pkh_address(cold.pub));
    const std::uint64_t recovered = ledger.unspent_for(p2pkh_address(cold.pub)).front().second.amount;
    rec.event("merchant", "recover_funds", {{"to", p2pkh_address(cold.pub).to_string()}},
              {{"recovered", recovered}, {"price", contract_price(x)}, {"txid", sweep.hex()}});
    return rec.take();
}

} // namespace

std::string Transcript::str() const {
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

Transcript run_scenario(std::string_view name, RandomSource& rng, const ApprovalCallback& approve) {
    ApprovalCallback yes = auto_approve();
    if (name == "basic") return basic(rng, approve ? approve : yes);
    if (name == "offline") return offline(rng, yes);
    if (name == "anonymous") return anonymous(rng, yes);
    if (name == "tamper") return tamper(rng, yes);
    throw Error("unknown_scenario", "unknown scenario '" + std::string(name) + "'");
}

} // namespace p2c
