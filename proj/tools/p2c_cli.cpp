// p2c: command-line front end for the pay-to-contract library.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>

#include "p2c/chain.hpp"
#include "p2c/contract.hpp"
#include "p2c/error.hpp"
#include "p2c/labeled_wallet.hpp"
#include "p2c/protocol.hpp"
#include "p2c/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace p2c;

namespace {

struct CliConfig {
    std::string state_dir = "p2c-state";
    std::string format = "json";
    std::optional<std::uint64_t> seed;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("file_not_found", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("file_not_writable", "cannot write " + path);
    out << data;
}

class Session {
public:
    explicit Session(const CliConfig& cfg) : cfg_(cfg) {
        if (cfg.seed) {
            rng_ = std::make_unique<SeededRandom>(*cfg.seed);
        } else {
            rng_ = std::make_unique<SystemRandom>();
        }
    }

    RandomSource& rng() { return *rng_; }

    void emit(const json& j) const {
        if (cfg_.format == "text") {
            for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        } else {
            std::cout << j.dump() << '\n';
        }
    }

    fs::path state(const char* name) const {
        fs::create_directories(cfg_.state_dir);
        return fs::path(cfg_.state_dir) / name;
    }

    Ledger& ledger() {
        if (!ledger_) {
            ledger_ = std::make_unique<Ledger>();
            std::ifstream in(state("ledger.jsonl"));
            if (in) ledger_->replay(in);
        }
        return *ledger_;
    }

    void save_ledger() {
        std::ostringstream out;
        ledger().write(out);
        write_file(state("ledger.jsonl").string(), out.str());
    }

    FileStore& filestore() {
        if (!filestore_) {
            filestore_ = std::make_unique<FileStore>();
            std::ifstream in(state("filestore.jsonl"));
            if (in) filestore_->replay(in);
        }
        return *filestore_;
    }

    void save_filestore() {
        std::ostringstream out;
        filestore().write(out);
        write_file(state("filestore.jsonl").string(), out.str());
    }

    CustomerTrustStore trust() const {
        std::ifstream in(state("trust.json"));
        if (!in) return {};
        std::ostringstream ss;
        ss << in.rdbuf();
        return CustomerTrustStore::from_json(ss.str());
    }

    void save_trust(const CustomerTrustStore& t) const { write_file(state("trust.json").string(), t.to_json()); }

    // Signal keys already used, persisted as [[signal_pub, merchant_pub], ...].
    SignalKeyRegistry registry(json& raw) const {
        SignalKeyRegistry reg;
        std::ifstream in(state("signal_keys.json"));
        raw = json::array();
        if (in) raw = json::parse(in);
        for (const auto& pair : raw) reg.mark(Point::from_hex(pair.at(0).get<std::string>()), Point::from_hex(pair.at(1).get<std::string>()));
        return reg;
    }

    void save_registry(const json& raw) const { write_file(state("signal_keys.json").string(), raw.dump()); }

private:
    CliConfig cfg_;
    std::unique_ptr<RandomSource> rng_;
    std::unique_ptr<Ledger> ledger_;
    std::unique_ptr<FileStore> filestore_;
};

KeyPair load_key(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
        return KeyPair::from_secret(Scalar::from_hex(j.at("secret").get<std::string>()));
    } catch (const json::exception& e) {
        throw Error("bad_key_file", std::string("malformed key file: ") + e.what());
    }
}

Contract load_contract(const std::string& path) { return decode_contract(read_file(path)); }

Bytes label_bytes(const std::string& text, const std::string& hex) {
    if (!hex.empty()) return from_hex(hex);
    return to_bytes(text);
}

FieldList parse_fields(const std::vector<std::string>& raw) {
    FieldList out;
    for (const auto& f : raw) {
        auto eq = f.find('=');
        if (eq == std::string::npos) throw Error("usage", "field must be path=value: " + f);
        out.emplace_back(f.substr(0, eq), f.substr(eq + 1));
    }
    return out;
}

std::vector<FieldPath> parse_paths(const std::vector<std::string>& raw) {
    std::vector<FieldPath> out;
    for (const auto& p : raw) out.push_back(FieldPath::parse(p));
    return out;
}

json report_json(const VerificationReport& r) {
    json sigs = json::array();
    for (const auto& s : r.signatures) {
        const char* status = s.status == SignatureCheck::Status::valid ? "valid" : s.status == SignatureCheck::Status::hidden ? "hidden" : "invalid";
        sigs.push_back({{"dynamic", s.dynamic}, {"path", s.path}, {"status", status}});
    }
    return {{"encrypted", r.encrypted_paths}, {"failures", r.failures}, {"ok", r.ok},
            {"redacted", r.redacted_paths},   {"signatures", sigs},     {"warnings", r.warnings}};
}

json status_json(const OrderStatus& s) {
    json j = {{"contract_hash", s.contract_hash.hex()}, {"received", s.received}, {"state", to_string(s.state)}};
    if (s.paying_txid) j["paying_txid"] = s.paying_txid->hex();
    return j;
}

// Interactive approval: shows every visible field and the alias of the merchant key.
ApprovalCallback prompt_approval(bool assume_yes) {
    return [assume_yes](const Contract& c, const std::string& alias) {
        std::cerr << "---- contract from '" << alias << "' (" << c.merchant_pubkey.hex() << ") ----\n"
                  << render_contract(c) << "---- pay " << contract_price(c) << " sat to " << payment_address(c).to_string() << " ----\n";
        if (assume_yes) {
            std::cerr << "approved (--yes)\n";
            return true;
        }
        std::cerr << "approve? [y/N] " << std::flush;
        std::string answer;
        if (!std::getline(std::cin, answer)) return false;
        return answer == "y" || answer == "Y" || answer == "yes";
    };
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pay-to-contract toolkit: labeled wallets, Merkle contracts, signaling and a simulated ledger"};
    app.require_subcommand(1);
    CliConfig cfg;
    app.add_option("--state-dir", cfg.state_dir, "Directory for ledger, filestore and trust store")->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_option("--seed", cfg.seed, "Deterministic randomness seed (salts, keys, proof nonces)");

    std::function<void(Session&)> action;
    auto on = [&action](CLI::App* cmd, std::function<void(Session&)> fn) { cmd->callback([&action, fn] { action = fn; }); };

    // keygen
    std::string out_path;
    auto* keygen = app.add_subcommand("keygen", "Generate a secp256k1 keypair");
    keygen->add_option("--out", out_path, "Write the key file here")->required();
    on(keygen, [&](Session& s) {
        KeyPair k = s.rng().keypair();
        write_file(out_path, json{{"public", k.pub.hex()}, {"secret", k.secret.hex()}}.dump() + "\n");
        s.emit({{"address", p2pkh_address(k.pub).to_string()}, {"file", out_path}, {"public", k.pub.hex()}});
    });

    // address
    auto* address = app.add_subcommand("address", "Labeled-wallet derivation");
    address->require_subcommand(1);
    std::string pubbase_hex, label_text, label_hex, scheme = "additive", script_hex;
    auto add_label = [&](CLI::App* cmd) {
        auto* grp = cmd->add_option_group("label");
        grp->add_option("--label", label_text, "Label as UTF-8 text");
        grp->add_option("--label-hex", label_hex, "Label as raw hex bytes");
        grp->require_option(1);
    };
    auto* derive = address->add_subcommand("derive", "Derived pubkey and P2PKH address");
    derive->add_option("--pubbase", pubbase_hex, "Compressed pubbase")->required();
    derive->add_option("--scheme", scheme)->check(CLI::IsMember({"additive", "multiplicative"}))->capture_default_str();
    add_label(derive);
    on(derive, [&](Session& s) {
        Point base = Point::from_hex(pubbase_hex);
        Bytes label = label_bytes(label_text, label_hex);
        auto sch = scheme == "additive" ? DerivationScheme::additive : DerivationScheme::multiplicative;
        Point derived = derive_public(base, label, sch);
        s.emit({{"address", p2pkh_address(derived).to_string()}, {"derived_pubkey", derived.hex()}, {"scheme", scheme}});
    });
    auto* script_cmd = address->add_subcommand("script", "Derive a script from a base script");
    script_cmd->add_option("--script", script_hex, "Base script hex")->required();
    add_label(script_cmd);
    on(script_cmd, [&](Session& s) {
        Script derived = derive_script(Script::from_hex(script_hex), label_bytes(label_text, label_hex));
        s.emit({{"asm", derived.to_asm()}, {"p2sh", p2sh_address(derived).to_string()}, {"script", derived.hex()}});
    });
    int required = 0;
    std::vector<std::string> pubkeys;
    auto* multisig = address->add_subcommand("multisig", "Build an m-of-n CHECKMULTISIG base script");
    multisig->add_option("-m,--required", required)->required();
    multisig->add_option("--pubkey", pubkeys, "Pubkeys in script order")->required();
    on(multisig, [&](Session& s) {
        std::vector<Point> keys;
        for (const auto& h : pubkeys) keys.push_back(Point::from_hex(h));
        Script sc = Script::multisig(required, keys);
        s.emit({{"asm", sc.to_asm()}, {"p2sh", p2sh_address(sc).to_string()}, {"script", sc.hex()}});
    });
    auto* p2sh = address->add_subcommand("p2sh", "P2SH address of a script");
    p2sh->add_option("--script", script_hex)->required();
    on(p2sh, [&](Session& s) {
        Script sc = Script::from_hex(script_hex);
        Address a = p2sh_address(sc);
        s.emit({{"address", a.to_string()}, {"lock_script", p2sh_lock_script(a).to_asm()}});
    });

    // contract
    auto* contract = app.add_subcommand("contract", "Build, sign, redact and inspect contracts");
    contract->require_subcommand(1);
    std::string key_path, in_path, form_path, recipient_hex;
    std::vector<std::string> fields, paths;
    std::string tracking_hex;
    auto* tmpl = contract->add_subcommand("template", "Signed contract form from static fields");
    tmpl->add_option("--key", key_path, "Merchant reputation key file")->required();
    tmpl->add_option("--field", fields, "path=value")->required();
    tmpl->add_option("--tracking-key", tracking_hex, "Pubkey allowed to sign dynamic fields");
    tmpl->add_option("--out", out_path)->required();
    on(tmpl, [&](Session& s) {
        std::optional<Point> tracking;
        if (!tracking_hex.empty()) tracking = Point::from_hex(tracking_hex);
        Contract c = make_template(load_key(key_path), parse_fields(fields), s.rng(), tracking);
        write_file(out_path, encode_contract(c) + "\n");
        s.emit({{"contract_hash", contract_hash(c).hex()}, {"file", out_path}});
    });
    auto* build = contract->add_subcommand("build", "Fill order fields into a contract form");
    build->add_option("--form", form_path)->required();
    build->add_option("--field", fields, "name=value under order/")->required();
    build->add_option("--out", out_path)->required();
    on(build, [&](Session& s) {
        Contract c = build_contract(load_contract(form_path), parse_fields(fields), s.rng());
        write_file(out_path, encode_contract(c) + "\n");
        s.emit({{"contract_hash", contract_hash(c).hex()}, {"file", out_path}, {"payment_address", payment_address(c).to_string()}});
    });
    auto* sign = contract->add_subcommand("sign", "Sign fields with the merchant or tracking key");
    sign->add_option("--in", in_path)->required();
    sign->add_option("--key", key_path)->required();
    sign->add_option("--path", paths)->required();
    sign->add_option("--out", out_path)->required();
    on(sign, [&](Session& s) {
        Contract c = sign_static(load_contract(in_path), load_key(key_path).secret, parse_paths(paths));
        write_file(out_path, encode_contract(c) + "\n");
        s.emit({{"file", out_path}, {"signed", paths}});
    });
    auto* verify = contract->add_subcommand("verify", "Check every signature");
    verify->add_option("--in", in_path)->required();
    on(verify, [&](Session& s) { s.emit(report_json(verify_contract(load_contract(in_path)))); });
    std::string path_one;
    auto* redact_cmd = contract->add_subcommand("redact", "Replace a subtree by its digest");
    redact_cmd->add_option("--in", in_path)->required();
    redact_cmd->add_option("--path", path_one)->required();
    redact_cmd->add_option("--out", out_path)->required();
    on(redact_cmd, [&](Session& s) {
        Contract c = redact(load_contract(in_path), FieldPath::parse(path_one));
        write_file(out_path, encode_contract(c) + "\n");
        s.emit({{"contract_hash", contract_hash(c).hex()}, {"file", out_path}});
    });
    auto* enc = contract->add_subcommand("encrypt-leaf", "Encrypt a leaf to a public key");
    enc->add_option("--in", in_path)->required();
    enc->add_option("--path", path_one)->required();
    enc->add_option("--recipient", recipient_hex)->required();
    enc->add_option("--out", out_path)->required();
    on(enc, [&](Session& s) {
        Contract c = encrypt_leaf(load_contract(in_path), FieldPath::parse(path_one), Point::from_hex(recipient_hex), s.rng());
        write_file(out_path, encode_contract(c) + "\n");
        s.emit({{"contract_hash", contract_hash(c).hex()}, {"file", out_path}});
    });
    auto* dec = contract->add_subcommand("decrypt-leaf", "Decrypt an encrypted leaf");
    dec->add_option("--in", in_path)->required();
    dec->add_option("--path", path_one)->required();
    dec->add_option("--key", key_path)->required();
    on(dec, [&](Session& s) {
        Bytes v = decrypt_leaf(load_contract(in_path), FieldPath::parse(path_one), load_key(key_path).secret);
        s.emit({{"value", std::string(v.begin(), v.end())}, {"value_hex", to_hex(v)}});
    });
    auto* hash = contract->add_subcommand("hash", "Merkle root of a contract");
    hash->add_option("--in", in_path)->required();
    on(hash, [&](Session& s) { s.emit({{"contract_hash", contract_hash(load_contract(in_path)).hex()}}); });
    auto* payaddr = contract->add_subcommand("payment-address", "Address derived from the contract");
    payaddr->add_option("--in", in_path)->required();
    on(payaddr, [&](Session& s) { s.emit({{"payment_address", payment_address(load_contract(in_path)).to_string()}}); });
    auto* show = contract->add_subcommand("show", "Print visible fields");
    show->add_option("--in", in_path)->required();
    on(show, [&](Session&) { std::cout << render_contract(load_contract(in_path)); });
    bool assume_yes = false;
    auto* pay = contract->add_subcommand("pay", "Approve and pay a contract from a funded key");
    pay->add_option("--in", in_path)->required();
    pay->add_option("--key", key_path, "Funded customer key file")->required();
    pay->add_flag("--yes", assume_yes, "Skip the interactive prompt");
    on(pay, [&](Session& s) {
        CustomerWallet wallet;
        wallet.add(load_key(key_path));
        std::vector<Contract> receipts;
        Digest256 txid = customer_approve_and_pay(load_contract(in_path), s.trust(), wallet, s.ledger(), prompt_approval(assume_yes), receipts);
        s.save_ledger();
        s.emit({{"txid", txid.hex()}});
    });
    auto* detect = contract->add_subcommand("detect", "Merchant: check payment for a contract");
    detect->add_option("--in", in_path)->required();
    detect->add_option("--key", key_path, "Merchant reputation key file")->required();
    on(detect, [&](Session& s) {
        MerchantIdentity id{load_key(key_path), std::nullopt, {}, std::nullopt};
        s.emit(status_json(merchant_detect_payment(id, load_contract(in_path), s.ledger())));
    });
    auto* receipt = contract->add_subcommand("receipt", "Public receipt check (no keys)");
    receipt->add_option("--in", in_path)->required();
    on(receipt, [&](Session& s) {
        ReceiptCheck r = verify_receipt(load_contract(in_path), s.ledger());
        json ids = json::array();
        for (const auto& t : r.txids) ids.push_back(t.hex());
        s.emit({{"paid", r.paid}, {"payment_address", r.payment_address.to_string()}, {"price", r.price}, {"received", r.received}, {"txids", ids}});
    });

    // trust store
    auto* trust = app.add_subcommand("trust", "Customer trust store");
    trust->require_subcommand(1);
    std::string alias;
    auto* trust_add = trust->add_subcommand("add", "Remember a merchant key under an alias");
    trust_add->add_option("--alias", alias)->required();
    trust_add->add_option("--pubkey", pubbase_hex)->required();
    on(trust_add, [&](Session& s) {
        CustomerTrustStore t = s.trust();
        t.add(alias, Point::from_hex(pubbase_hex));
        s.save_trust(t);
        s.emit({{"alias", alias}, {"pubkey", pubbase_hex}});
    });

    // chain
    auto* chain = app.add_subcommand("chain", "Simulated ledger");
    chain->require_subcommand(1);
    std::string address_text;
    std::uint64_t amount = 0;
    auto* faucet = chain->add_subcommand("faucet", "Mint a coinbase output");
    faucet->add_option("--address", address_text)->required();
    faucet->add_option("--amount", amount)->required();
    on(faucet, [&](Session& s) {
        Digest256 id = s.ledger().faucet(Address::parse(address_text), amount);
        s.save_ledger();
        s.emit({{"txid", id.hex()}});
    });
    auto* send = chain->add_subcommand("send", "Pay from a key's P2PKH outputs");
    send->add_option("--key", key_path)->required();
    send->add_option("--to", address_text)->required();
    send->add_option("--amount", amount)->required();
    on(send, [&](Session& s) {
        CustomerWallet wallet;
        wallet.add(load_key(key_path));
        auto sel = wallet.select(s.ledger(), amount);
        std::vector<TxOutput> outs{TxOutput::to_address(Address::parse(address_text), amount)};
        if (sel.total > amount) outs.push_back(TxOutput::to_address(wallet.change_address(), sel.total - amount));
        Digest256 id = s.ledger().broadcast(build_transaction(s.ledger(), sel.spends, outs));
        s.save_ledger();
        s.emit({{"txid", id.hex()}});
    });
    auto* scan = chain->add_subcommand("scan", "Outputs paid to an address");
    scan->add_option("--address", address_text)->required();
    on(scan, [&](Session& s) {
        json hits = json::array();
        for (const auto& h : s.ledger().scan_address(Address::parse(address_text))) {
            hits.push_back({{"amount", h.amount}, {"index", h.index}, {"spent", h.spent}, {"txid", h.txid.hex()}});
        }
        s.emit({{"address", address_text}, {"outputs", hits}});
    });
    auto* chain_show = chain->add_subcommand("show", "Dump the ledger");
    on(chain_show, [&](Session& s) {
        std::size_t pos = 0;
        for (const auto& tx : s.ledger().transactions()) {
            s.emit({{"position", pos++}, {"tx", json::parse(tx.to_json())}, {"txid", tx.txid().hex()}});
        }
    });

    // signal
    auto* signal = app.add_subcommand("signal", "Blockchain signaling");
    signal->require_subcommand(1);
    std::string merchant_hex, variant = "merchant";
    auto* attach = signal->add_subcommand("attach", "Broadcast a signal from a funded key");
    attach->add_option("--key", key_path, "Funded signal key file")->required();
    attach->add_option("--merchant", merchant_hex)->required();
    attach->add_option("--amount", amount, "Signal output amount")->required();
    attach->add_option("--variant", variant)->check(CLI::IsMember({"merchant", "customer"}))->capture_default_str();
    on(attach, [&](Session& s) {
        KeyPair key = load_key(key_path);
        Point merchant = Point::from_hex(merchant_hex);
        CustomerWallet wallet;
        wallet.add(key);
        auto sel = wallet.select(s.ledger(), amount);
        TxDraft draft{sel.spends, {}};
        if (sel.total > amount) draft.outputs.push_back(TxOutput::to_address(wallet.change_address(), sel.total - amount));
        json raw;
        SignalKeyRegistry reg = s.registry(raw);
        auto v = variant == "merchant" ? SignalVariant::merchant_controlled : SignalVariant::customer_controlled;
        SignalValue value = attach_signal(draft, key, merchant, amount, v, reg);
        Digest256 id = s.ledger().broadcast(build_transaction(s.ledger(), draft.spends, draft.outputs));
        raw.push_back({key.pub.hex(), merchant.hex()});
        s.save_registry(raw);
        s.save_ledger();
        s.emit({{"signal_address", draft.outputs.back().payto.to_string()}, {"txid", id.hex()}, {"value", value.hex()}});
    });
    std::size_t watermark = 0;
    bool no_customer_variant = false;
    auto* signal_scan = signal->add_subcommand("scan", "Merchant: find signals addressed to a key");
    signal_scan->add_option("--key", key_path, "Merchant reputation key file")->required();
    signal_scan->add_option("--from", watermark, "Ledger position to start at")->capture_default_str();
    signal_scan->add_flag("--no-customer-variant", no_customer_variant);
    on(signal_scan, [&](Session& s) {
        MerchantIdentity id{load_key(key_path), std::nullopt, {}, std::nullopt};
        SignalScanState st{watermark, {}};
        json recs = json::array();
        for (const auto& r : merchant_scan_signals(id, s.ledger(), st, !no_customer_variant)) {
            recs.push_back({{"amount", r.amount},
                            {"output_index", r.output_index},
                            {"signal_pubkey", r.signal_pubkey.hex()},
                            {"txid", r.txid.hex()},
                            {"value", r.value.hex()},
                            {"variant", r.variant == SignalVariant::merchant_controlled ? "merchant" : "customer"}});
        }
        s.emit({{"signals", recs}, {"watermark", st.watermark}});
    });

    // dh
    auto* dh = app.add_subcommand("dh", "Chaum-Pedersen proofs for signal disputes");
    dh->require_subcommand(1);
    std::string proof_path, signal_pub_hex;
    auto* prove = dh->add_subcommand("prove", "Prove the shared point without revealing the key");
    prove->add_option("--key", key_path, "Signal key file")->required();
    prove->add_option("--merchant", merchant_hex)->required();
    prove->add_option("--out", out_path);
    on(prove, [&](Session& s) {
        DlegProof p = prove_dh(load_key(key_path).secret, Point::from_hex(merchant_hex), s.rng());
        if (!out_path.empty()) write_file(out_path, p.to_json() + "\n");
        s.emit(json::parse(p.to_json()));
    });
    auto* dh_verify = dh->add_subcommand("verify", "Check a proof");
    dh_verify->add_option("--proof", proof_path)->required();
    dh_verify->add_option("--signal-pub", signal_pub_hex)->required();
    dh_verify->add_option("--merchant", merchant_hex)->required();
    on(dh_verify, [&](Session& s) {
        DlegProof p = DlegProof::from_json(read_file(proof_path));
        Point merchant = Point::from_hex(merchant_hex);
        Point a = Point::from_hex(signal_pub_hex);
        bool ok = verify_dh(p, a, merchant);
        json j = {{"result", ok ? "valid" : "invalid"}};
        if (ok) j["signal_address"] = signal_address(SignalValue{p.shared.x_bytes()}, merchant, a, SignalVariant::merchant_controlled).to_string();
        s.emit(j);
    });

    // redeem
    auto* redeem = app.add_subcommand("redeem", "Contract redemption through the filestore");
    redeem->require_subcommand(1);
    std::string value_hex;
    auto* post = redeem->add_subcommand("post", "Encrypt a contract under a signal value and post it");
    post->add_option("--contract", in_path)->required();
    post->add_option("--value", value_hex)->required();
    on(post, [&](Session& s) {
        Digest256 name = redeem_post(load_contract(in_path), SignalValue::from_hex(value_hex), s.filestore(), s.rng());
        s.save_filestore();
        s.emit({{"filename", name.hex()}});
    });
    auto* retrieve = redeem->add_subcommand("retrieve", "Merchant: scan signals and fetch posted contracts");
    retrieve->add_option("--key", key_path, "Merchant reputation key file")->required();
    retrieve->add_option("--out-dir", out_path, "Write retrieved contracts here");
    on(retrieve, [&](Session& s) {
        MerchantIdentity id{load_key(key_path), std::nullopt, {}, std::nullopt};
        SignalScanState st;
        json out = json::array();
        for (const auto& r : merchant_scan_signals(id, s.ledger(), st)) {
            Retrieval got = merchant_retrieve(id, r, s.filestore(), s.ledger());
            json j = {{"status", status_json(got.status)}, {"value", r.value.hex()}};
            if (got.contract && !out_path.empty()) {
                fs::create_directories(out_path);
                std::string file = (fs::path(out_path) / (got.status.contract_hash.hex() + ".json")).string();
                write_file(file, std::string(got.contract_bytes.begin(), got.contract_bytes.end()) + "\n");
                j["file"] = file;
            }
            out.push_back(std::move(j));
        }
        s.emit({{"redemptions", out}});
    });

    // scenario
    auto* scenario = app.add_subcommand("scenario", "Run a full multi-actor walkthrough on fresh state");
    scenario->require_subcommand(1);
    for (auto name : scenario_names) {
        auto* sc = scenario->add_subcommand(std::string(name), "Scenario: " + std::string(name));
        sc->add_flag("--yes", assume_yes, "Approve the contract without prompting");
        std::string n(name);
        on(sc, [&, n](Session& s) { std::cout << run_scenario(n, s.rng(), prompt_approval(assume_yes)).str(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Session session(cfg);
        action(session);
    } catch (const Error& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
        return e.code() == "usage" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }
    return 0;
}
