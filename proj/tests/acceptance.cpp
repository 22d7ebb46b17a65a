// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "openssl_oracle.hpp"
#include "p2c/error.hpp"
#include "p2c/labeled_wallet.hpp"
#include "p2c/protocol.hpp"
#include "test_support.hpp"

using namespace p2c;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
    std::ostringstream o;
    o.precision(3);
    o << std::fixed << s << " s";
    return o.str();
}

std::vector<std::string> leaf_paths(const ContractNode& node, const std::string& prefix) {
    std::vector<std::string> out;
    if (const auto* b = std::get_if<Branch>(&node.body)) {
        for (const auto& ch : b->children) {
            std::string p = prefix.empty() ? ch.name : prefix + "/" + ch.name;
            if (std::holds_alternative<Leaf>(ch.node.body)) {
                out.push_back(p);
            } else {
                auto sub = leaf_paths(ch.node, p);
                out.insert(out.end(), sub.begin(), sub.end());
            }
        }
    }
    return out;
}

Leaf* leaf_at(Contract& c, const std::string& path) {
    ContractNode* n = &c.root;
    const FieldPath fp = FieldPath::parse(path);
    for (const auto& seg : fp.segments()) {
        auto* b = std::get_if<Branch>(&n->body);
        if (!b) return nullptr;
        n = b->find(seg);
        if (!n) return nullptr;
    }
    return std::get_if<Leaf>(&n->body);
}

std::uint32_t draw(RandomSource& rng, std::uint32_t bound) {
    auto b = rng.bytes<4>();
    std::uint32_t v = (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) | b[3];
    return v % bound;
}

// Random contract with a random mix of static fields and order fields.
Contract random_contract(RandomSource& rng, const KeyPair& merchant) {
    FieldList statics{{"merchant/name", "shop-" + std::to_string(draw(rng, 1000))}};
    for (std::uint32_t i = 0, n = 1 + draw(rng, 4); i < n; ++i) {
        statics.emplace_back("terms/clause" + std::to_string(i), "text " + std::to_string(draw(rng, 100000)));
    }
    if (draw(rng, 2)) statics.emplace_back("pricelist/item" + std::to_string(draw(rng, 50)), std::to_string(draw(rng, 9000)));
    Contract form = make_template(merchant, statics, rng);
    FieldList order{{"price", std::to_string(100 + draw(rng, 5000))}, {"item", "sku-" + std::to_string(draw(rng, 100))}};
    for (std::uint32_t i = 0, n = draw(rng, 4); i < n; ++i) order.emplace_back("note" + std::to_string(i), std::to_string(draw(rng, 1u << 30)));
    return build_contract(form, order, rng);
}

Outcome homomorphism() {
    SeededRandom rng(1001);
    auto t0 = Clock::now();
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
        KeyPair base = rng.keypair();
        Bytes label(1 + draw(rng, 64));
        rng.fill(label);
        for (auto scheme : {DerivationScheme::additive, DerivationScheme::multiplicative}) {
            if (point_from_scalar(derive_private(base.secret, label, scheme)) != derive_public(base.pub, label, scheme)) ++failures;
        }
    }
    double t = seconds_since(t0);
    return {failures == 0 && t < 5.0, "2000 derivations, " + std::to_string(failures) + " failures, " + fmt_seconds(t)};
}

std::vector<std::string> basic_run(std::uint64_t seed, bool& ok) {
    SeededRandom rng(seed);
    Ledger ledger;
    MerchantIdentity merchant{rng.keypair(), std::nullopt, {}, std::nullopt};
    CustomerTrustStore trust;
    trust.add("acme", merchant.reputation.pub);
    CustomerWallet wallet = support::funded_wallet(ledger, rng, 100000);
    Contract c = support::sample_contract(rng, merchant.reputation, 5000);
    std::vector<Contract> receipts;
    Digest256 pay = customer_approve_and_pay(c, trust, wallet, ledger, support::approve_all(), receipts);
    OrderStatus st = merchant_detect_payment(merchant, c, ledger);
    Address vault = p2pkh_address(rng.keypair().pub);
    Digest256 sweep = merchant_sweep(merchant, c, ledger, vault);
    auto got = ledger.unspent_for(vault);
    ok = st.state == OrderState::paid && st.paying_txid == pay && got.size() == 1 && got[0].second.amount == 5000 &&
         ledger.find(sweep).has_value();
    return {pay.hex(), sweep.hex(), contract_hash(c).hex()};
}

Outcome basic_protocol() {
    bool ok1 = false, ok2 = false;
    auto a = basic_run(2002, ok1);
    auto b = basic_run(2002, ok2);
    bool same = a == b;
    return {ok1 && ok2 && same, std::string("paid, detected, swept with derived key; rerun ") + (same ? "identical" : "DIFFERS")};
}

Outcome tamper_attack() {
    SeededRandom rng(3003);
    int false_paid = 0, exceptions = 0, recovered = 0;
    std::uint64_t want = 0, got = 0;
    for (int i = 0; i < 100; ++i) {
        try {
            Ledger ledger;
            MerchantIdentity merchant{rng.keypair(), std::nullopt, {}, std::nullopt};
            CustomerTrustStore trust;
            trust.add("shop", merchant.reputation.pub);
            CustomerWallet wallet = support::funded_wallet(ledger, rng, 100000);
            Contract truth = random_contract(rng, merchant.reputation);
            Contract tampered = truth;
            auto paths = leaf_paths(tampered.root, "");
            Leaf* leaf = leaf_at(tampered, paths[draw(rng, static_cast<std::uint32_t>(paths.size()))]);
            if (leaf->value.empty()) leaf->value.push_back(0);
            leaf->value[draw(rng, static_cast<std::uint32_t>(leaf->value.size()))] ^= static_cast<std::uint8_t>(1 + draw(rng, 255));

            std::vector<Contract> receipts;
            customer_approve_and_pay(truth, trust, wallet, ledger, support::approve_all(), receipts);
            if (merchant_detect_payment(merchant, tampered, ledger).state == OrderState::paid) ++false_paid;

            OrderStatus st = merchant_detect_payment(merchant, receipts.at(0), ledger);
            std::uint64_t price = contract_price(truth);
            want += price;
            Address vault = p2pkh_address(rng.keypair().pub);
            if (st.state == OrderState::paid) {
                merchant_sweep(merchant, receipts.at(0), ledger, vault);
                std::uint64_t swept = 0;
                for (const auto& [op, out] : ledger.unspent_for(vault)) swept += out.amount;
                got += swept;
                recovered += swept == price;
            }
        } catch (const std::exception& e) {
            std::cerr << "tamper trial " << i << ": " << e.what() << "\n";
            ++exceptions;
        }
    }
    bool ok = false_paid == 0 && exceptions == 0 && recovered == 100 && got == want;
    return {ok, "tampered reported paid " + std::to_string(false_paid) + "/100, recovered " + std::to_string(got) + "/" +
                    std::to_string(want) + ", exceptions " + std::to_string(exceptions)};
}

Outcome merkle_redaction() {
    SeededRandom rng(4004);
    int invariant_fail = 0, mutation_miss = 0, mutations = 0;
    for (int i = 0; i < 200; ++i) {
        KeyPair merchant = rng.keypair();
        Contract c = random_contract(rng, merchant);
        const Digest256 h = contract_hash(c);
        const Address addr = payment_address(c);
        std::vector<std::string> nodes;
        std::function<void(const ContractNode&, const std::string&)> walk = [&](const ContractNode& n, const std::string& prefix) {
            if (const auto* b = std::get_if<Branch>(&n.body)) {
                for (const auto& ch : b->children) {
                    std::string p = prefix.empty() ? ch.name : prefix + "/" + ch.name;
                    nodes.push_back(p);
                    walk(ch.node, p);
                }
            }
        };
        walk(c.root, "");
        Contract r = c;
        std::set<std::string> hidden;
        for (const auto& p : nodes) {
            if (draw(rng, 3) != 0) continue;
            bool under_hidden = false;
            for (const auto& hp : hidden) under_hidden |= p.rfind(hp + "/", 0) == 0;
            if (under_hidden) continue;
            r = redact(r, FieldPath::parse(p));
            hidden.insert(p);
        }
        if (contract_hash(r).bytes != h.bytes || payment_address(r) != addr) ++invariant_fail;

        auto visible = leaf_paths(r.root, "");
        if (visible.empty()) continue;
        Leaf* leaf = leaf_at(r, visible[draw(rng, static_cast<std::uint32_t>(visible.size()))]);
        std::size_t bits = (leaf->value.size() + leaf->salt.size()) * 8;
        std::size_t bit = draw(rng, static_cast<std::uint32_t>(bits));
        std::uint8_t* byte = bit / 8 < leaf->value.size() ? &leaf->value[bit / 8] : &leaf->salt[bit / 8 - leaf->value.size()];
        *byte ^= static_cast<std::uint8_t>(1u << (bit % 8));
        ++mutations;
        if (contract_hash(r) == h) ++mutation_miss;
    }
    return {invariant_fail == 0 && mutation_miss == 0 && mutations > 0,
            "200 contracts, invariance failures " + std::to_string(invariant_fail) + ", undetected bit flips " +
                std::to_string(mutation_miss) + "/" + std::to_string(mutations)};
}

Outcome signaling_detection() {
    SeededRandom rng(5005);
    Ledger ledger;
    MerchantIdentity merchant{rng.keypair(), std::nullopt, {}, std::nullopt};
    SignalKeyRegistry reg;
    std::set<SignalValue> planted;
    std::vector<int> layout(110, 0);
    for (int i = 0; i < 10; ++i) layout[static_cast<std::size_t>(i) * 11 + draw(rng, 11)] = 1;
    int decoys = 0;
    for (int kind : layout) {
        KeyPair key = rng.keypair();
        Digest256 f = ledger.faucet(p2pkh_address(key.pub), 1000);
        TxDraft draft{{SpendKey::single(Outpoint{f, 0}, key.secret)}, {TxOutput::to_address(p2pkh_address(rng.keypair().pub), 800)}};
        if (kind == 1) {
            auto v = planted.size() % 2 ? SignalVariant::customer_controlled : SignalVariant::merchant_controlled;
            planted.insert(attach_signal(draft, key, merchant.reputation.pub, 200, v, reg));
        } else {
            ++decoys;
            switch (draw(rng, 3)) {
            case 0: attach_signal(draft, key, rng.keypair().pub, 200, SignalVariant::merchant_controlled, reg); break;
            case 1: draft.outputs.push_back(TxOutput::to_pubkey(rng.keypair().pub, 200)); break;
            default: draft.outputs.push_back(TxOutput::to_address(p2pkh_address(key.pub), 200)); break;
            }
        }
        ledger.broadcast(build_transaction(ledger, draft.spends, draft.outputs));
    }
    auto t0 = Clock::now();
    SignalScanState st;
    auto recs = merchant_scan_signals(merchant, ledger, st);
    double t = seconds_since(t0);
    std::set<SignalValue> found;
    for (const auto& r : recs) found.insert(r.value);
    bool ok = found == planted && recs.size() == 10 && planted.size() == 10 && decoys >= 100 && t < 10.0;
    return {ok, std::to_string(recs.size()) + " found, " + std::to_string(planted.size()) + " planted among " + std::to_string(decoys) +
                    " decoys, set " + (found == planted ? "equal" : "DIFFERENT") + ", " + fmt_seconds(t)};
}

Outcome chaum_pedersen() {
    SeededRandom rng(6006);
    int honest = 0;
    int rejected[4] = {0, 0, 0, 0};
    for (int i = 0; i < 100; ++i) {
        KeyPair a = rng.keypair(), m = rng.keypair();
        DlegProof p = prove_dh(a.secret, m.pub, rng);
        honest += verify_dh(p, a.pub, m.pub);
        Point nudge = rng.keypair().pub;
        DlegProof q = p;
        q.shared = q.shared * nudge;
        rejected[0] += !verify_dh(q, a.pub, m.pub);
        q = p;
        q.commit_g = q.commit_g * nudge;
        rejected[1] += !verify_dh(q, a.pub, m.pub);
        q = p;
        q.commit_p = q.commit_p * nudge;
        rejected[2] += !verify_dh(q, a.pub, m.pub);
        q = p;
        q.response = q.response + rng.nonzero_scalar();
        rejected[3] += !verify_dh(q, a.pub, m.pub);
    }
    bool ok = honest == 100 && rejected[0] == 100 && rejected[1] == 100 && rejected[2] == 100 && rejected[3] == 100;
    return {ok, std::to_string(honest) + "/100 honest verify; rejected shared " + std::to_string(rejected[0]) + ", g^u " +
                    std::to_string(rejected[1]) + ", P^u " + std::to_string(rejected[2]) + ", response " + std::to_string(rejected[3])};
}

Outcome redemption() {
    SeededRandom rng(7007);
    Ledger ledger;
    FileStore fs;
    MerchantIdentity merchant{rng.keypair(), std::nullopt, {}, std::nullopt};
    CustomerTrustStore trust;
    trust.add("acme", merchant.reputation.pub);
    CustomerWallet wallet = support::funded_wallet(ledger, rng, 100000);
    Contract c = support::sample_contract(rng, merchant.reputation, 5000);
    SignalKeyRegistry reg;
    std::vector<Contract> receipts;
    KeyPair signal_key = rng.keypair();
    CombinedPayment pay = combined_pay_and_signal(c, signal_key, trust, wallet, ledger, support::approve_all(), reg, 500, receipts);
    Transaction tx = *ledger.find(pay.txid);
    std::size_t key_outputs = 0;
    for (const auto& o : tx.outputs) key_outputs += o.payto == pay.payment_address || o.payto == pay.signal_address;
    redeem_post(c, pay.value, fs, rng);
    SignalScanState st;
    auto recs = merchant_scan_signals(merchant, ledger, st);
    if (recs.size() != 1) return {false, "scan returned " + std::to_string(recs.size()) + " signals"};
    Retrieval got = merchant_retrieve(merchant, recs[0], fs, ledger);
    bool identical = got.contract_bytes == to_bytes(encode_contract(c));
    bool ok = key_outputs == 2 && got.contract && identical && got.status.state == OrderState::accepted && verify_contract(*got.contract).ok;
    return {ok, std::string("payment+signal outputs ") + std::to_string(key_outputs) + ", bytes " + (identical ? "identical" : "DIFFER") +
                    ", state " + to_string(got.status.state)};
}

Outcome script_derivation() {
    SeededRandom rng(8008);
    Ledger ledger;
    KeyPair k1 = rng.keypair(), k2 = rng.keypair();
    MerchantIdentity merchant{rng.keypair(), Script::multisig(2, {k1.pub, k2.pub}), {k1.secret, k2.secret}, std::nullopt};
    Bytes label(32);
    rng.fill(label);
    Script derived = derive_script(*merchant.base_script, label);
    Script expected;
    expected.ops = {SmallInt{2}, derive_public(k1.pub, label), derive_public(k2.pub, label), SmallInt{2}, Opcode::checkmultisig};
    bool structural = derived == expected;
    Address addr = p2sh_address(derived);
    Digest256 f = ledger.faucet(addr, 4321);
    Address to = p2pkh_address(rng.keypair().pub);
    bool spent = false;
    try {
        merchant_spend_script_output(merchant, Outpoint{f, 0}, label, ledger, to);
        spent = ledger.is_spent(Outpoint{f, 0}) && ledger.unspent_for(to).at(0).second.amount == 4321;
    } catch (const Error& e) {
        return {false, std::string("spend rejected: ") + e.code()};
    }
    return {structural && spent, std::string("derived script ") + (structural ? "matches" : "DIFFERS") + " template, P2SH spend " +
                                     (spent ? "accepted" : "FAILED")};
}

Outcome ecdsa_cross_check() {
    SeededRandom rng(9009);
    int round_trips = 0;
    for (int i = 0; i < 100; ++i) {
        KeyPair k = rng.keypair();
        Bytes msg(1 + draw(rng, 100));
        rng.fill(msg);
        Signature sig = ecdsa_sign(k.secret, msg);
        Bytes bad = msg;
        bad[0] ^= 0x80;
        round_trips += ecdsa_verify(k.pub, msg, sig) && !ecdsa_verify(k.pub, bad, sig);
    }
    int agree = 0;
    for (int i = 0; i < 10; ++i) {
        KeyPair k = rng.keypair();
        support::OpenSslKey ref(k.secret);
        Bytes msg = to_bytes("cross-check " + std::to_string(i));
        bool ours_by_ref = ref.verify(msg, ecdsa_sign(k.secret, msg));
        bool ref_by_ours = ecdsa_verify(k.pub, msg, ref.sign(msg));
        agree += ref.pub_hex() == k.pub.hex() && ours_by_ref && ref_by_ours;
    }
    return {round_trips == 100 && agree == 10,
            std::to_string(round_trips) + "/100 round trips, " + std::to_string(agree) + "/10 agree with OpenSSL"};
}

std::string run_cli(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    if (pclose(pipe) != 0) out += "\n<nonzero exit>";
    return out;
}

Outcome cli_determinism(const std::string& cli, const std::string& golden_dir) {
    int matched = 0;
    std::string mismatched;
    for (const char* name : {"basic", "offline", "anonymous", "tamper"}) {
        std::ifstream in(golden_dir + "/" + name + ".jsonl", std::ios::binary);
        std::ostringstream golden;
        golden << in.rdbuf();
        std::string got = run_cli("'" + cli + "' --seed 7 scenario " + name + " --yes 2>/dev/null");
        if (in && !golden.str().empty() && got == golden.str()) {
            ++matched;
        } else {
            mismatched += std::string(" ") + name;
        }
    }
    return {matched == 4, std::to_string(matched) + "/4 transcripts byte-identical" + (mismatched.empty() ? "" : "; mismatch:" + mismatched)};
}

} // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : P2C_CLI_PATH;
    std::string golden = argc > 2 ? argv[2] : P2C_GOLDEN_DIR;

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"homomorphism", homomorphism},
        {"basic-protocol", basic_protocol},
        {"tamper-attack", tamper_attack},
        {"merkle-redaction", merkle_redaction},
        {"signaling-detection", signaling_detection},
        {"chaum-pedersen", chaum_pedersen},
        {"redemption-round-trip", redemption},
        {"script-derivation", script_derivation},
        {"ecdsa-cross-check", ecdsa_cross_check},
        {"cli-determinism", [&] { return cli_determinism(cli, golden); }},
    };
    int failed = 0;
    int index = 1;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index++ << ". " << name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
