#include <istream>
#include <json.hpp>
#include <ostream>

#include "p2c/chain.hpp"
#include "p2c/error.hpp"

namespace p2c {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error("bad_transaction", "malformed transaction: " + why); }

std::string be_hex(std::uint64_t v, int bytes) {
    Bytes raw;
    append_u64_be(raw, v);
    return to_hex(ByteView(raw).subspan(8 - static_cast<std::size_t>(bytes)));
}

std::uint64_t parse_be_hex(const json& j, int bytes) {
    if (!j.is_string()) bad("integer must be a hex string");
    Bytes raw;
    try {
        raw = from_hex(j.get<std::string>());
    } catch (const Error&) {
        bad("integer is not hex");
    }
    if (raw.size() != static_cast<std::size_t>(bytes)) bad("integer has wrong width");
    std::uint64_t v = 0;
    for (auto b : raw) v = (v << 8) | b;
    return v;
}

json tx_to_json(const Transaction& tx, bool with_signatures) {
    json inputs = json::array();
    for (const auto& in : tx.inputs) {
        json ji = {{"index", be_hex(in.prev.index, 4)}, {"prev_txid", in.prev.txid.hex()}};
        if (in.pubkey) ji["pubkey"] = in.pubkey->hex();
        if (in.redeem_script) ji["redeem_script"] = in.redeem_script->hex();
        if (with_signatures) {
            json sigs = json::array();
            for (const auto& s : in.signatures) sigs.push_back(s.hex());
            ji["signatures"] = std::move(sigs);
        }
        inputs.push_back(std::move(ji));
    }
    json outputs = json::array();
    for (const auto& out : tx.outputs) {
        json jo = {{"amount", be_hex(out.amount, 8)}, {"payto", out.payto.to_string()}};
        if (out.pubkey) jo["pubkey"] = out.pubkey->hex();
        outputs.push_back(std::move(jo));
    }
    json j = {{"inputs", std::move(inputs)}, {"outputs", std::move(outputs)}};
    if (tx.coinbase_sequence) j["coinbase"] = be_hex(*tx.coinbase_sequence, 8);
    return j;
}

const json& member(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) bad(std::string("missing '") + name + "'");
    return *it;
}

std::string str_member(const json& j, const char* name) {
    const json& v = member(j, name);
    if (!v.is_string()) bad(std::string("'") + name + "' must be a string");
    return v.get<std::string>();
}

} // namespace

std::string Transaction::signing_preimage() const { return tx_to_json(*this, false).dump(); }

Digest256 Transaction::txid() const { return sha256(signing_preimage()); }

std::string Transaction::to_json() const { return tx_to_json(*this, true).dump(); }

Transaction Transaction::from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        bad(e.what());
    }
    if (!j.is_object()) bad("record must be an object");
    Transaction tx;
    try {
        if (j.contains("coinbase")) tx.coinbase_sequence = parse_be_hex(j["coinbase"], 8);
        const json& inputs = member(j, "inputs");
        const json& outputs = member(j, "outputs");
        if (!inputs.is_array() || !outputs.is_array()) bad("inputs/outputs must be arrays");
        for (const auto& ji : inputs) {
            TxInput in;
            in.prev.txid = Digest256::from_hex(str_member(ji, "prev_txid"));
            in.prev.index = static_cast<std::uint32_t>(parse_be_hex(member(ji, "index"), 4));
            if (ji.contains("pubkey")) in.pubkey = Point::from_hex(str_member(ji, "pubkey"));
            if (ji.contains("redeem_script")) in.redeem_script = Script::from_hex(str_member(ji, "redeem_script"));
            if (ji.contains("signatures")) {
                for (const auto& s : ji["signatures"]) {
                    if (!s.is_string()) bad("signature must be a string");
                    in.signatures.push_back(Signature::from_hex(s.get<std::string>()));
                }
            }
            tx.inputs.push_back(std::move(in));
        }
        for (const auto& jo : outputs) {
            TxOutput out;
            out.amount = parse_be_hex(member(jo, "amount"), 8);
            out.payto = Address::parse(str_member(jo, "payto"));
            if (jo.contains("pubkey")) out.pubkey = Point::from_hex(str_member(jo, "pubkey"));
            tx.outputs.push_back(std::move(out));
        }
    } catch (const Error& e) {
        if (e.code() == "bad_transaction") throw;
        bad(e.what());
    }
    return tx;
}

void Ledger::write(std::ostream& out) const {
    for (const auto& tx : transactions()) out << tx.to_json() << '\n';
}

void Ledger::replay(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Transaction tx = Transaction::from_json(line);
        if (tx.is_coinbase()) {
            if (tx.inputs.size() != 0 || tx.outputs.size() != 1 || *tx.coinbase_sequence != size()) {
                throw Error("bad_transaction", "coinbase record out of sequence");
            }
            faucet(tx.outputs.front());
        } else {
            broadcast(tx);
        }
    }
}

void FileStore::write(std::ostream& out) const {
    std::shared_lock lock(mu_);
    for (const auto& [name, data] : files_) {
        out << json{{"data", to_hex(data)}, {"name", name.hex()}}.dump() << '\n';
    }
}

void FileStore::replay(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            put(Digest256::from_hex(j.at("name").get<std::string>()), from_hex(j.at("data").get<std::string>()));
        } catch (const json::exception& e) {
            throw Error("bad_filestore", std::string("malformed filestore record: ") + e.what());
        }
    }
}

} // namespace p2c
