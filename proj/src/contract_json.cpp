#include <json.hpp>

#include "p2c/contract.hpp"
#include "p2c/error.hpp"

namespace p2c {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error("bad_contract", "malformed contract: " + why); }

json node_to_json(const ContractNode& node) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Redacted>) {
                return json{{"digest", v.digest.hex()}, {"kind", "redacted"}};
            } else if constexpr (std::is_same_v<T, Leaf>) {
                return json{{"encrypted", v.encrypted}, {"kind", "leaf"}, {"salt", to_hex(v.salt)}, {"value", to_hex(v.value)}};
            } else {
                json children = json::object();
                for (const auto& child : v.children) children[child.name] = node_to_json(child.node);
                return json{{"children", std::move(children)}, {"kind", "branch"}, {"salt", to_hex(v.salt)}};
            }
        },
        node.body);
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) bad(std::string("missing field '") + name + "'");
    return *it;
}

std::string string_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_string()) bad(std::string("field '") + name + "' must be a string");
    return v.get<std::string>();
}

template <std::size_t N>
std::array<std::uint8_t, N> fixed_hex_field(const json& j, const char* name) {
    try {
        return fixed_from_hex<N>(string_field(j, name));
    } catch (const Error& e) {
        if (e.code() == "bad_contract") throw;
        bad(std::string("field '") + name + "': " + e.what());
    }
}

ContractNode node_from_json(const json& j, int depth) {
    if (depth > 64) bad("tree too deep");
    if (!j.is_object()) bad("node must be an object");
    const std::string kind = string_field(j, "kind");
    if (kind == "leaf") {
        if (j.size() != 4) bad("leaf has unexpected fields");
        Leaf leaf;
        leaf.salt = fixed_hex_field<16>(j, "salt");
        try {
            leaf.value = from_hex(string_field(j, "value"));
        } catch (const Error& e) {
            if (e.code() == "bad_contract") throw;
            bad("leaf value is not hex");
        }
        const json& enc = field(j, "encrypted");
        if (!enc.is_boolean()) bad("'encrypted' must be boolean");
        leaf.encrypted = enc.get<bool>();
        return ContractNode{std::move(leaf)};
    }
    if (kind == "branch") {
        if (j.size() != 3) bad("branch has unexpected fields");
        Branch branch;
        branch.salt = fixed_hex_field<16>(j, "salt");
        const json& children = field(j, "children");
        if (!children.is_object()) bad("'children' must be an object");
        for (const auto& [name, child] : children.items()) {
            try {
                branch.insert(name, node_from_json(child, depth + 1));
            } catch (const Error& e) {
                if (e.code() == "bad_contract") throw;
                bad(e.what());
            }
        }
        return ContractNode{std::move(branch)};
    }
    if (kind == "redacted") {
        if (j.size() != 2) bad("redacted node has unexpected fields");
        return ContractNode{Redacted{Digest256{fixed_hex_field<32>(j, "digest")}}};
    }
    bad("unknown node kind '" + kind + "'");
}

json signatures_to_json(const std::map<std::string, Signature>& sigs) {
    json out = json::object();
    for (const auto& [path, sig] : sigs) out[path] = sig.hex();
    return out;
}

std::map<std::string, Signature> signatures_from_json(const json& j) {
    if (!j.is_object()) bad("signatures must be an object");
    std::map<std::string, Signature> out;
    for (const auto& [path, sig] : j.items()) {
        if (!sig.is_string()) bad("signature must be a hex string");
        try {
            FieldPath::parse(path);
            out.emplace(path, Signature::from_hex(sig.get<std::string>()));
        } catch (const Error& e) {
            bad("signature on '" + path + "': " + e.what());
        }
    }
    return out;
}

Point point_field(const json& j, const char* name) {
    try {
        return Point::from_hex(string_field(j, name));
    } catch (const Error& e) {
        if (e.code() == "bad_contract") throw;
        bad(std::string("field '") + name + "': " + e.what());
    }
}

json parse_or_throw(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        bad(e.what());
    }
}

} // namespace

std::string canonical_encode(const ContractNode& node) { return node_to_json(node).dump(); }

ContractNode decode_node(std::string_view text) { return node_from_json(parse_or_throw(text), 0); }

std::string encode_contract(const Contract& c) {
    json j = {
        {"dynamic_signatures", signatures_to_json(c.dynamic_signatures)},
        {"merchant_pubkey", c.merchant_pubkey.hex()},
        {"root", node_to_json(c.root)},
        {"static_signatures", signatures_to_json(c.static_signatures)},
    };
    if (c.dynamic_signing_key) j["dynamic_signing_key"] = c.dynamic_signing_key->hex();
    return j.dump();
}

Contract decode_contract(std::string_view text) {
    const json j = parse_or_throw(text);
    if (!j.is_object()) bad("contract must be an object");
    Contract c;
    c.root = node_from_json(field(j, "root"), 0);
    if (!std::holds_alternative<Branch>(c.root.body)) bad("root must be a branch");
    c.merchant_pubkey = point_field(j, "merchant_pubkey");
    c.static_signatures = signatures_from_json(field(j, "static_signatures"));
    c.dynamic_signatures = signatures_from_json(field(j, "dynamic_signatures"));
    if (j.contains("dynamic_signing_key")) c.dynamic_signing_key = point_field(j, "dynamic_signing_key");
    return c;
}

} // namespace p2c
