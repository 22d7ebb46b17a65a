#include "p2c/script.hpp"

#include "p2c/error.hpp"

namespace p2c {

namespace {

constexpr std::uint8_t push_point = 33;
constexpr std::uint8_t push_digest160 = 20;
constexpr std::uint8_t op_1 = 0x51;
constexpr std::uint8_t op_16 = 0x60;

[[noreturn]] void bad_script(const std::string& why) { throw Error("invalid_script", "invalid script: " + why); }

const char* opcode_name(Opcode op) {
    switch (op) {
    case Opcode::equal: return "OP_EQUAL";
    case Opcode::hash160: return "OP_HASH160";
    case Opcode::checkmultisig: return "OP_CHECKMULTISIG";
    }
    return "OP_UNKNOWN";
}

} // namespace

Script Script::multisig(int m, const std::vector<Point>& keys) {
    const int n = static_cast<int>(keys.size());
    if (n < 1 || n > 16 || m < 1 || m > n) bad_script("multisig needs 1 <= m <= n <= 16");
    Script s;
    s.ops.emplace_back(SmallInt{m});
    for (const auto& k : keys) {
        if (k.is_identity()) bad_script("identity pubkey");
        s.ops.emplace_back(k);
    }
    s.ops.emplace_back(SmallInt{n});
    s.ops.emplace_back(Opcode::checkmultisig);
    return s;
}

Bytes Script::serialize() const {
    Bytes out;
    for (const auto& el : ops) {
        std::visit(
            [&out](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Opcode>) {
                    out.push_back(static_cast<std::uint8_t>(v));
                } else if constexpr (std::is_same_v<T, SmallInt>) {
                    if (v.value < 1 || v.value > 16) bad_script("small int out of range");
                    out.push_back(static_cast<std::uint8_t>(op_1 + v.value - 1));
                } else if constexpr (std::is_same_v<T, Point>) {
                    out.push_back(push_point);
                    append(out, v.encode());
                } else {
                    out.push_back(push_digest160);
                    append(out, v.view());
                }
            },
            el);
    }
    return out;
}

Script Script::parse(ByteView raw) {
    Script s;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::uint8_t b = raw[i++];
        if (b >= op_1 && b <= op_16) {
            s.ops.emplace_back(SmallInt{b - op_1 + 1});
        } else if (b == push_point) {
            if (raw.size() - i < 33) bad_script("truncated pubkey push");
            try {
                s.ops.emplace_back(Point::decode(raw.subspan(i, 33)));
            } catch (const Error&) {
                bad_script("pushed pubkey is not on the curve");
            }
            i += 33;
        } else if (b == push_digest160) {
            if (raw.size() - i < 20) bad_script("truncated hash push");
            Digest160 d;
            std::copy(raw.begin() + static_cast<std::ptrdiff_t>(i), raw.begin() + static_cast<std::ptrdiff_t>(i + 20), d.bytes.begin());
            s.ops.emplace_back(d);
            i += 20;
        } else if (b == static_cast<std::uint8_t>(Opcode::equal) || b == static_cast<std::uint8_t>(Opcode::hash160) ||
                   b == static_cast<std::uint8_t>(Opcode::checkmultisig)) {
            s.ops.emplace_back(static_cast<Opcode>(b));
        } else {
            bad_script("unsupported opcode 0x" + to_hex(ByteView(&b, 1)));
        }
    }
    return s;
}

std::string Script::to_asm() const {
    std::string out;
    for (const auto& el : ops) {
        if (!out.empty()) out.push_back(' ');
        std::visit(
            [&out](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Opcode>) {
                    out += opcode_name(v);
                } else if constexpr (std::is_same_v<T, SmallInt>) {
                    out += std::to_string(v.value);
                } else {
                    out += "<" + v.hex() + ">";
                }
            },
            el);
    }
    return out;
}

std::optional<MultisigTemplate> match_multisig(const Script& script) {
    const auto& ops = script.ops;
    if (ops.size() < 4) return std::nullopt;
    const auto* m = std::get_if<SmallInt>(&ops.front());
    const auto* n = std::get_if<SmallInt>(&ops[ops.size() - 2]);
    const auto* op = std::get_if<Opcode>(&ops.back());
    if (!m || !n || !op || *op != Opcode::checkmultisig) return std::nullopt;
    MultisigTemplate t;
    t.required = m->value;
    for (std::size_t i = 1; i + 2 < ops.size(); ++i) {
        const auto* p = std::get_if<Point>(&ops[i]);
        if (!p) return std::nullopt;
        t.keys.push_back(*p);
    }
    const int count = static_cast<int>(t.keys.size());
    if (n->value != count || t.required < 1 || t.required > count) return std::nullopt;
    return t;
}

std::string Address::to_string() const {
    return std::string(kind == AddressKind::p2pkh ? "p2pkh:" : "p2sh:") + digest.hex();
}

Address Address::parse(std::string_view text) {
    Address a;
    std::string_view rest;
    if (text.starts_with("p2pkh:")) {
        a.kind = AddressKind::p2pkh;
        rest = text.substr(6);
    } else if (text.starts_with("p2sh:")) {
        a.kind = AddressKind::p2sh;
        rest = text.substr(5);
    } else {
        throw Error("invalid_address", "address must start with p2pkh: or p2sh:");
    }
    try {
        a.digest = Digest160::from_hex(rest);
    } catch (const Error&) {
        throw Error("invalid_address", "address digest must be 20 bytes of hex");
    }
    return a;
}

Address p2pkh_address(const Point& pub) { return Address{AddressKind::p2pkh, hash160(pub.encode())}; }

Address p2sh_address(const Script& script) {
    if (script.ops.empty()) throw Error("invalid_script", "invalid script: empty");
    return Address{AddressKind::p2sh, hash160(script.serialize())};
}

Script p2sh_lock_script(const Address& addr) {
    Script s;
    s.ops = {Opcode::hash160, addr.digest, Opcode::equal};
    return s;
}

} // namespace p2c
