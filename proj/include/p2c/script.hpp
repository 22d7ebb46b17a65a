#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "p2c/curve.hpp"
#include "p2c/hash.hpp"

namespace p2c {

enum class Opcode : std::uint8_t {
    equal = 0x87,
    hash160 = 0xa9,
    checkmultisig = 0xae,
};

/// OP_1 .. OP_16.
struct SmallInt {
    int value = 0;
    friend bool operator==(const SmallInt&, const SmallInt&) = default;
};

using ScriptElement = std::variant<Opcode, SmallInt, Point, Digest160>;

/// The subset of bitcoin script this library understands: multisig templates
/// and the P2SH wrapper. Serialization follows bitcoin's byte encoding
/// (small ints as OP_n, literals as direct pushes with a length byte).
struct Script {
    std::vector<ScriptElement> ops;

    /// m-of-n CHECKMULTISIG; throws Error("invalid_script") unless 1 <= m <= n <= 16.
    static Script multisig(int m, const std::vector<Point>& keys);

    Bytes serialize() const;
    /// Throws Error("invalid_script").
    static Script parse(ByteView raw);
    static Script from_hex(std::string_view hex) { return parse(p2c::from_hex(hex)); }
    std::string hex() const { return to_hex(serialize()); }

    /// Human-readable form, e.g. "2 <P1> <P2> 2 OP_CHECKMULTISIG".
    std::string to_asm() const;

    friend bool operator==(const Script&, const Script&) = default;
};

struct MultisigTemplate {
    int required = 0;
    std::vector<Point> keys;
};

/// Recognizes exactly [m, P1..Pn, n, CHECKMULTISIG].
std::optional<MultisigTemplate> match_multisig(const Script& script);

enum class AddressKind { p2pkh, p2sh };

/// Output destination. Text form is "<kind>:<hex digest>"; base58 is not used.
struct Address {
    AddressKind kind = AddressKind::p2pkh;
    Digest160 digest;

    std::string to_string() const;
    /// Throws Error("invalid_address").
    static Address parse(std::string_view text);

    auto operator<=>(const Address&) const = default;
};

Address p2pkh_address(const Point& pub);

/// HASH160 of the script's serialization.
Address p2sh_address(const Script& script);

/// The output script a P2SH address stands for: OP_HASH160 <digest> OP_EQUAL.
Script p2sh_lock_script(const Address& addr);

} // namespace p2c
