#include "p2c/contract.hpp"

#include <algorithm>
#include <charconv>

#include "p2c/cipher.hpp"
#include "p2c/error.hpp"
#include "p2c/labeled_wallet.hpp"

namespace p2c {

namespace {

[[noreturn]] void no_such_field(const FieldPath& path) { throw Error("no_such_field", "no such field: " + path.str()); }

enum class Lookup { found, hidden, missing };

struct LookupResult {
    Lookup state = Lookup::missing;
    const ContractNode* node = nullptr;
};

LookupResult lookup(const ContractNode& root, const FieldPath& path) {
    const ContractNode* cur = &root;
    for (const auto& seg : path.segments()) {
        if (std::holds_alternative<Redacted>(cur->body)) return {Lookup::hidden, nullptr};
        const auto* branch = std::get_if<Branch>(&cur->body);
        if (!branch) return {Lookup::missing, nullptr};
        cur = branch->find(seg);
        if (!cur) return {Lookup::missing, nullptr};
    }
    return {Lookup::found, cur};
}

ContractNode& resolve_mut(ContractNode& root, const FieldPath& path) {
    ContractNode* cur = &root;
    for (const auto& seg : path.segments()) {
        auto* branch = std::get_if<Branch>(&cur->body);
        if (!branch) no_such_field(path);
        cur = branch->find(seg);
        if (!cur) no_such_field(path);
    }
    return *cur;
}

Salt fresh_salt(RandomSource& rng) { return rng.bytes<16>(); }

void walk(const ContractNode& node, const std::string& prefix, VerificationReport& report) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Redacted>) {
                report.redacted_paths.push_back(prefix);
            } else if constexpr (std::is_same_v<T, Leaf>) {
                if (v.encrypted) report.encrypted_paths.push_back(prefix);
            } else {
                for (const auto& child : v.children) {
                    walk(child.node, prefix.empty() ? child.name : prefix + "/" + child.name, report);
                }
            }
        },
        node.body);
}

// Checks that an identity leaf, when visible, carries `expected`.
void check_identity_leaf(const Contract& c, std::string_view path_text, const std::optional<Point>& expected,
                         VerificationReport& report) {
    const FieldPath path = FieldPath::parse(path_text);
    LookupResult r = lookup(c.root, path);
    if (r.state == Lookup::hidden || (r.state == Lookup::found && std::holds_alternative<Redacted>(r.node->body))) {
        report.warnings.push_back(std::string(path_text) + " is redacted");
        return;
    }
    if (r.state == Lookup::missing) {
        if (expected) report.failures.push_back(std::string(path_text) + " missing");
        return;
    }
    const auto* leaf = std::get_if<Leaf>(&r.node->body);
    if (!leaf || leaf->encrypted) {
        report.failures.push_back(std::string(path_text) + " is not a plain leaf");
        return;
    }
    if (!expected) {
        report.failures.push_back(std::string(path_text) + " present but header key absent");
        return;
    }
    auto enc = expected->encode();
    if (!std::equal(leaf->value.begin(), leaf->value.end(), enc.begin(), enc.end())) {
        report.failures.push_back(std::string(path_text) + " does not match header key");
    }
}

void check_signatures(const Contract& c, const std::map<std::string, Signature>& sigs, const std::optional<Point>& key,
                      bool dynamic, VerificationReport& report) {
    for (const auto& [path_text, sig] : sigs) {
        SignatureCheck check{path_text, dynamic, SignatureCheck::Status::invalid};
        FieldPath path = FieldPath::parse(path_text);
        LookupResult r = lookup(c.root, path);
        if (r.state == Lookup::hidden) {
            check.status = SignatureCheck::Status::hidden;
            report.warnings.push_back("signature on " + path_text + " not checkable: hidden by redaction");
        } else if (r.state == Lookup::found && key &&
                   ecdsa_verify(*key, field_signature_message(path, node_digest(*r.node)), sig)) {
            check.status = SignatureCheck::Status::valid;
        } else {
            std::string why = r.state == Lookup::missing ? "signed field missing" : !key ? "no signing key" : "bad signature";
            report.failures.push_back((dynamic ? "dynamic signature on " : "static signature on ") + path_text + ": " + why);
        }
        report.signatures.push_back(std::move(check));
    }
}

bool printable(const Bytes& value) {
    return std::all_of(value.begin(), value.end(), [](std::uint8_t b) { return b >= 0x20 && b < 0x7f; });
}

void render(const ContractNode& node, const std::string& prefix, std::string& out) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Redacted>) {
                out += prefix + " = [redacted " + v.digest.hex() + "]\n";
            } else if constexpr (std::is_same_v<T, Leaf>) {
                if (v.encrypted) {
                    out += prefix + " = [encrypted, " + std::to_string(v.value.size()) + " bytes]\n";
                } else if (printable(v.value)) {
                    out += prefix + " = " + std::string(v.value.begin(), v.value.end()) + "\n";
                } else {
                    out += prefix + " = 0x" + to_hex(v.value) + "\n";
                }
            } else {
                for (const auto& child : v.children) {
                    render(child.node, prefix.empty() ? child.name : prefix + "/" + child.name, out);
                }
            }
        },
        node.body);
}

// Creates intermediate branches as needed and places a new leaf at `path`.
void insert_leaf(ContractNode& root, const FieldPath& path, std::string_view value, RandomSource& rng) {
    ContractNode* cur = &root;
    const auto& segs = path.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        auto* branch = std::get_if<Branch>(&cur->body);
        if (!branch) throw Error("path_collision", "path collision at " + path.str());
        const bool last = i + 1 == segs.size();
        ContractNode* next = branch->find(segs[i]);
        if (last) {
            if (next) throw Error("path_collision", "path collision at " + path.str());
            branch->insert(segs[i], ContractNode{Leaf{fresh_salt(rng), to_bytes(value), false}});
        } else if (!next) {
            next = &branch->insert(segs[i], ContractNode{Branch{fresh_salt(rng), {}}});
        }
        cur = next;
    }
}

} // namespace

// --- Branch / FieldPath -----------------------------------------------------

const ContractNode* Branch::find(std::string_view name) const {
    auto it = std::lower_bound(children.begin(), children.end(), name,
                               [](const NamedNode& n, std::string_view key) { return n.name < key; });
    return it != children.end() && it->name == name ? &it->node : nullptr;
}

ContractNode* Branch::find(std::string_view name) {
    return const_cast<ContractNode*>(std::as_const(*this).find(name));
}

ContractNode& Branch::insert(std::string name, ContractNode node) {
    if (name.empty() || name.find('/') != std::string::npos) throw Error("invalid_path", "invalid field name '" + name + "'");
    auto it = std::lower_bound(children.begin(), children.end(), name,
                               [](const NamedNode& n, const std::string& key) { return n.name < key; });
    if (it != children.end() && it->name == name) throw Error("path_collision", "path collision at " + name);
    return children.insert(it, NamedNode{std::move(name), std::move(node)})->node;
}

FieldPath::FieldPath(std::vector<std::string> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw Error("invalid_path", "empty field path");
    for (const auto& s : segments_) {
        if (s.empty() || s.find('/') != std::string::npos) throw Error("invalid_path", "invalid field path segment");
    }
}

FieldPath FieldPath::parse(std::string_view text) {
    std::vector<std::string> segs;
    std::size_t start = 0;
    while (true) {
        std::size_t slash = text.find('/', start);
        segs.emplace_back(text.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start));
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    return FieldPath(std::move(segs));
}

std::string FieldPath::str() const {
    std::string out;
    for (const auto& s : segments_) {
        if (!out.empty()) out.push_back('/');
        out += s;
    }
    return out;
}

// --- hashing ----------------------------------------------------------------

Digest256 node_digest(const ContractNode& node) {
    return std::visit(
        [](const auto& v) -> Digest256 {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Redacted>) {
                return v.digest;
            } else if constexpr (std::is_same_v<T, Leaf>) {
                Bytes pre{0x00};
                append(pre, v.salt);
                append(pre, v.value);
                return sha256(pre);
            } else {
                Bytes pre{0x01};
                append(pre, v.salt);
                for (const auto& child : v.children) {
                    append_u32_be(pre, static_cast<std::uint32_t>(child.name.size()));
                    append(pre, child.name);
                    append(pre, node_digest(child.node).view());
                }
                return sha256(pre);
            }
        },
        node.body);
}

Digest256 contract_hash(const Contract& c) { return node_digest(c.root); }

Address payment_address(const Contract& c) {
    const Digest256 h = contract_hash(c);
    return derive_address(c.merchant_pubkey, h.view());
}

Scalar payment_secret(const Contract& c, const Scalar& merchant_secret) {
    const Digest256 h = contract_hash(c);
    return derive_private(merchant_secret, h.view());
}

// --- access and editing -----------------------------------------------------

const ContractNode& resolve(const Contract& c, const FieldPath& path) {
    LookupResult r = lookup(c.root, path);
    if (r.state != Lookup::found) no_such_field(path);
    return *r.node;
}

Bytes read_field(const Contract& c, const FieldPath& path) {
    const ContractNode& node = resolve(c, path);
    if (std::holds_alternative<Redacted>(node.body)) no_such_field(path);
    const auto* leaf = std::get_if<Leaf>(&node.body);
    if (!leaf) throw Error("not_a_leaf", "not a leaf: " + path.str());
    if (leaf->encrypted) throw Error("field_encrypted", "field is encrypted: " + path.str());
    return leaf->value;
}

std::uint64_t contract_price(const Contract& c) {
    Bytes raw;
    try {
        raw = read_field(c, FieldPath::parse(price_path));
    } catch (const Error&) {
        throw Error("missing_price", "contract has no readable order/price");
    }
    std::uint64_t value = 0;
    const char* begin = reinterpret_cast<const char*>(raw.data());
    const char* end = begin + raw.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (raw.empty() || ec != std::errc{} || ptr != end) throw Error("missing_price", "order/price is not an integer");
    return value;
}

Contract redact(const Contract& c, const FieldPath& path) {
    Contract out = c;
    ContractNode& node = resolve_mut(out.root, path);
    if (std::holds_alternative<Redacted>(node.body)) throw Error("already_redacted", "already redacted: " + path.str());
    node.body = Redacted{node_digest(node)};
    return out;
}

Contract encrypt_leaf(const Contract& c, const FieldPath& path, const Point& recipient, RandomSource& rng) {
    if (recipient.is_identity()) throw Error("invalid_point", "invalid point");
    Contract out = c;
    ContractNode& node = resolve_mut(out.root, path);
    auto* leaf = std::get_if<Leaf>(&node.body);
    if (!leaf) throw Error("not_a_leaf", "not a leaf: " + path.str());
    if (leaf->encrypted) throw Error("already_encrypted", "already encrypted: " + path.str());

    KeyPair ephemeral = rng.keypair();
    const SymmetricKey key = sha256(recipient.pow(ephemeral.secret).x_bytes()).bytes;
    Bytes box = aead_seal(key, leaf->value, rng);
    const auto eph = ephemeral.pub.encode();
    Bytes value(eph.begin(), eph.end());
    append(value, box);
    leaf->value = std::move(value);
    leaf->encrypted = true;
    return out;
}

Bytes decrypt_leaf(const Contract& c, const FieldPath& path, const Scalar& recipient_secret) {
    const ContractNode& node = resolve(c, path);
    const auto* leaf = std::get_if<Leaf>(&node.body);
    if (!leaf) throw Error("not_a_leaf", "not a leaf: " + path.str());
    if (!leaf->encrypted) throw Error("not_encrypted", "field is not encrypted: " + path.str());
    if (leaf->value.size() < 33) throw Error("authentication_failure", "authentication failure");
    Point ephemeral;
    try {
        ephemeral = Point::decode(ByteView(leaf->value).subspan(0, 33));
    } catch (const Error&) {
        throw Error("authentication_failure", "authentication failure");
    }
    const SymmetricKey key = sha256(ephemeral.pow(recipient_secret).x_bytes()).bytes;
    return aead_open(key, ByteView(leaf->value).subspan(33));
}

// --- signing ----------------------------------------------------------------

Bytes field_signature_message(const FieldPath& path, const Digest256& digest) {
    const std::string text = path.str();
    Bytes msg;
    append_u32_be(msg, static_cast<std::uint32_t>(text.size()));
    append(msg, text);
    append(msg, digest.view());
    return msg;
}

Contract sign_static(const Contract& c, const Scalar& key, const std::vector<FieldPath>& paths) {
    const Point pub = point_from_scalar(key);
    std::map<std::string, Signature>* target = nullptr;
    Contract out = c;
    if (pub == c.merchant_pubkey) {
        target = &out.static_signatures;
    } else if (c.dynamic_signing_key && pub == *c.dynamic_signing_key) {
        target = &out.dynamic_signatures;
    } else {
        throw Error("key_mismatch", "signing key matches neither the merchant key nor the tracking key");
    }
    for (const auto& path : paths) {
        const ContractNode& node = resolve(c, path);
        (*target)[path.str()] = ecdsa_sign(key, field_signature_message(path, node_digest(node)));
    }
    return out;
}

VerificationReport verify_contract(const Contract& c) {
    VerificationReport report;
    if (!std::holds_alternative<Branch>(c.root.body)) {
        report.failures.push_back("root is not a branch");
    }
    if (c.merchant_pubkey.is_identity()) report.failures.push_back("merchant pubkey missing");

    check_identity_leaf(c, merchant_pubkey_path, c.merchant_pubkey.is_identity() ? std::nullopt : std::optional<Point>(c.merchant_pubkey),
                        report);
    check_identity_leaf(c, tracking_key_path, c.dynamic_signing_key, report);

    check_signatures(c, c.static_signatures, c.merchant_pubkey.is_identity() ? std::nullopt : std::optional<Point>(c.merchant_pubkey),
                     false, report);
    check_signatures(c, c.dynamic_signatures, c.dynamic_signing_key, true, report);
    if (c.static_signatures.empty()) report.warnings.push_back("no static signatures");

    walk(c.root, "", report);
    report.ok = report.failures.empty();
    return report;
}

// --- assembly ---------------------------------------------------------------

Contract make_template(const KeyPair& reputation, const FieldList& static_fields, RandomSource& rng,
                       const std::optional<Point>& tracking_key) {
    Contract c;
    c.root = ContractNode{Branch{fresh_salt(rng), {}}};
    c.merchant_pubkey = reputation.pub;
    c.dynamic_signing_key = tracking_key;

    const auto pub = reputation.pub.encode();
    insert_leaf(c.root, FieldPath::parse(merchant_pubkey_path), std::string_view(reinterpret_cast<const char*>(pub.data()), pub.size()),
                rng);
    if (tracking_key) {
        const auto tk = tracking_key->encode();
        insert_leaf(c.root, FieldPath::parse(tracking_key_path), std::string_view(reinterpret_cast<const char*>(tk.data()), tk.size()),
                    rng);
    }
    for (const auto& [path_text, value] : static_fields) {
        FieldPath path = FieldPath::parse(path_text);
        if (path.segments().front() == order_branch) throw Error("path_collision", "static fields may not live under order/");
        insert_leaf(c.root, path, value, rng);
    }

    std::vector<FieldPath> top;
    for (const auto& child : std::get<Branch>(c.root.body).children) top.emplace_back(std::vector<std::string>{child.name});
    return sign_static(c, reputation.secret, top);
}

Contract build_contract(const Contract& form, const FieldList& order_fields, RandomSource& rng) {
    Contract c = form;
    auto* root_branch = std::get_if<Branch>(&c.root.body);
    if (!root_branch) throw Error("bad_contract", "contract form root must be a visible branch");
    auto& root = *root_branch;
    // A fresh root salt unlinks contracts built from the same form.
    root.salt = fresh_salt(rng);
    for (const auto& [rel, value] : order_fields) {
        FieldPath path = FieldPath::parse(std::string(order_branch) + "/" + rel);
        insert_leaf(c.root, path, value, rng);
    }
    return c;
}

std::string render_contract(const Contract& c) {
    std::string out;
    render(c.root, "", out);
    return out;
}

} // namespace p2c
