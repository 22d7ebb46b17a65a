#include "p2c/hash.hpp"

#include <openssl/hmac.h>
#include <openssl/sha.h>

#include "p2c/error.hpp"

namespace p2c {

Digest256 sha256(ByteView data) {
    Digest256 out;
    SHA256(data.data(), data.size(), out.bytes.data());
    return out;
}

Digest160 hash160(ByteView data) {
    return ripemd160(sha256(data).view());
}

Digest256 hmac_sha256(ByteView key, ByteView data) {
    Digest256 out;
    unsigned int len = 0;
    if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), out.bytes.data(), &len) == nullptr ||
        len != out.bytes.size()) {
        throw Error("crypto_failure", "HMAC-SHA256 failed");
    }
    return out;
}

} // namespace p2c
