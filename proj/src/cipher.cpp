#include "p2c/cipher.hpp"

#include <memory>

#include <openssl/evp.h>

#include "p2c/error.hpp"

namespace p2c {

namespace {

constexpr std::size_t nonce_len = 12;
constexpr std::size_t tag_len = 16;

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

CipherCtx make_ctx() {
    CipherCtx ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
    if (!ctx) throw Error("crypto_failure", "EVP_CIPHER_CTX_new failed");
    return ctx;
}

} // namespace

Bytes aead_seal(const SymmetricKey& key, ByteView plaintext, RandomSource& rng) {
    auto nonce = rng.bytes<nonce_len>();
    Bytes out(nonce.begin(), nonce.end());
    out.resize(nonce_len + plaintext.size() + tag_len);

    auto ctx = make_ctx();
    int len = 0;
    bool ok = EVP_EncryptInit_ex(ctx.get(), EVP_chacha20_poly1305(), nullptr, key.data(), nonce.data()) == 1 &&
              EVP_EncryptUpdate(ctx.get(), out.data() + nonce_len, &len, plaintext.data(), static_cast<int>(plaintext.size())) == 1 &&
              EVP_EncryptFinal_ex(ctx.get(), out.data() + nonce_len + len, &len) == 1 &&
              EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_AEAD_GET_TAG, tag_len, out.data() + nonce_len + plaintext.size()) == 1;
    if (!ok) throw Error("crypto_failure", "encryption failed");
    return out;
}

Bytes aead_open(const SymmetricKey& key, ByteView sealed) {
    if (sealed.size() < nonce_len + tag_len) throw Error("authentication_failure", "authentication failure");
    const std::size_t body = sealed.size() - nonce_len - tag_len;
    Bytes out(body);
    Bytes tag(sealed.end() - tag_len, sealed.end());

    auto ctx = make_ctx();
    int len = 0;
    bool ok = EVP_DecryptInit_ex(ctx.get(), EVP_chacha20_poly1305(), nullptr, key.data(), sealed.data()) == 1 &&
              EVP_DecryptUpdate(ctx.get(), out.data(), &len, sealed.data() + nonce_len, static_cast<int>(body)) == 1 &&
              EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_AEAD_SET_TAG, tag_len, tag.data()) == 1 &&
              EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &len) == 1;
    if (!ok) throw Error("authentication_failure", "authentication failure");
    return out;
}

} // namespace p2c
