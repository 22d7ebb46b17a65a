#include <gtest/gtest.h>

#include "openssl_oracle.hpp"
#include "oracle_vectors.hpp"
#include "p2c/ecdsa.hpp"
#include "p2c/hash.hpp"
#include "p2c/random.hpp"

using namespace p2c;

TEST(Ecdsa, DeterministicSignaturesMatchOracle) {
    EXPECT_EQ(ecdsa_sign(Scalar::from_u64(1), to_bytes("Satoshi Nakamoto")).hex(), oracle::sig_1_satoshi);
    EXPECT_EQ(ecdsa_sign(Scalar::from_hex(oracle::k_big), to_bytes("hello")).hex(), oracle::sig_big_hello);
}

TEST(Ecdsa, SignVerifyRoundTrips) {
    SeededRandom rng(21);
    const Scalar half = Scalar::from_hex("7fffffffffffffffffffffffffffffff5d576e7357a4501ddfe92f46681b20a0");
    for (int i = 0; i < 100; ++i) {
        KeyPair k = rng.keypair();
        Bytes msg(1 + i);
        rng.fill(msg);
        Signature sig = ecdsa_sign(k.secret, msg);
        EXPECT_TRUE(ecdsa_verify(k.pub, msg, sig));
        EXPECT_EQ(Signature::from_bytes(sig.to_bytes()), sig);
        // low-s: s <= n/2
        EXPECT_LE(sig.s.to_bytes(), half.to_bytes());
        msg[0] ^= 1;
        EXPECT_FALSE(ecdsa_verify(k.pub, msg, sig));
        msg[0] ^= 1;
        EXPECT_FALSE(ecdsa_verify(rng.keypair().pub, msg, sig));
    }
}

TEST(Ecdsa, AgreesWithOpenSsl) {
    SeededRandom rng(22);
    for (int i = 0; i < 10; ++i) {
        KeyPair k = rng.keypair();
        support::OpenSslKey ref(k.secret);
        ASSERT_EQ(ref.pub_hex(), k.pub.hex());
        Bytes msg = to_bytes("vector " + std::to_string(i));
        EXPECT_TRUE(ref.verify(msg, ecdsa_sign(k.secret, msg)));
        EXPECT_TRUE(ecdsa_verify(k.pub, msg, ref.sign(msg)));
        Bytes other = to_bytes("other " + std::to_string(i));
        EXPECT_FALSE(ref.verify(other, ecdsa_sign(k.secret, msg)));
        EXPECT_FALSE(ecdsa_verify(k.pub, other, ref.sign(msg)));
    }
}

TEST(Ecdsa, RejectsMalformed) {
    EXPECT_THROW(Signature::from_bytes(Bytes(64, 0)), Error);
    EXPECT_THROW(Signature::from_bytes(Bytes(63, 1)), Error);
    Signature zero;
    EXPECT_FALSE(ecdsa_verify(Point::generator(), to_bytes("m"), zero));
    EXPECT_FALSE(ecdsa_verify(Point(), to_bytes("m"), ecdsa_sign(Scalar::from_u64(1), to_bytes("m"))));
}
