#include <gtest/gtest.h>

#include "oracle_vectors.hpp"
#include "p2c/curve.hpp"
#include "p2c/error.hpp"
#include "p2c/random.hpp"

using namespace p2c;

namespace {

const char* const n_hex = "fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141";

std::string error_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

} // namespace

TEST(Scalar, RangeChecks) {
    EXPECT_EQ(error_code([] { Scalar::from_hex(n_hex); }), "scalar_out_of_range");
    EXPECT_TRUE(Scalar::reduce_bytes(from_hex(n_hex)).is_zero());
    EXPECT_EQ(Scalar::from_hex("0000000000000000000000000000000000000000000000000000000000000005"), Scalar::from_u64(5));
    EXPECT_EQ(error_code([] { Scalar().inverse(); }), "zero_inverse");
}

TEST(Scalar, FieldLaws) {
    SeededRandom rng(11);
    for (int i = 0; i < 200; ++i) {
        Scalar a = rng.nonzero_scalar(), b = rng.nonzero_scalar(), c = rng.nonzero_scalar();
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a - b) + b, a);
        EXPECT_TRUE((a + (-a)).is_zero());
        EXPECT_EQ(a * a.inverse(), Scalar::from_u64(1));
    }
}

TEST(Scalar, HashToScalarMatchesOracle) {
    EXPECT_EQ(hash_to_scalar(std::string_view("")).hex(), oracle::hs_empty);
    EXPECT_EQ(hash_to_scalar(std::string_view("savings1")).hex(), oracle::hs_savings1);
}

TEST(Point, GeneratorMultiplesMatchOracle) {
    EXPECT_EQ(Point::generator().hex(), "0279be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798");
    EXPECT_EQ(point_from_scalar(Scalar::from_u64(2)).hex(), oracle::g2);
    EXPECT_EQ(point_from_scalar(Scalar::from_u64(3)).hex(), oracle::g3);
    EXPECT_EQ(point_from_scalar(Scalar::from_u64(0xdeadbeef)).hex(), oracle::g_deadbeef);
    EXPECT_EQ(point_from_scalar(Scalar::from_hex(oracle::k_big)).hex(), oracle::g_big);
    Scalar n_minus_1 = -Scalar::from_u64(1);
    EXPECT_EQ(point_from_scalar(n_minus_1).hex(), oracle::g_nminus1);
    EXPECT_TRUE((point_from_scalar(n_minus_1) * Point::generator()).is_identity());
}

TEST(Point, FixedAndVariableBaseAgree) {
    SeededRandom rng(12);
    for (int i = 0; i < 100; ++i) {
        Scalar k = rng.nonzero_scalar();
        EXPECT_EQ(point_from_scalar(k), Point::generator().pow(k));
    }
}

TEST(Point, GroupLaws) {
    SeededRandom rng(13);
    const Point id;
    for (int i = 0; i < 100; ++i) {
        Scalar a = rng.nonzero_scalar(), b = rng.nonzero_scalar();
        Point A = point_from_scalar(a), B = point_from_scalar(b), C = rng.keypair().pub;
        EXPECT_EQ(A * B, B * A);
        EXPECT_EQ((A * B) * C, A * (B * C));
        EXPECT_EQ(A * id, A);
        EXPECT_TRUE((A * A.inverse()).is_identity());
        EXPECT_EQ(A * B, point_from_scalar(a + b));
        EXPECT_EQ(A.pow(b), B.pow(a));
        EXPECT_EQ(A * A, A.pow(Scalar::from_u64(2)));
    }
    EXPECT_TRUE(Point::generator().pow(Scalar()).is_identity());
}

TEST(Point, CodecRoundTrip) {
    SeededRandom rng(14);
    for (int i = 0; i < 1000; ++i) {
        Point p = rng.keypair().pub;
        auto enc = p.encode();
        EXPECT_EQ(Point::decode(enc), p);
        EXPECT_EQ(Point::from_affine(p.x_bytes(), p.y_bytes()), p);
    }
}

TEST(Point, RejectsInvalidEncodings) {
    EXPECT_EQ(error_code([] { Point().encode(); }), "identity_not_encodable");
    // x = 5 has no square root of x^3 + 7 modulo p.
    EXPECT_EQ(error_code([] { Point::from_hex("020000000000000000000000000000000000000000000000000000000000000005"); }), "invalid_point");
    EXPECT_EQ(error_code([] { Point::from_hex("0479be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798"); }), "invalid_point");
    EXPECT_EQ(error_code([] { Point::from_hex("02ffff"); }), "invalid_point");
    EXPECT_EQ(error_code([] { Point::from_hex("02fffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc30"); }), "invalid_point");
    auto g = Point::generator();
    auto y = g.y_bytes();
    y[31] ^= 1;
    EXPECT_EQ(error_code([&] { Point::from_affine(g.x_bytes(), y); }), "invalid_point");
}

TEST(KeyPair, RejectsZero) {
    EXPECT_EQ(error_code([] { KeyPair::from_secret(Scalar()); }), "zero_private_key");
    EXPECT_EQ(KeyPair::from_secret(Scalar::from_u64(1)).pub, Point::generator());
}
