#include "p2c/random.hpp"

#include <openssl/rand.h>

#include "modular.hpp"
#include "p2c/error.hpp"

namespace p2c {

Scalar RandomSource::nonzero_scalar() {
    for (;;) {
        auto raw = bytes<32>();
        detail::U256 v = detail::U256::from_be(raw.data());
        if (!v.is_zero() && detail::compare(v, detail::order_modulus().value()) < 0) return Scalar::from_bytes(raw);
    }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
    if (out.empty()) return;
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) throw Error("rng_failure", "RAND_bytes failed");
}

SeededRandom::SeededRandom(std::uint64_t seed) {
    append(seed_, "p2c-seeded-random");
    append_u64_be(seed_, seed);
}

SeededRandom::SeededRandom(ByteView seed) {
    append(seed_, "p2c-seeded-random");
    append(seed_, seed);
}

void SeededRandom::fill(std::span<std::uint8_t> out) {
    for (auto& b : out) {
        if (used_ == block_.bytes.size()) {
            Bytes input = seed_;
            append_u64_be(input, counter_++);
            block_ = sha256(input);
            used_ = 0;
        }
        b = block_.bytes[used_++];
    }
}

} // namespace p2c
