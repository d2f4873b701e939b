#include "cubicrand/random_stream.hpp"

#include <cassert>

namespace cubicrand {

namespace {

constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer: a well-mixed bijection on 64-bit words.
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Distinct additive constants keep the three uses (seeding, child derivation,
// block generation) in separate input domains of the same mixer.
constexpr std::uint64_t dom_seed = 0x53A1F8C2D4E5B697ULL;
constexpr std::uint64_t dom_child = 0xC1D6A3B8E94F7025ULL;
constexpr std::uint64_t dom_block = 0x8BADF00D5EEDC0DEULL;

} // namespace

random_stream random_stream::from_seed(std::uint64_t seed) {
    return random_stream{mix(seed + dom_seed)};
}

random_stream random_stream::child(std::uint64_t index) const {
    return random_stream{mix(key + golden * (index + 1) + dom_child)};
}

std::uint64_t random_stream::block(std::uint64_t counter) const {
    return mix(key + golden * (counter + 1) + dom_block);
}

void lazy_uniform::reset(random_stream stream) {
    stream_ = stream;
    words_.clear();
}

void lazy_uniform::ensure_digits(long p) {
    std::size_t need = static_cast<std::size_t>((p + 63) / 64);
    while (words_.size() < need)
        words_.push_back(stream_.block(words_.size()));
}

dyadic_interval lazy_uniform::interval(long p) {
    assert(p >= 1);
    ensure_digits(p);
    bigint k;
    if (p <= 64) {
        k = bigint(words_[0] >> (64 - p));
    } else {
        std::size_t nw = static_cast<std::size_t>((p + 63) / 64);
        // Big-endian import of the first nw blocks, then drop the surplus
        // low bits so exactly p digits remain.
        mpz_import(k.get_mpz_t(), nw, 1, sizeof(std::uint64_t), 0, 0, words_.data());
        k = fdiv_2exp(k, static_cast<unsigned long>(64 * nw - p));
    }
    dyadic lo(k, -p);
    dyadic hi(k + 1, -p);
    return dyadic_interval(std::move(lo), std::move(hi));
}

} // namespace cubicrand
