#ifndef CUBICRAND_RANDOM_STREAM_HPP
#define CUBICRAND_RANDOM_STREAM_HPP

#include <cstdint>
#include <vector>

#include "cubicrand/dyadic.hpp"

namespace cubicrand {

// Counter-based pseudorandom bit source.  A stream is just a 64-bit key; the
// j-th block of 64 bits is a pure function of (key, j), so any block can be
// regenerated at any time and streams can be split into statistically
// independent children addressed by index.  Built on the splitmix64 finalizer;
// deterministic across platforms, not cryptographic.
struct random_stream {
    std::uint64_t key = 0;

    static random_stream from_seed(std::uint64_t seed);
    random_stream child(std::uint64_t index) const;
    std::uint64_t block(std::uint64_t counter) const;
};

// A uniform number in (0, 1) revealed one binary digit prefix at a time.
// Digits are drawn lazily from the stream and never change once revealed:
// interval(p) always returns [0.b1..bp, 0.b1..bp + 2^-p], and refining only
// shrinks it.  Conditioned on the first p digits, the value is uniform in that
// interval, which is what makes "retry the comparison at higher precision"
// probabilistically sound.
class lazy_uniform {
public:
    lazy_uniform() = default;
    explicit lazy_uniform(random_stream stream) : stream_(stream) {}

    void reset(random_stream stream);

    // [k*2^-p, (k+1)*2^-p] where k is the integer formed by the first p digits.
    dyadic_interval interval(long p);

    // Digits revealed so far (grows in 64-bit blocks).
    long revealed() const { return 64 * static_cast<long>(words_.size()); }

private:
    random_stream stream_;
    std::vector<std::uint64_t> words_;  // block j holds digits 64j+1 .. 64j+64

    void ensure_digits(long p);
};

} // namespace cubicrand

#endif
