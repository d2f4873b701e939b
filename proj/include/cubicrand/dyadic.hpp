#ifndef CUBICRAND_DYADIC_HPP
#define CUBICRAND_DYADIC_HPP

#include <optional>
#include <string>
#include <utility>

#include "cubicrand/bigint.hpp"
#include "cubicrand/errors.hpp"

namespace cubicrand {

// Three-valued answer for comparisons of partial (interval) values.  `yes` and
// `no` are definite; `unknown` means "refine and ask again".
enum class trilean : unsigned char { no = 0, yes = 1, unknown = 2 };

// A dyadic rational man * 2^exp.  Not kept in a canonical form (trailing zero
// bits in man are allowed); all operations compare by value.
struct dyadic {
    bigint man;
    long exp = 0;

    dyadic() = default;
    dyadic(bigint m, long e) : man(std::move(m)), exp(e) {}
    static dyadic from_int(bigint v) { return dyadic(std::move(v), 0); }

    bool is_zero() const { return sign(man) == 0; }
    int sgn() const { return sign(man); }
    // Exponent h with 2^(h-1) <= |value| < 2^h (undefined for 0).
    long mag_exp() const { return exp + bit_length(man); }

    std::string to_string() const;  // "man*2^exp", for diagnostics
    double approx() const;          // lossy, for diagnostics only
};

// -1, 0, +1 as value comparison a ? b.
int cmp(const dyadic& a, const dyadic& b);

// Keep at most `bits` mantissa bits, rounding the value down resp. up.
dyadic round_down(const dyadic& a, long bits);
dyadic round_up(const dyadic& a, long bits);

bigint floor_int(const dyadic& a);
bigint ceil_int(const dyadic& a);

// A closed interval [lo, hi] with dyadic endpoints, lo <= hi.  The working
// precision p of an operation bounds the result's mantissas to p plus a fixed
// number of guard bits; rounding is always outward, so intervals only ever
// contain the exact result.
struct dyadic_interval {
    dyadic lo, hi;

    dyadic_interval() = default;
    dyadic_interval(dyadic l, dyadic h);

    static dyadic_interval exact(bigint v);
    static dyadic_interval exact(dyadic v);
    // Contains num/den (den != 0), endpoints rounded to p bits.
    static dyadic_interval from_ratio(const bigint& num, const bigint& den, long p);

    bool is_point() const { return cmp(lo, hi) == 0; }
    dyadic width() const;  // hi - lo, exact
    std::string to_string() const;
};

inline constexpr long iv_guard_bits = 8;

dyadic_interval iv_add(const dyadic_interval& x, const dyadic_interval& y, long p);
dyadic_interval iv_sub(const dyadic_interval& x, const dyadic_interval& y, long p);
dyadic_interval iv_mul(const dyadic_interval& x, const dyadic_interval& y, long p);
dyadic_interval iv_square(const dyadic_interval& x, long p);
dyadic_interval iv_neg(const dyadic_interval& x);
// Throws divisor_straddles_zero if 0 could lie in y.
dyadic_interval iv_div(const dyadic_interval& x, const dyadic_interval& y, long p);
// k-th root, k >= 1.  Even k: throws negative_even_root if x is definitely
// negative; if x merely straddles 0 the result is clamped to [0, root(hi)].
dyadic_interval iv_root(const dyadic_interval& x, unsigned long k, long p);

// Exact scalings (no rounding).
dyadic_interval iv_scale2(const dyadic_interval& x, long k);      // * 2^k
dyadic_interval iv_mul_int(const dyadic_interval& x, const bigint& n);
// * num/den rounded to p bits; exact (no rounding) when den is a power of two.
dyadic_interval iv_scale_rational(const dyadic_interval& x, const rational& q, long p);

// Is x < y?  Definite only when the intervals do not overlap.
trilean iv_less(const dyadic_interval& x, const dyadic_interval& y);

// floor/ceil of the represented value, if already determined by the interval.
std::optional<bigint> floor_partial(const dyadic_interval& x);
std::optional<bigint> ceil_partial(const dyadic_interval& x);

// Exact comparison of a dyadic against a rational: -1, 0, +1 as d ? v.
int cmp_rational(const dyadic& d, const rational& v);

// Exact membership test, used by test oracles.
bool iv_contains(const dyadic_interval& x, const rational& v);

} // namespace cubicrand

#endif
