#include "cubicrand/dyadic.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace cubicrand {

std::string dyadic::to_string() const {
    return man.get_str() + "*2^" + std::to_string(exp);
}

double dyadic::approx() const {
    if (is_zero()) return 0.0;
    // Split off the exponent so huge values degrade to +-inf instead of UB.
    long nb = bit_length(man);
    long drop = nb > 64 ? nb - 64 : 0;
    double m = fdiv_2exp(man, drop).get_d();
    long e = exp + drop;
    if (e > 100000) e = 100000;
    if (e < -100000) e = -100000;
    return std::ldexp(m, static_cast<int>(e));
}

int cmp(const dyadic& a, const dyadic& b) {
    int sa = a.sgn(), sb = b.sgn();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // Same nonzero sign: magnitudes are separated unless the magnitude
    // exponents coincide, in which case the aligned difference is small.
    long ha = a.mag_exp(), hb = b.mag_exp();
    if (ha != hb) return (ha < hb ? -1 : 1) * sa;
    long e = std::min(a.exp, b.exp);
    bigint d = mul_2exp(a.man, static_cast<unsigned long>(a.exp - e)) -
               mul_2exp(b.man, static_cast<unsigned long>(b.exp - e));
    return sign(d);
}

static dyadic round_dir(const dyadic& a, long bits, bool up) {
    long nb = bit_length(a.man);
    if (nb <= bits) return a;
    unsigned long drop = static_cast<unsigned long>(nb - bits);
    bigint m = up ? cdiv_2exp(a.man, drop) : fdiv_2exp(a.man, drop);
    return dyadic(std::move(m), a.exp + static_cast<long>(drop));
}

dyadic round_down(const dyadic& a, long bits) { return round_dir(a, bits, false); }
dyadic round_up(const dyadic& a, long bits) { return round_dir(a, bits, true); }

bigint floor_int(const dyadic& a) {
    if (a.exp >= 0) return mul_2exp(a.man, static_cast<unsigned long>(a.exp));
    return fdiv_2exp(a.man, static_cast<unsigned long>(-a.exp));
}

bigint ceil_int(const dyadic& a) {
    if (a.exp >= 0) return mul_2exp(a.man, static_cast<unsigned long>(a.exp));
    return cdiv_2exp(a.man, static_cast<unsigned long>(-a.exp));
}

// ---- directed scalar ops ----------------------------------------------------

// a + b rounded down/up to `bits` mantissa bits.  When the magnitudes are so
// far apart that the small operand is below the rounding granularity of the
// large one, we avoid the (possibly gigantic) aligning shift: round the large
// operand, re-express it exactly on the grid 2^(ha-bits-5), and nudge one
// grid unit, which covers the absorbed operand (|small| < 2^(hb+1) and
// hb+1 <= ha-bits-5) at a relative cost of 2^(-bits-5).
static dyadic add_dir(const dyadic& a, const dyadic& b, long bits, bool up) {
    if (a.is_zero()) return round_dir(b, bits, up);
    if (b.is_zero()) return round_dir(a, bits, up);
    long ha = a.mag_exp(), hb = b.mag_exp();
    const dyadic* big = &a;
    const dyadic* small = &b;
    if (ha < hb) { std::swap(big, small); std::swap(ha, hb); }
    if (hb <= ha - (bits + 6)) {
        dyadic r = round_dir(*big, bits, up);
        long grid = ha - (bits + 5);
        // Rounding keeps the top bit at ha and at most `bits` mantissa bits,
        // so r.exp > grid always and the alignment below is a small shift.
        r.man = mul_2exp(r.man, static_cast<unsigned long>(r.exp - grid));
        r.exp = grid;
        if (up && small->sgn() > 0) r.man += 1;
        if (!up && small->sgn() < 0) r.man -= 1;
        return round_dir(r, bits, up);
    }
    long e = std::min(a.exp, b.exp);
    bigint m = mul_2exp(a.man, static_cast<unsigned long>(a.exp - e)) +
               mul_2exp(b.man, static_cast<unsigned long>(b.exp - e));
    return round_dir(dyadic(std::move(m), e), bits, up);
}

static dyadic sub_dir(const dyadic& a, const dyadic& b, long bits, bool up) {
    return add_dir(a, dyadic(-b.man, b.exp), bits, up);
}

static dyadic mul_exact(const dyadic& a, const dyadic& b) {
    return dyadic(a.man * b.man, a.exp + b.exp);
}

// n / d rounded down/up to `bits` mantissa bits; d nonzero.
static dyadic div_dir(const dyadic& n, const dyadic& d, long bits, bool up) {
    assert(!d.is_zero());
    if (n.is_zero()) return dyadic(bigint(0), 0);
    long sh = bit_length(d.man) - bit_length(n.man) + bits + 2;
    if (sh < 0) sh = 0;
    bigint scaled = mul_2exp(n.man, static_cast<unsigned long>(sh));
    // fdiv/cdiv round the quotient toward -inf/+inf regardless of signs.
    bigint q = up ? cdiv(scaled, d.man) : fdiv(scaled, d.man);
    return round_dir(dyadic(std::move(q), n.exp - d.exp - sh), bits, up);
}

// k-th root of a >= 0, rounded down/up to `bits` mantissa bits.
static dyadic root_dir(const dyadic& a, unsigned long k, long bits, bool up) {
    assert(a.sgn() >= 0);
    if (a.is_zero()) return dyadic(bigint(0), 0);
    long target = static_cast<long>(k) * (bits + 2);
    long sh = target - bit_length(a.man);
    if (sh < 0) sh = 0;
    // Make the leftover exponent divisible by k so the result grid is dyadic.
    long rem = (a.exp - sh) % static_cast<long>(k);
    if (rem != 0) sh += (rem + static_cast<long>(k)) % static_cast<long>(k);
    bigint scaled = mul_2exp(a.man, static_cast<unsigned long>(sh));
    bool exact = false;
    bigint r = root_floor(scaled, k, &exact);
    if (up && !exact) r += 1;
    return round_dir(dyadic(std::move(r), (a.exp - sh) / static_cast<long>(k)), bits, up);
}

// ---- intervals --------------------------------------------------------------

dyadic_interval::dyadic_interval(dyadic l, dyadic h) : lo(std::move(l)), hi(std::move(h)) {
    assert(cmp(lo, hi) <= 0);
}

dyadic_interval dyadic_interval::exact(bigint v) {
    dyadic d = dyadic::from_int(std::move(v));
    return dyadic_interval(d, d);
}

dyadic_interval dyadic_interval::exact(dyadic v) {
    dyadic_interval r;
    r.lo = v;
    r.hi = std::move(v);
    return r;
}

dyadic_interval dyadic_interval::from_ratio(const bigint& num, const bigint& den, long p) {
    long bits = p + iv_guard_bits;
    dyadic n = dyadic::from_int(num), d = dyadic::from_int(den);
    return dyadic_interval(div_dir(n, d, bits, false), div_dir(n, d, bits, true));
}

dyadic dyadic_interval::width() const {
    if (lo.is_zero()) return hi;
    long e = std::min(lo.exp, hi.exp);
    bigint m = mul_2exp(hi.man, static_cast<unsigned long>(hi.exp - e)) -
               mul_2exp(lo.man, static_cast<unsigned long>(lo.exp - e));
    return dyadic(std::move(m), e);
}

std::string dyadic_interval::to_string() const {
    return "[" + lo.to_string() + ", " + hi.to_string() + "]";
}

dyadic_interval iv_add(const dyadic_interval& x, const dyadic_interval& y, long p) {
    long bits = p + iv_guard_bits;
    return dyadic_interval(add_dir(x.lo, y.lo, bits, false), add_dir(x.hi, y.hi, bits, true));
}

dyadic_interval iv_sub(const dyadic_interval& x, const dyadic_interval& y, long p) {
    long bits = p + iv_guard_bits;
    return dyadic_interval(sub_dir(x.lo, y.hi, bits, false), sub_dir(x.hi, y.lo, bits, true));
}

dyadic_interval iv_mul(const dyadic_interval& x, const dyadic_interval& y, long p) {
    long bits = p + iv_guard_bits;
    dyadic c[4] = {mul_exact(x.lo, y.lo), mul_exact(x.lo, y.hi),
                   mul_exact(x.hi, y.lo), mul_exact(x.hi, y.hi)};
    int imin = 0, imax = 0;
    for (int i = 1; i < 4; ++i) {
        if (cmp(c[i], c[imin]) < 0) imin = i;
        if (cmp(c[i], c[imax]) > 0) imax = i;
    }
    return dyadic_interval(round_dir(c[imin], bits, false), round_dir(c[imax], bits, true));
}

dyadic_interval iv_square(const dyadic_interval& x, long p) {
    long bits = p + iv_guard_bits;
    dyadic a = mul_exact(x.lo, x.lo), b = mul_exact(x.hi, x.hi);
    if (cmp(a, b) > 0) std::swap(a, b);
    if (x.lo.sgn() < 0 && x.hi.sgn() > 0) a = dyadic(bigint(0), 0);
    return dyadic_interval(round_dir(a, bits, false), round_dir(b, bits, true));
}

dyadic_interval iv_neg(const dyadic_interval& x) {
    return dyadic_interval(dyadic(-x.hi.man, x.hi.exp), dyadic(-x.lo.man, x.lo.exp));
}

dyadic_interval iv_div(const dyadic_interval& x, const dyadic_interval& y, long p) {
    if (y.lo.sgn() <= 0 && y.hi.sgn() >= 0) throw divisor_straddles_zero();
    if (y.hi.sgn() < 0) return iv_div(iv_neg(x), iv_neg(y), p);
    long bits = p + iv_guard_bits;
    // y > 0: smallest quotient comes from x.lo (over y.hi if x.lo >= 0, else
    // over y.lo), largest from x.hi symmetrically.
    const dyadic& dl = x.lo.sgn() >= 0 ? y.hi : y.lo;
    const dyadic& dh = x.hi.sgn() >= 0 ? y.lo : y.hi;
    return dyadic_interval(div_dir(x.lo, dl, bits, false), div_dir(x.hi, dh, bits, true));
}

dyadic_interval iv_root(const dyadic_interval& x, unsigned long k, long p) {
    assert(k >= 1);
    long bits = p + iv_guard_bits;
    if (k == 1)
        return dyadic_interval(round_dir(x.lo, bits, false), round_dir(x.hi, bits, true));
    if (k % 2 == 0) {
        if (x.hi.sgn() < 0) throw negative_even_root();
        dyadic lo = x.lo.sgn() <= 0 ? dyadic(bigint(0), 0) : root_dir(x.lo, k, bits, false);
        return dyadic_interval(std::move(lo), root_dir(x.hi, k, bits, true));
    }
    // Odd k extends to negatives by root(-v) = -root(v).
    auto signed_root = [&](const dyadic& v, bool up) {
        if (v.sgn() >= 0) return root_dir(v, k, bits, up);
        dyadic r = root_dir(dyadic(-v.man, v.exp), k, bits, !up);
        return dyadic(-r.man, r.exp);
    };
    return dyadic_interval(signed_root(x.lo, false), signed_root(x.hi, true));
}

dyadic_interval iv_scale2(const dyadic_interval& x, long k) {
    return dyadic_interval(dyadic(x.lo.man, x.lo.exp + k), dyadic(x.hi.man, x.hi.exp + k));
}

dyadic_interval iv_mul_int(const dyadic_interval& x, const bigint& n) {
    dyadic a(x.lo.man * n, x.lo.exp), b(x.hi.man * n, x.hi.exp);
    if (sign(n) < 0) std::swap(a, b);
    if (sign(n) == 0) return dyadic_interval::exact(bigint(0));
    return dyadic_interval(std::move(a), std::move(b));
}

dyadic_interval iv_scale_rational(const dyadic_interval& x, const rational& q, long p) {
    dyadic_interval y = iv_mul_int(x, q.get_num());
    const bigint& den = q.get_den();  // canonical: den > 0
    if (den == 1) return y;
    if (mpz_popcount(den.get_mpz_t()) == 1) {
        long j = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
        return iv_scale2(y, -j);
    }
    long bits = p + iv_guard_bits;
    dyadic d = dyadic::from_int(den);
    return dyadic_interval(div_dir(y.lo, d, bits, false), div_dir(y.hi, d, bits, true));
}

trilean iv_less(const dyadic_interval& x, const dyadic_interval& y) {
    if (cmp(x.hi, y.lo) < 0) return trilean::yes;
    if (cmp(y.hi, x.lo) <= 0) return trilean::no;
    return trilean::unknown;
}

std::optional<bigint> floor_partial(const dyadic_interval& x) {
    bigint f = floor_int(x.lo);
    if (f == floor_int(x.hi)) return f;
    return std::nullopt;
}

std::optional<bigint> ceil_partial(const dyadic_interval& x) {
    bigint c = ceil_int(x.lo);
    if (c == ceil_int(x.hi)) return c;
    return std::nullopt;
}

int cmp_rational(const dyadic& d, const rational& v) {
    // man*2^e vs num/den (den > 0): compare man*2^e*den with num.
    bigint lhs = d.man * v.get_den();
    bigint rhs = v.get_num();
    if (d.exp >= 0) lhs = mul_2exp(lhs, static_cast<unsigned long>(d.exp));
    else rhs = mul_2exp(rhs, static_cast<unsigned long>(-d.exp));
    return sign(bigint(lhs - rhs));
}

bool iv_contains(const dyadic_interval& x, const rational& v) {
    return cmp_rational(x.lo, v) <= 0 && cmp_rational(x.hi, v) >= 0;
}

} // namespace cubicrand
