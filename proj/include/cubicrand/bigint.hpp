#ifndef CUBICRAND_BIGINT_HPP
#define CUBICRAND_BIGINT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cubicrand {

// Arbitrary-precision integers / rationals.  GMP's C++ wrappers already give
// value semantics, expression templates and decimal I/O, so we use them as-is.
using bigint = mpz_class;
using rational = mpq_class;

inline int sign(const bigint& x) { return mpz_sgn(x.get_mpz_t()); }

// Bits needed to write |x| in binary; 0 for x = 0.
inline long bit_length(const bigint& x) {
    if (sign(x) == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

inline bigint mul_2exp(const bigint& x, unsigned long k) {
    bigint r;
    mpz_mul_2exp(r.get_mpz_t(), x.get_mpz_t(), k);
    return r;
}

// x / 2^k rounded toward -inf resp. +inf.
inline bigint fdiv_2exp(const bigint& x, unsigned long k) {
    bigint r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), x.get_mpz_t(), k);
    return r;
}
inline bigint cdiv_2exp(const bigint& x, unsigned long k) {
    bigint r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), x.get_mpz_t(), k);
    return r;
}

// floor(n/d) resp. ceil(n/d), d != 0, any signs.
inline bigint fdiv(const bigint& n, const bigint& d) {
    bigint r;
    mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return r;
}
inline bigint cdiv(const bigint& n, const bigint& d) {
    bigint r;
    mpz_cdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return r;
}

// floor of the k-th root of x >= 0 (k >= 1); sets *exact if the root is exact.
inline bigint root_floor(const bigint& x, unsigned long k, bool* exact = nullptr) {
    bigint r;
    int ex = mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
    if (exact) *exact = (ex != 0);
    return r;
}

inline bool fits_int64(const bigint& x) { return mpz_fits_slong_p(x.get_mpz_t()) != 0; }
inline std::int64_t to_int64(const bigint& x) { return static_cast<std::int64_t>(mpz_get_si(x.get_mpz_t())); }

inline std::string to_decimal(const bigint& x) { return x.get_str(10); }

} // namespace cubicrand

#endif
