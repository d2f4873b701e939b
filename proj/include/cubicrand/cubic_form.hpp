#ifndef CUBICRAND_CUBIC_FORM_HPP
#define CUBICRAND_CUBIC_FORM_HPP

#include <array>
#include <compare>
#include <string>

#include "cubicrand/bigint.hpp"
#include "cubicrand/errors.hpp"

namespace cubicrand {

// Integral binary cubic form a X^3 + b X^2 Y + c X Y^2 + d Y^3.
struct cubic_form {
    bigint a, b, c, d;

    bool operator==(const cubic_form& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    std::string to_string() const;
};

// Lexicographic order on (a, b, c, d); used for canonical tie-breaking.
int cmp_lex(const cubic_form& f, const cubic_form& g);

struct gl2_matrix {
    bigint m00, m01, m10, m11;
    bigint det() const { return m00 * m11 - m01 * m10; }
};

// disc f = 18abcd + b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2.
bigint discriminant(const cubic_form& f);

// Coefficients of f(u x + w y, v x + z y) for any commutative ring scalar S;
// no determinant division, so this is the raw substitution step shared by the
// group action and by interval-valued coefficient transforms.
template <class S>
std::array<S, 4> substitute_linear(const S& a, const S& b, const S& c, const S& d,
                                   const S& u, const S& v, const S& w, const S& z) {
    std::array<S, 4> r;
    r[0] = a * u * u * u + b * u * u * v + c * u * v * v + d * v * v * v;
    r[1] = S(3) * a * u * u * w + b * (u * u * z + S(2) * u * v * w) +
           c * (v * v * w + S(2) * u * v * z) + S(3) * d * v * v * z;
    r[2] = S(3) * a * u * w * w + b * (w * w * v + S(2) * u * w * z) +
           c * (z * z * u + S(2) * v * w * z) + S(3) * d * v * z * z;
    r[3] = a * w * w * w + b * w * w * z + c * w * z * z + d * z * z * z;
    return r;
}

// Twisted action (M f)(v) = det(M)^-1 * f(M^T v).  Throws non_unimodular
// unless det M = +-1.  disc is invariant under this action.
cubic_form apply_matrix(const gl2_matrix& m, const cubic_form& f);

// 3 if disc > 0 (totally real resolvent), 1 if disc < 0; throws
// zero_discriminant if disc = 0.
int signature_class(const cubic_form& f);

// Irreducibility over Q.  Exact: reduces to integer roots of the monic cubic
// h(m) = m^3 + b m^2 + ac m + a^2 d (a != 0), with a cheap no-root-mod-p
// prescreen before the exact root isolation.
bool is_irreducible(const cubic_form& f);

// Multiplication table of the cubic ring attached to f, in the basis
// (1, w1, w2).  Each product row lists coefficients over (1, w1, w2):
//   w1 w2 = -ad
//   w1^2 = -ac - b w1 + a w2
//   w2^2 = -bd - d w1 + c w2
struct ring_table {
    std::array<bigint, 3> w1w1, w1w2, w2w2;
};

ring_table ring_table_of(const cubic_form& f);

// Product of u = u0 + u1 w1 + u2 w2 and v likewise, reduced via the table.
std::array<bigint, 3> ring_multiply(const ring_table& t,
                                    const std::array<bigint, 3>& u,
                                    const std::array<bigint, 3>& v);

// Hessian quadratic form (P, Q, R) = (b^2 - 3ac, bc - 9ad, c^2 - 3bd);
// covariant: Hess(M f)(v) = Hess(f)(M^T v), and Q^2 - 4PR = -3 disc f.
std::array<bigint, 3> hessian(const cubic_form& f);

// Order of the stabilizer of f in GL2(Z): 1 or 3 for irreducible f.
// Throws zero_discriminant / reducible_input on bad input.
int stab_order(const cubic_form& f);

// Deterministic orbit representative: bounded search over the orbit pruned by
// the positive definite size q(f) = 5a^2 + b^2 + c^2 + 5d^2 + 2ac + 2bd,
// returning the lexicographically smallest tuple among minimal-q forms seen.
// Throws zero_discriminant if disc = 0.
cubic_form canonicalize(const cubic_form& f);

bigint q_value(const cubic_form& f);

} // namespace cubicrand

#endif
