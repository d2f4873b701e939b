#include "cubicrand/cubic_form.hpp"

#include <cassert>
#include <cstdint>
#include <deque>
#include <set>
#include <unordered_set>

#include "cubicrand/sturm.hpp"

namespace cubicrand {

std::string cubic_form::to_string() const {
    return "(" + to_decimal(a) + ", " + to_decimal(b) + ", " + to_decimal(c) + ", " +
           to_decimal(d) + ")";
}

int cmp_lex(const cubic_form& f, const cubic_form& g) {
    int s;
    if ((s = sign(bigint(f.a - g.a)))) return s;
    if ((s = sign(bigint(f.b - g.b)))) return s;
    if ((s = sign(bigint(f.c - g.c)))) return s;
    return sign(bigint(f.d - g.d));
}

bigint discriminant(const cubic_form& f) {
    const bigint &a = f.a, &b = f.b, &c = f.c, &d = f.d;
    return 18 * a * b * c * d + b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d -
           27 * a * a * d * d;
}

cubic_form apply_matrix(const gl2_matrix& m, const cubic_form& f) {
    bigint det = m.det();
    if (det != 1 && det != -1) throw non_unimodular();
    // (M f)(v) = f(M^T v) / det; det = +-1 so the division is a sign.
    auto r = substitute_linear<bigint>(f.a, f.b, f.c, f.d, m.m00, m.m01, m.m10, m.m11);
    if (det < 0)
        for (bigint& x : r) x = -x;
    return cubic_form{std::move(r[0]), std::move(r[1]), std::move(r[2]), std::move(r[3])};
}

int signature_class(const cubic_form& f) {
    int s = sign(discriminant(f));
    if (s == 0) throw zero_discriminant();
    return s > 0 ? 3 : 1;
}

bool is_irreducible(const cubic_form& f) {
    if (sign(f.a) == 0) return false;  // Y divides f
    if (sign(f.d) == 0) return false;  // X divides f
    // Rational roots of f(x, 1) correspond to integer roots of the monic
    // cubic h(m) = m^3 + b m^2 + (ac) m + a^2 d  (m = a x).
    bigint ac = f.a * f.c;
    bigint aad = f.a * f.a * f.d;
    // No root mod p => no integer root.  Cheap screen that settles most cases.
    static const unsigned long primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    for (unsigned long p : primes) {
        unsigned long b0 = mpz_fdiv_ui(f.b.get_mpz_t(), p);
        unsigned long c0 = mpz_fdiv_ui(ac.get_mpz_t(), p);
        unsigned long d0 = mpz_fdiv_ui(aad.get_mpz_t(), p);
        bool root = false;
        for (unsigned long m = 0; m < p && !root; ++m)
            root = ((m * m % p) * m + b0 * m % p * m + c0 * m + d0) % p == 0;
        if (!root) return true;
    }
    int_poly h = {aad, ac, f.b, bigint(1)};
    return !has_integer_root_monic(h);
}

ring_table ring_table_of(const cubic_form& f) {
    ring_table t;
    t.w1w1 = {-f.a * f.c, -f.b, f.a};
    t.w1w2 = {-f.a * f.d, bigint(0), bigint(0)};
    t.w2w2 = {-f.b * f.d, -f.d, f.c};
    return t;
}

std::array<bigint, 3> ring_multiply(const ring_table& t,
                                    const std::array<bigint, 3>& u,
                                    const std::array<bigint, 3>& v) {
    std::array<bigint, 3> r = {u[0] * v[0], u[0] * v[1] + u[1] * v[0],
                               u[0] * v[2] + u[2] * v[0]};
    bigint c11 = u[1] * v[1], c12 = u[1] * v[2] + u[2] * v[1], c22 = u[2] * v[2];
    for (int i = 0; i < 3; ++i)
        r[i] += c11 * t.w1w1[i] + c12 * t.w1w2[i] + c22 * t.w2w2[i];
    return r;
}

std::array<bigint, 3> hessian(const cubic_form& f) {
    return {f.b * f.b - 3 * f.a * f.c, f.b * f.c - 9 * f.a * f.d,
            f.c * f.c - 3 * f.b * f.d};
}

bigint q_value(const cubic_form& f) {
    return 5 * f.a * f.a + f.b * f.b + f.c * f.c + 5 * f.d * f.d + 2 * f.a * f.c +
           2 * f.b * f.d;
}

int stab_order(const cubic_form& f) {
    bigint disc = discriminant(f);
    if (sign(disc) == 0) throw zero_discriminant();
    if (!is_irreducible(f)) throw reducible_input();
    if (sign(disc) < 0) return 1;  // complex cubic field: no nontrivial units fix f

    // disc > 0: the stabilizer embeds in the automorphs of the (positive
    // definite) Hessian.  Gauss-reduce the Hessian, transporting f by the same
    // matrices; automorphs of a reduced form have entries in {-1, 0, 1}, so a
    // small window scan over the transported form is exhaustive.
    auto h = hessian(f);
    bigint P = h[0], Q = h[1], R = h[2];
    assert(sign(P) > 0);
    cubic_form g = f;
    for (;;) {
        bigint k = fdiv(P - Q, 2 * P);  // Q + 2kP in (-P, P]
        if (sign(k) != 0) {
            bigint Qn = Q + 2 * k * P;
            R += (Q + k * P) * k;
            Q = Qn;
            g = apply_matrix(gl2_matrix{bigint(1), bigint(0), k, bigint(1)}, g);
        }
        if (R < P) {
            // (P, Q, R) -> (R, -Q, P) via [[0,-1],[1,0]]
            std::swap(P, R);
            Q = -Q;
            g = apply_matrix(gl2_matrix{bigint(0), bigint(-1), bigint(1), bigint(0)}, g);
        } else {
            break;
        }
    }

    int count = 0;
    for (int a0 = -2; a0 <= 2; ++a0)
        for (int b0 = -2; b0 <= 2; ++b0)
            for (int c0 = -2; c0 <= 2; ++c0)
                for (int d0 = -2; d0 <= 2; ++d0) {
                    int det = a0 * d0 - b0 * c0;
                    if (det != 1 && det != -1) continue;
                    gl2_matrix m{bigint(a0), bigint(b0), bigint(c0), bigint(d0)};
                    if (apply_matrix(m, g) == g) ++count;
                }
    assert(count == 1 || count == 3);
    return count;
}

// ---- canonical orbit representative ----------------------------------------

namespace {

// The six generator moves (shears, swap, reflection); linear in coefficients.
template <class I>
void neighbor(int which, const I f[4], I out[4]) {
    const I &a = f[0], &b = f[1], &c = f[2], &d = f[3];
    switch (which) {
        case 0:  // upper shear  [[1,1],[0,1]]
            out[0] = a + b + c + d; out[1] = b + 2 * c + 3 * d; out[2] = c + 3 * d; out[3] = d;
            break;
        case 1:  // its inverse  [[1,-1],[0,1]]
            out[0] = a - b + c - d; out[1] = b - 2 * c + 3 * d; out[2] = c - 3 * d; out[3] = d;
            break;
        case 2:  // lower shear  [[1,0],[1,1]]
            out[0] = a; out[1] = 3 * a + b; out[2] = 3 * a + 2 * b + c; out[3] = a + b + c + d;
            break;
        case 3:  // its inverse  [[1,0],[-1,1]]
            out[0] = a; out[1] = b - 3 * a; out[2] = 3 * a - 2 * b + c; out[3] = d - a + b - c;
            break;
        case 4:  // swap (self-inverse up to sign)  [[0,1],[1,0]]
            out[0] = -d; out[1] = -c; out[2] = -b; out[3] = -a;
            break;
        default:  // reflection  [[-1,0],[0,1]]
            out[0] = a; out[1] = -b; out[2] = c; out[3] = -d;
            break;
    }
}

using i64 = std::int64_t;
using i128 = __int128;

i128 q_of(const i64 f[4]) {
    i128 a = f[0], b = f[1], c = f[2], d = f[3];
    return 5 * a * a + b * b + c * c + 5 * d * d + 2 * a * c + 2 * b * d;
}

struct key64 {
    std::uint64_t w0, w1;
    bool operator==(const key64& o) const { return w0 == o.w0 && w1 == o.w1; }
};
struct key64_hash {
    std::size_t operator()(const key64& k) const {
        std::uint64_t z = k.w0 * 0x9E3779B97F4A7C15ULL ^ k.w1;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        return static_cast<std::size_t>(z ^ (z >> 31));
    }
};

key64 pack(const i64 f[4]) {
    auto u = [](i64 v) { return static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)); };
    return key64{u(f[0]) << 32 | u(f[1]), u(f[2]) << 32 | u(f[3])};
}

bool lex_less(const i64 f[4], const i64 g[4]) {
    for (int i = 0; i < 4; ++i)
        if (f[i] != g[i]) return f[i] < g[i];
    return false;
}

cubic_form canonicalize_i64(const i64 start[4]) {
    i128 qmin = q_of(start);
    i64 best[4] = {start[0], start[1], start[2], start[3]};
    std::unordered_set<key64, key64_hash> seen;
    std::deque<std::array<i64, 4>> queue;
    seen.insert(pack(start));
    queue.push_back({start[0], start[1], start[2], start[3]});
    while (!queue.empty()) {
        std::array<i64, 4> f = queue.front();
        queue.pop_front();
        for (int w = 0; w < 6; ++w) {
            i64 n[4];
            neighbor(w, f.data(), n);
            if (seen.count(pack(n))) continue;
            i128 qn = q_of(n);
            if (qn > 64 * qmin) continue;
            seen.insert(pack(n));
            if (qn < qmin || (qn == qmin && lex_less(n, best))) {
                if (qn < qmin) qmin = qn;
                best[0] = n[0]; best[1] = n[1]; best[2] = n[2]; best[3] = n[3];
            }
            queue.push_back({n[0], n[1], n[2], n[3]});
        }
    }
    return cubic_form{bigint(static_cast<long>(best[0])), bigint(static_cast<long>(best[1])),
                      bigint(static_cast<long>(best[2])), bigint(static_cast<long>(best[3]))};
}

struct bigform_less {
    bool operator()(const std::array<bigint, 4>& f, const std::array<bigint, 4>& g) const {
        for (int i = 0; i < 4; ++i)
            if (f[i] != g[i]) return f[i] < g[i];
        return false;
    }
};

cubic_form canonicalize_big(const cubic_form& start) {
    std::array<bigint, 4> s = {start.a, start.b, start.c, start.d};
    bigint qmin = q_value(start);
    std::array<bigint, 4> best = s;
    std::set<std::array<bigint, 4>, bigform_less> seen;
    std::deque<std::array<bigint, 4>> queue;
    seen.insert(s);
    queue.push_back(s);
    while (!queue.empty()) {
        std::array<bigint, 4> f = queue.front();
        queue.pop_front();
        for (int w = 0; w < 6; ++w) {
            std::array<bigint, 4> n;
            neighbor(w, f.data(), n.data());
            if (seen.count(n)) continue;
            bigint qn = q_value(cubic_form{n[0], n[1], n[2], n[3]});
            if (qn > 64 * qmin) continue;
            seen.insert(n);
            bool better = qn < qmin;
            bool tie = !better && qn == qmin &&
                       bigform_less{}(n, best);
            if (better || tie) {
                qmin = std::move(qn);
                best = n;
            }
            queue.push_back(std::move(n));
        }
    }
    return cubic_form{best[0], best[1], best[2], best[3]};
}

} // namespace

cubic_form canonicalize(const cubic_form& f) {
    if (sign(discriminant(f)) == 0) throw zero_discriminant();
    const bigint limit(1 << 20);
    if (abs(f.a) <= limit && abs(f.b) <= limit && abs(f.c) <= limit && abs(f.d) <= limit) {
        i64 s[4] = {to_int64(f.a), to_int64(f.b), to_int64(f.c), to_int64(f.d)};
        return canonicalize_i64(s);
    }
    return canonicalize_big(f);
}

} // namespace cubicrand
