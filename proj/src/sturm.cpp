#include "cubicrand/sturm.hpp"

#include <cassert>
#include <utility>

namespace cubicrand {

namespace {

void strip(int_poly& p) {
    while (!p.empty() && sign(p.back()) == 0) p.pop_back();
}

long deg(const int_poly& p) { return static_cast<long>(p.size()) - 1; }

// Divide out the (positive) content; sign-preserving everywhere.
void make_primitive(int_poly& p) {
    bigint g = 0;
    for (const bigint& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0 || g == 1) return;
    for (bigint& c : p) c /= g;
}

int_poly derivative(const int_poly& p) {
    int_poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(bigint(i) * p[i]);
    return d;
}

// Pseudo-remainder of a by b where every reduction step multiplies the value
// by lc(b)^2 > 0, so the remainder has the same sign as the true remainder
// everywhere.
int_poly prem_pos(int_poly a, const int_poly& b) {
    const bigint& lb = b.back();
    bigint lb2 = lb * lb;
    while (!a.empty() && deg(a) >= deg(b)) {
        long sh = deg(a) - deg(b);
        bigint la = a.back();
        for (bigint& c : a) c *= lb2;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + sh] -= lb * la * b[i];
        strip(a);
    }
    return a;
}

int sign_at_inf(const int_poly& p, int dir) {
    int s = sign(p.back());
    if (dir < 0 && deg(p) % 2 == 1) s = -s;
    return s;
}

// Sign of p(num / 2^k2) (times the positive factor 2^(k2*deg)).
int sign_at(const int_poly& p, const bigint& num, long k2) {
    long d = deg(p);
    bigint acc = p[d];
    for (long i = d - 1; i >= 0; --i)
        acc = acc * num + mul_2exp(p[i], static_cast<unsigned long>(k2 * (d - i)));
    return sign(acc);
}

long count_variations(const std::vector<int>& signs) {
    long v = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

} // namespace

bigint poly_eval(const int_poly& p, const bigint& x) {
    bigint acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<int_poly> sturm_chain(const int_poly& p_in) {
    int_poly p = p_in;
    strip(p);
    assert(!p.empty());
    std::vector<int_poly> chain;
    make_primitive(p);
    chain.push_back(p);
    if (deg(p) == 0) return chain;
    int_poly q = derivative(p);
    make_primitive(q);
    chain.push_back(q);
    while (deg(chain.back()) > 0) {
        int_poly r = prem_pos(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (bigint& c : r) c = -c;
        make_primitive(r);
        chain.push_back(std::move(r));
    }
    return chain;
}

long sturm_variations(const std::vector<int_poly>& chain, const bigint& num, long k2) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const int_poly& p : chain) signs.push_back(sign_at(p, num, k2));
    return count_variations(signs);
}

long sturm_variations_inf(const std::vector<int_poly>& chain, int dir) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const int_poly& p : chain) signs.push_back(sign_at_inf(p, dir));
    return count_variations(signs);
}

long count_real_roots(const int_poly& p_in) {
    int_poly p = p_in;
    strip(p);
    assert(!p.empty());
    if (deg(p) == 0) return 0;
    auto chain = sturm_chain(p);
    return sturm_variations_inf(chain, -1) - sturm_variations_inf(chain, +1);
}

bool has_integer_root_monic(const int_poly& p_in) {
    int_poly p = p_in;
    strip(p);
    assert(!p.empty() && p.back() == 1);
    if (deg(p) == 0) return false;

    // All real roots lie in (-B, B) with B = 1 + max |c_i|; start from the
    // half-integers +-(2B+1)/2 so no endpoint or later midpoint can be a root
    // we have not explicitly tested (monic => rational roots are integers).
    bigint B = 1;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (abs(p[i]) + 1 > B) B = abs(p[i]) + 1;
    auto chain = sturm_chain(p);

    struct seg {
        bigint lo, hi;  // endpoints lo/2^k, hi/2^k
        long k;
        long vlo, vhi;
    };
    bigint h = 2 * B + 1;
    std::vector<seg> stack;
    stack.push_back(seg{-h, h, 1, sturm_variations(chain, -h, 1), sturm_variations(chain, h, 1)});

    while (!stack.empty()) {
        seg s = std::move(stack.back());
        stack.pop_back();
        if (s.vlo - s.vhi <= 0) continue;
        if (s.hi - s.lo <= mul_2exp(bigint(1), static_cast<unsigned long>(s.k - 1))) {
            // Interval shorter than 1/2: at most one integer m in (lo, hi].
            bigint m = fdiv_2exp(s.hi, static_cast<unsigned long>(s.k));
            if (mul_2exp(m, static_cast<unsigned long>(s.k)) > s.lo && poly_eval(p, m) == 0)
                return true;
            continue;
        }
        bigint mid = s.lo + s.hi;  // over 2^(k+1)
        long k1 = s.k + 1;
        if (mpz_scan1(mid.get_mpz_t(), 0) >= static_cast<unsigned long>(k1) || mid == 0) {
            bigint m = fdiv_2exp(mid, static_cast<unsigned long>(k1));
            if (poly_eval(p, m) == 0) return true;
        }
        long vmid = sturm_variations(chain, mid, k1);
        stack.push_back(seg{2 * s.lo, mid, k1, s.vlo, vmid});
        stack.push_back(seg{mid, 2 * s.hi, k1, vmid, s.vhi});
    }
    return false;
}

} // namespace cubicrand
