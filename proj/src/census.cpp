#include "cubicrand/census.hpp"

#include <gsl/gsl_cdf.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "cubicrand/errors.hpp"

namespace cubicrand {

namespace {

using i64 = std::int64_t;
using i128 = __int128;
using u128 = unsigned __int128;

bigint from_i128(i128 v) {
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
    bigint r(static_cast<unsigned long>(u >> 64));
    r = mul_2exp(r, 64) + bigint(static_cast<unsigned long>(u));
    return neg ? bigint(-r) : r;
}

u128 isqrt128(u128 x) {
    if (x == 0) return 0;
    u128 r = static_cast<u128>(sqrtl(static_cast<long double>(x)));
    r += 2;
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

i128 fdiv128(i128 n, i128 d) {  // d > 0
    i128 q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}
i128 cdiv128(i128 n, i128 d) {  // d > 0
    i128 q = n / d;
    if (n % d != 0 && n > 0) ++q;
    return q;
}

struct irange {
    i64 lo = 0, hi = -1;  // empty when lo > hi
    bool empty() const { return lo > hi; }
};

// disc(d) = alpha d^2 + beta d + gamma with alpha < 0 for fixed (a, b, c).
struct dquad {
    i128 alpha, beta, gamma;

    i128 at(i64 d) const { return (alpha * d + beta) * d + gamma; }

    // Outer integer bounds on {d : disc(d) >= v} (a root interval; the +-1
    // margin makes isqrt flooring harmless, candidates are verified exactly).
    irange outer_at_least(i128 v, i64 clip) const {
        i128 a2 = -alpha;
        i128 delta = beta * beta + 4 * a2 * (gamma - v);
        if (delta < 0) return irange{};
        i128 sq = static_cast<i128>(isqrt128(static_cast<u128>(delta)));
        i128 lo = fdiv128(beta - sq, 2 * a2) - 1;
        i128 hi = cdiv128(beta + sq, 2 * a2) + 1;
        if (lo < -clip) lo = -clip;
        if (hi > clip) hi = clip;
        if (lo > hi) return irange{};
        return irange{static_cast<i64>(lo), static_cast<i64>(hi)};
    }

    // Inner integer bounds: every integer in the result satisfies
    // disc(d) >= v (subset of the true root interval).
    irange inner_at_least(i128 v) const {
        i128 a2 = -alpha;
        i128 delta = beta * beta + 4 * a2 * (gamma - v);
        if (delta < 0) return irange{};
        i128 sq = static_cast<i128>(isqrt128(static_cast<u128>(delta)));
        i128 lo = fdiv128(beta - sq, 2 * a2) + 1;
        i128 hi = cdiv128(beta + sq, 2 * a2) - 1;
        if (lo > hi) return irange{};
        return irange{static_cast<i64>(lo), static_cast<i64>(hi)};
    }
};

i128 q_of(const i64 f[4]) {
    i128 a = f[0], b = f[1], c = f[2], d = f[3];
    return 5 * a * a + b * b + c * c + 5 * d * d + 2 * a * c + 2 * b * d;
}

// Same generator moves as canonicalize (see cubic_form.cpp).
void neighbor_i64(int which, const i64 f[4], i64 out[4]) {
    const i64 a = f[0], b = f[1], c = f[2], d = f[3];
    switch (which) {
        case 0: out[0] = a + b + c + d; out[1] = b + 2 * c + 3 * d; out[2] = c + 3 * d; out[3] = d; break;
        case 1: out[0] = a - b + c - d; out[1] = b - 2 * c + 3 * d; out[2] = c - 3 * d; out[3] = d; break;
        case 2: out[0] = a; out[1] = 3 * a + b; out[2] = 3 * a + 2 * b + c; out[3] = a + b + c + d; break;
        case 3: out[0] = a; out[1] = b - 3 * a; out[2] = 3 * a - 2 * b + c; out[3] = d - a + b - c; break;
        case 4: out[0] = -d; out[1] = -c; out[2] = -b; out[3] = -a; break;
        default: out[0] = a; out[1] = -b; out[2] = c; out[3] = -d; break;
    }
}

bool lex_less4(const i64 f[4], const i64 g[4]) {
    for (int i = 0; i < 4; ++i)
        if (f[i] != g[i]) return f[i] < g[i];
    return false;
}

// Greedy q-descent to the deterministic local minimum: step to the strictly
// smaller neighbor of least q (lexicographically least on ties).
void descend(i64 f[4]) {
    for (;;) {
        i128 q = q_of(f);
        i64 best[4] = {f[0], f[1], f[2], f[3]};
        i128 qbest = q;
        bool moved = false;
        for (int w = 0; w < 6; ++w) {
            i64 n[4];
            neighbor_i64(w, f, n);
            i128 qn = q_of(n);
            if (qn < qbest || (qn == qbest && moved && lex_less4(n, best))) {
                qbest = qn;
                best[0] = n[0]; best[1] = n[1]; best[2] = n[2]; best[3] = n[3];
                moved = true;
            }
        }
        if (!moved) return;
        f[0] = best[0]; f[1] = best[1]; f[2] = best[2]; f[3] = best[3];
    }
}

std::uint64_t pack16(const i64 f[4]) {
    std::uint64_t k = 0;
    for (int i = 0; i < 4; ++i) {
        assert(f[i] >= -32768 && f[i] < 32768);
        k = k << 16 | static_cast<std::uint16_t>(static_cast<std::int16_t>(f[i]));
    }
    return k;
}

// No root mod p for the monic cubic m^3 + c2 m^2 + c1 m + c0 => no integer
// root => irreducible.  Returns unknown (-1) when every small prime has one.
int irreducible_screen_i64(i64 a, i64 b, i64 c, i64 d) {
    if (a == 0 || d == 0) return 0;
    i64 c2 = b, c1 = a * c, c0 = a * a * d;
    static const i64 primes[] = {2, 3, 5, 7, 11, 13};
    for (i64 p : primes) {
        i64 r2 = ((c2 % p) + p) % p, r1 = ((c1 % p) + p) % p, r0 = ((c0 % p) + p) % p;
        bool root = false;
        for (i64 m = 0; m < p && !root; ++m)
            root = (((m * m % p) * m + r2 * m % p * m + r1 * m + r0) % p) == 0;
        if (!root) return 1;
    }
    return -1;
}

} // namespace

orbit_index::orbit_index(int signature, const bigint& bound, int box_scale) {
    if (bound > 100000)
        throw bound_too_large("census limit is 100000, got " + to_decimal(bound));
    if (box_scale < 1 || box_scale > 4) throw error("census box_scale must be in 1..4");
    sampler_params par = make_params(signature, bound, std::nullopt, /*allow_small_bound=*/true);
    coeff_bounds cb = sampling_box_bounds(par);
    assert(fits_int64(cb.A) && fits_int64(cb.D));
    const i64 A = box_scale * to_int64(cb.A), B = box_scale * to_int64(cb.B),
              C = box_scale * to_int64(cb.C), D = box_scale * to_int64(cb.D);
    const i128 T = to_int64(bound);
    const bool want_pos = signature == 3;

    auto visit = [&](i64 a, i64 b, i64 c, i64 d, i128 disc) {
        int irr = irreducible_screen_i64(a, b, c, d);
        if (irr == 0) return;
        cubic_form f{bigint(static_cast<long>(a)), bigint(static_cast<long>(b)),
                     bigint(static_cast<long>(c)), bigint(static_cast<long>(d))};
        if (irr < 0 && !is_irreducible(f)) return;
        i64 g[4] = {a, b, c, d};
        descend(g);
        std::uint64_t key = pack16(g);
        if (by_local_min_.find(key) != by_local_min_.end()) return;
        cubic_form canon = canonicalize(f);
        auto ck = key_of(canon);
        auto it = by_canonical_.find(ck);
        if (it != by_canonical_.end()) {
            by_local_min_.emplace(key, it->second);
            return;
        }
        auto id = static_cast<std::uint32_t>(orbits_.size());
        orbits_.push_back(orbit_record{canon, from_i128(disc), signature, stab_order(canon)});
        by_canonical_.emplace(ck, id);
        by_local_min_.emplace(key, id);
    };

    // Scan a > 0 only: -f is in the same orbit (via -I), so every orbit with a
    // box representative has one with a > 0, and irreducibility rules out a=0.
    for (i64 a = 1; a <= A; ++a) {
        for (i64 b = -B; b <= B; ++b) {
            for (i64 c = -C; c <= C; ++c) {
                dquad q{-27 * static_cast<i128>(a) * a,
                        18 * static_cast<i128>(a) * b * c - 4 * static_cast<i128>(b) * b * b,
                        static_cast<i128>(b) * b * c * c - 4 * static_cast<i128>(a) * c * c * c};
                // d-windows with |disc| <= T and the wanted sign: an outer root
                // interval minus an inner "overshoot" interval, candidates
                // verified exactly below.
                irange outer = want_pos ? q.outer_at_least(1, D) : q.outer_at_least(-T, D);
                if (outer.empty()) continue;
                irange inner = want_pos ? q.inner_at_least(T + 1) : q.inner_at_least(0);
                auto scan = [&](i64 lo, i64 hi) {
                    for (i64 d = lo; d <= hi; ++d) {
                        i128 disc = q.at(d);
                        if (disc == 0) continue;
                        if (want_pos ? (disc < 1 || disc > T) : (disc > -1 || disc < -T)) continue;
                        visit(a, b, c, d, disc);
                    }
                };
                if (inner.empty()) {
                    scan(outer.lo, outer.hi);
                } else {
                    scan(outer.lo, std::min<i64>(outer.hi, inner.lo - 1));
                    scan(std::max<i64>(outer.lo, inner.hi + 1), outer.hi);
                }
            }
        }
    }

    // Sort by (|disc|, lex) and remap the lookup tables.
    std::vector<std::uint32_t> order(orbits_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        const orbit_record &u = orbits_[x], &v = orbits_[y];
        bigint au = abs(u.disc), av = abs(v.disc);
        if (au != av) return au < av;
        return cmp_lex(u.form, v.form) < 0;
    });
    std::vector<std::uint32_t> newid(orbits_.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) newid[order[i]] = i;
    std::vector<orbit_record> sorted;
    sorted.reserve(orbits_.size());
    for (std::uint32_t i : order) sorted.push_back(std::move(orbits_[i]));
    orbits_ = std::move(sorted);
    for (auto& kv : by_local_min_) kv.second = newid[kv.second];
    for (auto& kv : by_canonical_) kv.second = newid[kv.second];
}

std::size_t orbit_index::locate(const cubic_form& f) const {
    if (fits_int64(f.a) && fits_int64(f.b) && fits_int64(f.c) && fits_int64(f.d)) {
        i64 g[4] = {to_int64(f.a), to_int64(f.b), to_int64(f.c), to_int64(f.d)};
        assert(g[0] != 0);
        if (g[0] < 0)
            for (i64& x : g) x = -x;  // -f lies in the same orbit
        descend(g);
        auto it = by_local_min_.find(pack16(g));
        if (it != by_local_min_.end()) return it->second;
    }
    // Not a box form we scanned (shouldn't happen for sampler output);
    // fall back to the orbit invariant.
    auto it = by_canonical_.find(key_of(canonicalize(f)));
    if (it == by_canonical_.end()) throw error("form is not in any census orbit");
    return it->second;
}

std::vector<orbit_record> enumerate_orbits(int signature, const bigint& bound) {
    orbit_index idx(signature, bound);
    return std::move(idx.orbits_);
}

std::vector<double> expected_weights(const std::vector<orbit_record>& orbits, sample_mode mode) {
    std::vector<double> w(orbits.size(), 1.0);
    if (mode == sample_mode::weighted)
        for (std::size_t i = 0; i < orbits.size(); ++i) w[i] = 3.0 / orbits[i].stab;
    double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= total;
    return w;
}

chisq_result chisquare_from_counts(const std::vector<long long>& observed,
                                   const std::vector<double>& expected) {
    if (observed.size() != expected.size()) throw error("chi-square: cell count mismatch");
    std::size_t n = observed.size();
    if (n == 0) throw error("chi-square: no cells");
    long long total = 0;
    for (long long o : observed) {
        if (o < 0) throw error("chi-square: negative count");
        total += o;
    }
    double wsum = 0;
    for (double e : expected) {
        if (!(e > 0)) throw error("chi-square: expected weights must be positive");
        wsum += e;
    }
    if (total < 5 * static_cast<long long>(n))
        throw insufficient_samples(std::to_string(total) + " draws for " + std::to_string(n) +
                                   " cells (need 5 per cell)");
    if (n == 1)  // everything lands in the only cell; there is nothing to test
        return chisq_result{0.0, 0, 1.0, true};
    double stat = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = static_cast<double>(total) * expected[i] / wsum;
        double diff = static_cast<double>(observed[i]) - e;
        stat += diff * diff / e;
    }
    long df = static_cast<long>(n) - 1;
    return chisq_result{stat, df, gsl_cdf_chisq_Q(stat, static_cast<double>(df))};
}

chisq_result chisquare_gof(const std::map<form_key, long long>& observed,
                           const std::map<form_key, double>& expected) {
    for (const auto& kv : observed)
        if (expected.find(kv.first) == expected.end())
            throw error("chi-square: observed cell missing from expected");
    std::vector<long long> obs;
    std::vector<double> exp;
    obs.reserve(expected.size());
    exp.reserve(expected.size());
    for (const auto& kv : expected) {
        auto it = observed.find(kv.first);
        obs.push_back(it == observed.end() ? 0 : it->second);
        exp.push_back(kv.second);
    }
    return chisquare_from_counts(obs, exp);
}

} // namespace cubicrand
