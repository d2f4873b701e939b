#include <doctest.h>

#include <random>
#include <vector>

#include "cubicrand/dyadic.hpp"
#include "cubicrand/errors.hpp"

using namespace cubicrand;

namespace {

rational to_rational(const dyadic& d) {
    rational r(d.man);
    if (d.exp >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(d.exp));
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-d.exp));
    return r;
}

rational width_of(const dyadic_interval& x) { return to_rational(x.hi) - to_rational(x.lo); }

bool contains(const dyadic_interval& x, const rational& v) {
    return cmp_rational(x.lo, v) <= 0 && cmp_rational(x.hi, v) >= 0;
}

dyadic_interval ratio_iv(long num, long den, long p) {
    return dyadic_interval::from_ratio(bigint(num), bigint(den), p);
}

// 2^-k as an exact rational.
rational pow2(long k) {
    rational r(1);
    if (k >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(k));
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-k));
    return r;
}

} // namespace

TEST_CASE("exact dyadic add/sub/mul") {
    auto one = dyadic_interval::exact(bigint(1));
    auto two = dyadic_interval::exact(bigint(2));
    auto s = iv_add(one, two, 16);
    CHECK(s.is_point());
    CHECK(cmp(s.lo, dyadic(bigint(3), 0)) == 0);

    // [-1,1] * [-1,1] = [-1,1]: the endpoint products are all +-1
    dyadic_interval pm{dyadic(bigint(-1), 0), dyadic(bigint(1), 0)};
    auto prod = iv_mul(pm, pm, 16);
    CHECK(cmp(prod.lo, dyadic(bigint(-1), 0)) == 0);
    CHECK(cmp(prod.hi, dyadic(bigint(1), 0)) == 0);

    // [1,2] - [1,2] = [-1,1]: interval subtraction does not cancel
    dyadic_interval ot{dyadic(bigint(1), 0), dyadic(bigint(2), 0)};
    auto diff = iv_sub(ot, ot, 16);
    CHECK(cmp(diff.lo, dyadic(bigint(-1), 0)) == 0);
    CHECK(cmp(diff.hi, dyadic(bigint(1), 0)) == 0);
}

TEST_CASE("division") {
    auto four = dyadic_interval::exact(bigint(4));
    auto two = dyadic_interval::exact(bigint(2));
    auto q = iv_div(four, two, 16);
    CHECK(q.is_point());
    CHECK(cmp(q.lo, dyadic(bigint(2), 0)) == 0);

    for (long p : {8L, 16L, 64L, 256L}) {
        auto third = iv_div(dyadic_interval::exact(bigint(1)), dyadic_interval::exact(bigint(3)), p);
        CHECK(contains(third, rational(1, 3)));
        CHECK(width_of(third) <= pow2(1 - p));
    }

    dyadic_interval pm{dyadic(bigint(-1), 0), dyadic(bigint(1), 0)};
    CHECK_THROWS_AS(iv_div(dyadic_interval::exact(bigint(1)), pm, 16), divisor_straddles_zero);
    // zero endpoint also counts as straddling
    dyadic_interval z{dyadic(bigint(0), 0), dyadic(bigint(1), 0)};
    CHECK_THROWS_AS(iv_div(dyadic_interval::exact(bigint(1)), z, 16), divisor_straddles_zero);
}

TEST_CASE("roots") {
    auto two = iv_root(dyadic_interval::exact(bigint(4)), 2, 16);
    CHECK(two.is_point());
    CHECK(cmp(two.lo, dyadic(bigint(2), 0)) == 0);

    auto fourth = iv_root(dyadic_interval::exact(bigint(256)), 4, 16);
    CHECK(fourth.is_point());
    CHECK(cmp(fourth.lo, dyadic(bigint(4), 0)) == 0);

    // sqrt 3 against the integer square root of 3 * 10^120: the reference
    // quotient ref/10^60 sits below sqrt 3, (ref+1)/10^60 above.
    bigint three_sq = 3;
    bigint scale = 1;
    for (int i = 0; i < 120; ++i) scale *= 10;
    three_sq *= scale;
    bigint ref = sqrt(three_sq);
    bigint half_scale = sqrt(scale);
    auto square = [](const dyadic& d) -> rational { return to_rational(d) * to_rational(d); };
    for (long p : {8L, 16L, 64L, 256L, 1024L}) {
        auto rt = iv_root(dyadic_interval::exact(bigint(3)), 2, p);
        CHECK(width_of(rt) <= pow2(2 - p));
        // contains sqrt 3 exactly: lo^2 <= 3 <= hi^2
        CHECK(rt.lo.sgn() >= 0);
        CHECK(square(rt.lo) <= 3);
        CHECK(square(rt.hi) >= 3);
        // and overlaps the decimal bracket ref/10^60 < sqrt 3 < (ref+1)/10^60
        CHECK(cmp_rational(rt.lo, rational(ref + 1, half_scale)) < 0);
        CHECK(cmp_rational(rt.hi, rational(ref, half_scale)) > 0);
    }

    CHECK_THROWS_AS(iv_root(dyadic_interval::exact(bigint(-4)), 2, 16), negative_even_root);
    // straddling zero clamps instead of throwing
    dyadic_interval st{dyadic(bigint(-1), -8), dyadic(bigint(1), 0)};
    auto r = iv_root(st, 2, 16);
    CHECK(r.lo.sgn() == 0);
    CHECK(contains(r, rational(1, 2)));
    // odd roots pass signs through
    auto neg = iv_root(dyadic_interval::exact(bigint(-8)), 3, 16);
    CHECK(neg.is_point());
    CHECK(cmp(neg.lo, dyadic(bigint(-2), 0)) == 0);
}

TEST_CASE("comparison trilean") {
    dyadic_interval a{dyadic(bigint(1), 0), dyadic(bigint(2), 0)};
    dyadic_interval b{dyadic(bigint(3), 0), dyadic(bigint(4), 0)};
    dyadic_interval c{dyadic(bigint(1), 0), dyadic(bigint(3), 0)};
    dyadic_interval d{dyadic(bigint(2), 0), dyadic(bigint(4), 0)};
    CHECK(iv_less(a, b) == trilean::yes);
    CHECK(iv_less(b, a) == trilean::no);
    CHECK(iv_less(c, d) == trilean::unknown);
}

TEST_CASE("partial floor and ceiling") {
    // [3.2, 3.4]
    dyadic_interval x{ratio_iv(16, 5, 24).lo, ratio_iv(17, 5, 24).hi};
    auto fl = floor_partial(x);
    REQUIRE(fl.has_value());
    CHECK(*fl == 3);
    auto ce = ceil_partial(x);
    REQUIRE(ce.has_value());
    CHECK(*ce == 4);

    // [2.9, 3.1] straddles 3
    dyadic_interval y{ratio_iv(29, 10, 24).lo, ratio_iv(31, 10, 24).hi};
    CHECK(!floor_partial(y).has_value());
    CHECK(!ceil_partial(y).has_value());

    // [-0.5, -0.4]
    dyadic_interval z{dyadic(bigint(-1), -1), ratio_iv(-2, 5, 24).hi};
    auto fz = floor_partial(z);
    REQUIRE(fz.has_value());
    CHECK(*fz == -1);
    auto cz = ceil_partial(z);
    REQUIRE(cz.has_value());
    CHECK(*cz == 0);

    // integer point
    auto three = dyadic_interval::exact(bigint(3));
    CHECK(*floor_partial(three) == 3);
    CHECK(*ceil_partial(three) == 3);
}

TEST_CASE("tiny absorbed addends keep full precision") {
    // Regression: 1 - [0, 2^-32] at low precision must stay near 1, not
    // collapse to [0, 1] (the nudge has to be an ulp of the target precision,
    // not of the stored mantissa).
    dyadic_interval one = dyadic_interval::exact(bigint(1));
    dyadic_interval tiny{dyadic(bigint(0), 0), dyadic(bigint(1), -32)};
    auto d = iv_sub(one, tiny, 16);
    CHECK(contains(d, rational(1)));
    CHECK(cmp_rational(d.lo, rational(4095, 4096)) >= 0);

    // soundness of the absorbed tail in both directions
    dyadic_interval tiny2 = dyadic_interval::exact(dyadic(bigint(1), -90));
    auto s = iv_add(one, tiny2, 16);
    rational exact = rational(1) + pow2(-90);
    CHECK(contains(s, exact));
    CHECK(width_of(s) <= pow2(-18));
    auto d2 = iv_sub(one, tiny2, 16);
    CHECK(contains(d2, rational(1) - pow2(-90)));
}

TEST_CASE("scalings") {
    auto x = dyadic_interval::from_ratio(bigint(1), bigint(3), 32);
    auto y = iv_scale2(x, 5);
    CHECK(contains(y, rational(32, 3)));
    auto z = iv_mul_int(x, bigint(-6));
    CHECK(contains(z, rational(-2)));
    auto w = iv_scale_rational(x, rational(9, 2), 32);
    CHECK(contains(w, rational(3, 2)));
}

// Differential containment: random expression DAGs over +,-,*,/ evaluated
// both exactly (rationals) and in intervals at every precision; the exact
// value must always be inside, and doubling the precision must shrink the
// interval (up to outward-rounding slack).
TEST_CASE("randomized containment and refinement") {
    std::mt19937_64 rng(20260823);
    std::uniform_int_distribution<int> pick_op(0, 3);
    std::uniform_int_distribution<long> pick_int(-40, 40);
    std::uniform_int_distribution<long> pick_den(1, 9);

    const std::vector<long> precs{8, 16, 32, 64, 128, 256, 512, 1024};
    for (int trial = 0; trial < 60; ++trial) {
        // Build one DAG: node = (op, lhs, rhs) over initial rational leaves.
        struct node {
            int op;  // -1 leaf, else 0..3 = + - * /
            std::size_t lhs = 0, rhs = 0;
            rational leaf;
        };
        std::vector<node> dag;
        std::vector<rational> exact;
        for (int i = 0; i < 4; ++i) {
            rational v(pick_int(rng), pick_den(rng));
            mpq_canonicalize(v.get_mpq_t());
            dag.push_back(node{-1, 0, 0, v});
            exact.push_back(v);
        }
        while (dag.size() < 16) {
            std::uniform_int_distribution<std::size_t> pick_node(0, dag.size() - 1);
            node n{pick_op(rng), pick_node(rng), pick_node(rng), rational(0)};
            rational v;
            switch (n.op) {
                case 0: v = exact[n.lhs] + exact[n.rhs]; break;
                case 1: v = exact[n.lhs] - exact[n.rhs]; break;
                case 2: v = exact[n.lhs] * exact[n.rhs]; break;
                default:
                    if (sgn(exact[n.rhs]) == 0) continue;
                    v = exact[n.lhs] / exact[n.rhs];
                    break;
            }
            if (abs(v) > 1000000) continue;  // keep magnitudes tame
            dag.push_back(n);
            exact.push_back(v);
        }

        std::vector<dyadic_interval> prev;
        for (std::size_t pi = 0; pi < precs.size(); ++pi) {
            long p = precs[pi];
            std::vector<dyadic_interval> iv(dag.size());
            for (std::size_t i = 0; i < dag.size(); ++i) {
                const node& n = dag[i];
                if (n.op == -1) {
                    iv[i] = dyadic_interval::from_ratio(exact[i].get_num(), exact[i].get_den(), p);
                } else if (n.op == 0) {
                    iv[i] = iv_add(iv[n.lhs], iv[n.rhs], p);
                } else if (n.op == 1) {
                    iv[i] = iv_sub(iv[n.lhs], iv[n.rhs], p);
                } else if (n.op == 2) {
                    iv[i] = iv_mul(iv[n.lhs], iv[n.rhs], p);
                } else {
                    // the divisor interval can straddle 0 at low precision
                    // even though its value is nonzero; skip until it resolves
                    if (iv[n.rhs].lo.sgn() <= 0 && iv[n.rhs].hi.sgn() >= 0) {
                        iv[i] = dyadic_interval::from_ratio(exact[i].get_num(), exact[i].get_den(), p);
                    } else {
                        iv[i] = iv_div(iv[n.lhs], iv[n.rhs], p);
                    }
                }
                CHECK(contains(iv[i], exact[i]));
                CHECK(cmp(iv[i].lo, iv[i].hi) <= 0);
                if (pi > 0) {
                    // nested up to the coarser level's rounding slack
                    rational slack = pow2(1 - precs[pi - 1]) * (rational(1) + abs(exact[i]));
                    CHECK(to_rational(iv[i].hi) <= to_rational(prev[i].hi) + slack);
                    CHECK(to_rational(iv[i].lo) >= to_rational(prev[i].lo) - slack);
                    if (p >= 64) CHECK(width_of(iv[i]) <= width_of(prev[i]));
                }
            }
            prev = std::move(iv);
        }
        // by p = 1024 everything rational is pinned very tightly
        for (std::size_t i = 0; i < dag.size(); ++i)
            CHECK(width_of(prev[i]) <= pow2(-990) * (rational(1) + abs(exact[i])));
    }
}

// Roots leave the rationals, so the oracle there is nesting: reevaluating the
// same expression at doubled precision lands inside the coarser interval's
// slack neighborhood, and widths tend to 0.
TEST_CASE("root expressions refine geometrically") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        long base = std::uniform_int_distribution<long>(2, 5000)(rng);
        unsigned long k = std::uniform_int_distribution<unsigned long>(2, 4)(rng);
        long mul = std::uniform_int_distribution<long>(1, 50)(rng);
        dyadic_interval prev;
        for (long p = 8; p <= 1024; p *= 2) {
            auto rt = iv_root(dyadic_interval::exact(bigint(base)), k, p);
            auto x = iv_mul(rt, dyadic_interval::from_ratio(bigint(mul), bigint(3), p), p);
            auto y = iv_sub(iv_mul(x, x, p), iv_mul_int(rt, bigint(7)), p);
            if (p > 8) {
                rational slack = pow2(10 - p / 2);
                CHECK(to_rational(y.hi) <= to_rational(prev.hi) + slack);
                CHECK(to_rational(y.lo) >= to_rational(prev.lo) - slack);
                CHECK(width_of(y) < width_of(prev));
            }
            prev = y;
        }
        CHECK(width_of(prev) <= pow2(-900));
    }
}

// floor/ceil_partial and iv_less must never return a wrong definite answer.
TEST_CASE("definite answers are never wrong") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(-4000, 4000);
    std::uniform_int_distribution<long> den(1, 64);
    for (int trial = 0; trial < 4000; ++trial) {
        rational a(num(rng), den(rng));
        rational b(num(rng), den(rng));
        mpq_canonicalize(a.get_mpq_t());
        mpq_canonicalize(b.get_mpq_t());
        long p = 8 << (trial % 4);
        auto ia = dyadic_interval::from_ratio(a.get_num(), a.get_den(), p);
        auto ib = dyadic_interval::from_ratio(b.get_num(), b.get_den(), p);
        trilean lt = iv_less(ia, ib);
        if (lt == trilean::yes) CHECK(a < b);
        if (lt == trilean::no) CHECK(a >= b);

        if (auto fl = floor_partial(ia)) {
            bigint expect = fdiv(a.get_num(), a.get_den());
            CHECK(*fl == expect);
        }
        if (auto ce = ceil_partial(ia)) {
            bigint expect = cdiv(a.get_num(), a.get_den());
            CHECK(*ce == expect);
        }
    }
}
