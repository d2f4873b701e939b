#include <doctest.h>

#include <random>

#include "cubicrand/sturm.hpp"

using namespace cubicrand;

namespace {

int_poly poly(std::initializer_list<long> ascending) {
    int_poly p;
    for (long c : ascending) p.push_back(bigint(c));
    return p;
}

// (x - r1)(x - r2)(x - r3) expanded, monic.
int_poly from_roots(long r1, long r2, long r3) {
    return {bigint(-r1) * r2 * r3, bigint(r1 * r2 + r1 * r3 + r2 * r3), bigint(-(r1 + r2 + r3)),
            bigint(1)};
}

bool has_integer_root_brute(const int_poly& p) {
    bigint bound = 1;
    for (const bigint& c : p) {
        bigint a = abs(c);
        if (a > bound) bound = a;
    }
    bound += 1;
    for (bigint m = -bound; m <= bound; ++m)
        if (poly_eval(p, m) == 0) return true;
    return false;
}

} // namespace

TEST_CASE("poly_eval") {
    int_poly p = poly({-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
    CHECK(poly_eval(p, bigint(0)) == -6);
    CHECK(poly_eval(p, bigint(1)) == 0);
    CHECK(poly_eval(p, bigint(4)) == 6);
    CHECK(poly_eval(p, bigint(-1)) == -24);
}

TEST_CASE("real root counts on knowns") {
    CHECK(count_real_roots(poly({1, 0, 1})) == 0);        // x^2 + 1
    CHECK(count_real_roots(poly({-2, 0, 1})) == 2);       // x^2 - 2
    CHECK(count_real_roots(poly({0, -1, 0, 1})) == 3);    // x^3 - x
    CHECK(count_real_roots(poly({-2, 0, 0, 1})) == 1);    // x^3 - 2
    CHECK(count_real_roots(poly({5, 3})) == 1);           // 3x + 5
    CHECK(count_real_roots(poly({0, -1, 0, 0, 0, 1})) == 3);  // x^5 - x
    // repeated roots count once
    CHECK(count_real_roots(poly({-27, 27, -9, 1})) == 1);     // (x-3)^3
    CHECK(count_real_roots(poly({4, 0, -4, 0, 1})) == 2);     // (x^2-2)^2
    int_poly sq = from_roots(1, 1, -2);
    CHECK(count_real_roots(sq) == 2);
}

TEST_CASE("root count matches the discriminant sign for cubics") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> coeff(-30, 30);
    int seen3 = 0, seen1 = 0;
    for (int i = 0; i < 1500; ++i) {
        long a = coeff(rng), b = coeff(rng), c = coeff(rng), d = coeff(rng);
        if (a == 0) continue;
        bigint disc = bigint(18) * a * b * c * d + bigint(b) * b * c * c -
                      bigint(4) * a * c * c * c - bigint(4) * b * b * b * d -
                      bigint(27) * a * a * d * d;
        if (disc == 0) continue;
        long n = count_real_roots(poly({d, c, b, a}));
        if (disc > 0) {
            CHECK(n == 3);
            ++seen3;
        } else {
            CHECK(n == 1);
            ++seen1;
        }
    }
    CHECK(seen3 > 50);
    CHECK(seen1 > 50);
}

TEST_CASE("integer roots of monic polynomials") {
    CHECK(has_integer_root_monic(from_roots(4, -7, 12)));
    CHECK(has_integer_root_monic(poly({0, 0, 0, 1})));      // x^3
    CHECK(!has_integer_root_monic(poly({-1, -1, 0, 1})));   // x^3 - x - 1
    CHECK(!has_integer_root_monic(poly({-4, 0, 0, 1})));    // x^3 - 4
    CHECK(!has_integer_root_monic(poly({1, 0, 1})));        // x^2 + 1, no real roots
    CHECK(has_integer_root_monic(poly({-4, 0, 1})));        // x^2 - 4

    // bisection must separate K from K^3 +- 1 at large scale
    bigint k = 1;
    for (int i = 0; i < 20; ++i) k *= 10;
    int_poly exact_cube{-k * k * k, bigint(0), bigint(0), bigint(1)};
    CHECK(has_integer_root_monic(exact_cube));
    int_poly off_by_one{-k * k * k - 1, bigint(0), bigint(0), bigint(1)};
    CHECK(!has_integer_root_monic(off_by_one));
}

TEST_CASE("randomized integer-root agreement with brute force") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long> coeff(-60, 60);
    std::uniform_int_distribution<long> root(-12, 12);
    std::uniform_int_distribution<int> plant(0, 1);
    for (int i = 0; i < 3000; ++i) {
        int_poly p;
        if (plant(rng)) {
            long r = root(rng);
            // (x - r) * (x^2 + bx + c)
            long b = coeff(rng), c = coeff(rng);
            p = poly({-r * c, c - r * b, b - r, 1});
        } else {
            p = poly({coeff(rng), coeff(rng), coeff(rng), 1});
        }
        CHECK(has_integer_root_monic(p) == has_integer_root_brute(p));
    }
}

TEST_CASE("sturm chain shape") {
    int_poly p = poly({-2, 0, 1});
    auto chain = sturm_chain(p);
    REQUIRE(chain.size() >= 2);
    // variations at -inf minus +inf equals the number of real roots
    CHECK(sturm_variations_inf(chain, -1) - sturm_variations_inf(chain, +1) == 2);
    // at x = 0 (= 0/2^0, not a root) the count splits 1 + 1
    long v0 = sturm_variations(chain, bigint(0), 0);
    CHECK(sturm_variations_inf(chain, -1) - v0 == 1);
    CHECK(v0 - sturm_variations_inf(chain, +1) == 1);
}
