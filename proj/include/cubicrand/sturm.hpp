#ifndef CUBICRAND_STURM_HPP
#define CUBICRAND_STURM_HPP

#include <vector>

#include "cubicrand/bigint.hpp"

namespace cubicrand {

// Dense integer polynomial, ascending coefficients; c[deg] != 0 unless empty.
using int_poly = std::vector<bigint>;

bigint poly_eval(const int_poly& p, const bigint& x);

// Sturm chain of p (integer pseudo-remainders scaled by positive factors only,
// so sign variation counts match the classical rational chain).
std::vector<int_poly> sturm_chain(const int_poly& p);

// Sign variations of the chain at x = num / 2^k2 (must not be a root of p).
long sturm_variations(const std::vector<int_poly>& chain, const bigint& num, long k2);

// Sign variations at -inf (dir < 0) or +inf (dir > 0).
long sturm_variations_inf(const std::vector<int_poly>& chain, int dir);

// Number of distinct real roots of p (any degree >= 1).
long count_real_roots(const int_poly& p);

// Does the monic integer polynomial p have an integer root?  Exact: isolates
// real roots by Sturm bisection on half-integer endpoints, then verifies the
// unique integer candidate in each short interval by direct evaluation.
bool has_integer_root_monic(const int_poly& p);

} // namespace cubicrand

#endif
