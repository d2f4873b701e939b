#ifndef CUBICRAND_ERRORS_HPP
#define CUBICRAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cubicrand {

// Common base so callers can catch everything thrown by this library at once.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Interval division where the divisor interval contains 0.  At a given working
// precision this is indistinguishable from "divisor is tiny"; callers that own
// a precision loop should treat it as "refine and retry".
struct divisor_straddles_zero : error {
    divisor_straddles_zero() : error("interval division: divisor straddles zero") {}
};

// Even-order root of an interval that is definitely negative.
struct negative_even_root : error {
    negative_even_root() : error("interval root: even root of a negative interval") {}
};

// Matrix passed to the cubic-form action with det not equal to +-1.
struct non_unimodular : error {
    non_unimodular() : error("matrix action: determinant is not a unit") {}
};

// Operation requires a nondegenerate form (disc != 0).
struct zero_discriminant : error {
    zero_discriminant() : error("cubic form has zero discriminant") {}
};

// Operation requires an irreducible form.
struct reducible_input : error {
    reducible_input() : error("cubic form is reducible over Q") {}
};

// Sampler bound below the smallest discriminant for the requested signature.
struct bound_too_small : error {
    explicit bound_too_small(const std::string& detail)
        : error("bound too small: " + detail) {}
};

// Census bound above what exhaustive enumeration is meant to handle.
struct bound_too_large : error {
    explicit bound_too_large(const std::string& detail)
        : error("bound too large for exhaustive census: " + detail) {}
};

// Goodness-of-fit input with too few samples per cell to be meaningful.
struct insufficient_samples : error {
    explicit insufficient_samples(const std::string& detail)
        : error("insufficient samples: " + detail) {}
};

} // namespace cubicrand

#endif
