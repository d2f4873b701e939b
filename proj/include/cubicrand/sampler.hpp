#ifndef CUBICRAND_SAMPLER_HPP
#define CUBICRAND_SAMPLER_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cubicrand/bigint.hpp"
#include "cubicrand/cubic_form.hpp"
#include "cubicrand/dyadic.hpp"
#include "cubicrand/random_stream.hpp"

namespace cubicrand {

// Why one attempt was rejected (definite failures only; "not enough precision
// yet" is never a rejection, it just refines and retries the same attempt).
enum class reject_reason : unsigned char {
    none,       // success
    range_s,    // sigma outside (smin^2/smax^2, smin^2/sqrt(1-t^2))
    thinning,   // pi >= l'1 l'2 l'3 l'4 / (L'1 L'2 L'3 L'4)
    zero_a,     // leading coefficient a = 0
    disc,       // disc = 0 or |disc| > T
    signature,  // wrong discriminant sign
    q_ball,     // form outside the q-ball of radius R |disc|^(1/4)
    reducible,  // form reducible over Q
};

const char* reject_reason_name(reject_reason r);

// One recorded decision (comparison truth value or committed integer) from
// the iteration that settled the attempt.  Tag values are documented next to
// the attempt loop; they identify the algorithm step.
struct decision_step {
    std::uint8_t tag;
    bool truth;    // for comparison steps (value left 0)
    bigint value;  // for floor/ceiling steps (truth left true)

    bool operator==(const decision_step& o) const {
        return tag == o.tag && truth == o.truth && value == o.value;
    }
};
using decision_trace = std::vector<decision_step>;

// Sampler configuration: signature r in {1,3}, bound T >= 1, ball radius R
// (defaults: 7/4 for r = 1, 5/4 for r = 3).  Carries a per-precision cache of
// the derived interval constants, shared across copies.
class sampler_params {
public:
    int signature() const { return signature_; }
    const bigint& bound() const { return bound_; }
    const rational& radius() const { return radius_; }
    const rational& radius_sq() const { return radius_sq_; }

    // Derived constants at working precision p (intervals contain the exact
    // values; lam = R T^(1/4), smax = (lam/2)^(1/3), smin = (sqrt 3 / 2)^(1/2)).
    struct consts {
        dyadic_interval one;
        dyadic_interval lam;        // lambda
        dyadic_interval sqrt5lam;   // sqrt(5) * lambda
        dyadic_interval smin_sq;    // sqrt(3)/2
        dyadic_interval smin;
        dyadic_interval smax;
        dyadic_interval sigma_lo;   // smin^2 / smax^2
        dyadic_interval big_l[4];   // L'_i upper bounds for the side lengths
        dyadic_interval big_l_prod; // L'_1 L'_2 L'_3 L'_4
    };
    const consts& at(long p) const;

    friend sampler_params make_params(int signature, const bigint& bound,
                                      const std::optional<rational>& radius,
                                      bool allow_small_bound);

private:
    int signature_ = 1;
    bigint bound_;
    rational radius_;
    rational radius_sq_;

    struct cache {
        std::mutex mtx;
        std::map<long, consts> by_prec;
    };
    std::shared_ptr<cache> cache_ = std::make_shared<cache>();

    consts build(long p) const;
};

// Validates inputs; throws bound_too_small if T is below the least |disc| in
// the requested signature (23 for r = 1, 49 for r = 3) and the check is not
// explicitly relaxed.
sampler_params make_params(int signature, const bigint& bound,
                           const std::optional<rational>& radius = std::nullopt,
                           bool allow_small_bound = false);

struct sample_options {
    long initial_precision = 2;  // first working precision; doubles each round
    bool record_trace = false;
};

struct attempt_result {
    bool success = false;
    reject_reason reject = reject_reason::none;
    cubic_form form;       // meaningful on success
    long precision = 0;    // precision of the deciding iteration
    decision_trace trace;  // filled when sample_options::record_trace
};

// One rejection-sampling attempt driven by the given stream (use one fresh
// child stream per attempt).  Never loops over attempts: a definite reject
// returns; only indeterminate comparisons raise precision internally.
attempt_result attempt(const sampler_params& par, const random_stream& attempt_stream,
                       const sample_options& opt = {});

struct sample_result {
    cubic_form form;
    bigint attempts;   // attempts consumed, including the accepting one
    long precision;    // accepting attempt's final precision
    int stab = 0;      // stabilizer order; filled by sample_uniform
};

// Weighted sampling: each orbit with 0 < |disc| <= T and the requested
// signature appears with probability proportional to 3 / (stabilizer order).
sample_result sample_weighted(const sampler_params& par, const random_stream& sample_stream,
                              const sample_options& opt = {});

// Uniform over orbits: thins weighted output by an extra stab/3 keep test.
sample_result sample_uniform(const sampler_params& par, const random_stream& sample_stream,
                             const sample_options& opt = {});

enum class sample_mode { weighted, uniform };

// count independent samples; sample i is a pure function of (par, seed, i,
// mode), so results are byte-identical for any jobs value.
std::vector<sample_result> draw_samples(const sampler_params& par, sample_mode mode,
                                        std::uint64_t seed, std::uint64_t count,
                                        const sample_options& opt = {}, int jobs = 1);

// Integer bounds A..D with |a| <= A, |b| <= B, |c| <= C, |d| <= D for every
// coefficient vector the sampler can emit; what the census has to scan.
struct coeff_bounds {
    bigint A, B, C, D;
};
coeff_bounds sampling_box_bounds(const sampler_params& par);

} // namespace cubicrand

#endif
