#ifndef CUBICRAND_CENSUS_HPP
#define CUBICRAND_CENSUS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "cubicrand/cubic_form.hpp"
#include "cubicrand/sampler.hpp"

namespace cubicrand {

struct orbit_record {
    cubic_form form;  // canonical representative
    bigint disc;
    int signature;
    int stab;
};

// Every GL2(Z)-orbit of irreducible integral binary cubic forms with
// 0 < |disc| <= T and the given signature, as canonical representatives
// sorted by (|disc|, a, b, c, d).  Exhaustive scan of the sampling box;
// throws bound_too_large for T > 100000 (this is a desk-scale oracle).
std::vector<orbit_record> enumerate_orbits(int signature, const bigint& bound);

// The same census plus a constant-time-ish orbit lookup for sampled forms
// (greedy q-descent to a local minimum, memoized during the box scan).
// box_scale inflates the scan box; scanning at 2x and getting the same orbit
// count is the self-check that the default box misses nothing.
class orbit_index {
public:
    orbit_index(int signature, const bigint& bound, int box_scale = 1);

    const std::vector<orbit_record>& orbits() const { return orbits_; }

    // Index into orbits() of the orbit containing f; f must be a form the
    // sampler can emit for these parameters (a != 0, inside the scan box).
    std::size_t locate(const cubic_form& f) const;

private:
    std::vector<orbit_record> orbits_;
    std::unordered_map<std::uint64_t, std::uint32_t> by_local_min_;
    std::map<std::array<bigint, 4>, std::uint32_t> by_canonical_;

    friend std::vector<orbit_record> enumerate_orbits(int, const bigint&);
};

// Per-orbit sampling weights (normalized to sum 1): proportional to 3/stab in
// weighted mode, equal in uniform mode.
std::vector<double> expected_weights(const std::vector<orbit_record>& orbits, sample_mode mode);

// ---- goodness of fit --------------------------------------------------------

struct chisq_result {
    double statistic;
    long df;                  // cells - 1
    double p_value;
    bool degenerate = false;  // set for the one-cell case (df 0, nothing to test)
};

using form_key = std::array<bigint, 4>;

inline form_key key_of(const cubic_form& f) { return {f.a, f.b, f.c, f.d}; }

// Pearson chi-square of observed counts against expected weights (cells
// aligned).  Weights are scaled to the observed total; throws
// insufficient_samples if the total is below 5 per cell on average.  A single
// cell is a degenerate fit (df 0): statistic 0, p-value 1, degenerate flag set.
chisq_result chisquare_from_counts(const std::vector<long long>& observed,
                                   const std::vector<double>& expected);

// Map-keyed convenience wrapper: cells ordered by the expected map's keys;
// observed keys must be a subset of expected ones.
chisq_result chisquare_gof(const std::map<form_key, long long>& observed,
                           const std::map<form_key, double>& expected);

} // namespace cubicrand

#endif
