#include "cubicrand/sampler.hpp"

#include <atomic>
#include <cassert>
#include <thread>

#include "cubicrand/errors.hpp"

namespace cubicrand {

const char* reject_reason_name(reject_reason r) {
    switch (r) {
        case reject_reason::none: return "none";
        case reject_reason::range_s: return "range_s";
        case reject_reason::thinning: return "thinning";
        case reject_reason::zero_a: return "zero_a";
        case reject_reason::disc: return "disc";
        case reject_reason::signature: return "signature";
        case reject_reason::q_ball: return "q_ball";
        case reject_reason::reducible: return "reducible";
    }
    return "?";
}

// ---- parameters -------------------------------------------------------------

sampler_params make_params(int signature, const bigint& bound,
                           const std::optional<rational>& radius, bool allow_small_bound) {
    if (signature != 1 && signature != 3) throw error("signature must be 1 or 3");
    if (sign(bound) <= 0) throw bound_too_small("bound must be positive");
    sampler_params par;
    par.signature_ = signature;
    par.bound_ = bound;
    par.radius_ = radius ? *radius : (signature == 1 ? rational(7, 4) : rational(5, 4));
    par.radius_.canonicalize();
    if (sign(par.radius_.get_num()) <= 0) throw error("radius must be positive");
    par.radius_sq_ = par.radius_ * par.radius_;
    // Least |disc| over orbits of the requested signature: -23 resp. +49.
    long min_disc = signature == 1 ? 23 : 49;
    if (!allow_small_bound && bound < min_disc)
        throw bound_too_small("no orbit with signature " + std::to_string(signature) +
                              " has |disc| <= " + to_decimal(bound));
    return par;
}

sampler_params::consts sampler_params::build(long p) const {
    consts c;
    c.one = dyadic_interval::exact(bigint(1));
    dyadic_interval t4 = iv_root(dyadic_interval::exact(bound_), 4, p);
    c.lam = iv_scale_rational(t4, radius_, p);
    dyadic_interval sqrt5 = iv_root(dyadic_interval::exact(bigint(5)), 2, p);
    c.sqrt5lam = iv_mul(sqrt5, c.lam, p);
    c.smin_sq = iv_scale2(iv_root(dyadic_interval::exact(bigint(3)), 2, p), -1);
    c.smin = iv_root(c.smin_sq, 2, p);
    c.smax = iv_root(iv_scale_rational(c.lam, rational(1, 2), p), 3, p);
    c.sigma_lo = iv_div(c.smin_sq, iv_square(c.smax, p), p);
    // L'_1 = smax^3 + lam, and smax^3 = lam/2, so L'_1 = (3/2) lam exactly.
    c.big_l[0] = iv_scale_rational(c.lam, rational(3, 2), p);
    c.big_l[1] = iv_add(c.smax, c.sqrt5lam, p);
    dyadic_interval smin_inv = iv_div(c.one, c.smin, p);
    c.big_l[2] = iv_add(smin_inv, c.sqrt5lam, p);
    dyadic_interval smin3 = iv_mul(c.smin, c.smin_sq, p);
    c.big_l[3] = iv_add(iv_div(c.one, smin3, p), c.lam, p);
    c.big_l_prod =
        iv_mul(iv_mul(c.big_l[0], c.big_l[1], p), iv_mul(c.big_l[2], c.big_l[3], p), p);
    return c;
}

const sampler_params::consts& sampler_params::at(long p) const {
    std::lock_guard<std::mutex> lock(cache_->mtx);
    auto it = cache_->by_prec.find(p);
    if (it == cache_->by_prec.end()) it = cache_->by_prec.emplace(p, build(p)).first;
    return it->second;  // std::map nodes are stable
}

// ---- one attempt ------------------------------------------------------------

namespace {

// Per-variable child stream indices under one attempt stream.
enum : std::uint64_t {
    var_tau = 0, var_sigma = 1, var_pi = 2, var_delta0 = 3, /* .. var_delta3 = 6 */
    var_keep = 7
};

// Trace tags, in algorithm order.
enum : std::uint8_t {
    tr_range_lo = 0, tr_range_hi,
    tr_floor_l1, tr_floor_l2, tr_floor_l3, tr_floor_l4,
    tr_thinning,
    tr_delta1, tr_delta2, tr_delta3, tr_delta4,
    tr_coeff_a, tr_coeff_b, tr_coeff_c, tr_coeff_d,
    tr_disc, tr_signature, tr_qball, tr_irreducible
};

dyadic_interval exact_halves(const bigint& n) {  // the point n/2
    return dyadic_interval::exact(dyadic(n, -1));
}

} // namespace

attempt_result attempt(const sampler_params& par, const random_stream& attempt_stream,
                       const sample_options& opt) {
    assert(opt.initial_precision >= 1);
    attempt_result res;
    lazy_uniform tau_u(attempt_stream.child(var_tau));
    lazy_uniform sig_u(attempt_stream.child(var_sigma));
    lazy_uniform pi_u(attempt_stream.child(var_pi));
    lazy_uniform delta_u[4] = {
        lazy_uniform(attempt_stream.child(var_delta0 + 0)),
        lazy_uniform(attempt_stream.child(var_delta0 + 1)),
        lazy_uniform(attempt_stream.child(var_delta0 + 2)),
        lazy_uniform(attempt_stream.child(var_delta0 + 3))};

    // Each iteration reruns every test from scratch at precision p; the only
    // state carried over is the revealed digits of the uniforms.  Tests are
    // strictly sequential: the first indeterminate comparison aborts the
    // iteration (retry at 2p), the first definitely-failed one rejects the
    // attempt.  That makes the recorded decision sequence of the deciding
    // iteration a pure function of the digit streams.
    for (long p = opt.initial_precision;; p *= 2) {
        const sampler_params::consts& C = par.at(p);
        res.trace.clear();
        auto trace_cmp = [&](std::uint8_t tag, bool truth) {
            if (opt.record_trace) res.trace.push_back(decision_step{tag, truth, bigint(0)});
        };
        auto trace_val = [&](std::uint8_t tag, const bigint& v) {
            if (opt.record_trace) res.trace.push_back(decision_step{tag, true, v});
        };
        auto rejected = [&](reject_reason why) {
            res.reject = why;
            res.precision = p;
        };

        // t = tau - 1/2 in (-1/2, 1/2)
        dyadic_interval tau = tau_u.interval(p);
        dyadic_interval sig = sig_u.interval(p);
        dyadic_interval t = iv_sub(tau, exact_halves(bigint(1)), p);

        // sigma range gate: smin^2/smax^2 < sigma < smin^2/sqrt(1 - t^2)
        trilean g1 = iv_less(C.sigma_lo, sig);
        if (g1 == trilean::unknown) continue;
        trace_cmp(tr_range_lo, g1 == trilean::yes);
        if (g1 == trilean::no) { rejected(reject_reason::range_s); return res; }

        dyadic_interval t2 = iv_square(t, p);
        dyadic_interval sig_ub = iv_div(C.smin_sq, iv_root(iv_sub(C.one, t2, p), 2, p), p);
        trilean g2 = iv_less(sig, sig_ub);
        if (g2 == trilean::unknown) continue;
        trace_cmp(tr_range_hi, g2 == trilean::yes);
        if (g2 == trilean::no) { rejected(reject_reason::range_s); return res; }

        // s = smin / sqrt(sigma); sides l_i of the search box at this s
        dyadic_interval s = iv_root(iv_div(C.smin_sq, sig, p), 2, p);
        dyadic_interval s2 = iv_mul(s, s, p);
        dyadic_interval s3 = iv_mul(s2, s, p);
        dyadic_interval l_iv[4] = {iv_div(C.lam, s3, p), iv_div(C.sqrt5lam, s, p),
                                   iv_mul(C.sqrt5lam, s, p), iv_mul(C.lam, s3, p)};
        bigint lp[4];
        bool again = false;
        for (int i = 0; i < 4 && !again; ++i) {
            auto f = floor_partial(iv_add(l_iv[i], C.one, p));  // l'_i = floor(1 + l_i)
            if (!f) { again = true; break; }
            lp[i] = std::move(*f);
            trace_val(static_cast<std::uint8_t>(tr_floor_l1 + i), lp[i]);
        }
        if (again) continue;

        // thinning: accept the (t, s) cell with probability prod l'_i / prod L'_i
        bigint lprod = lp[0] * lp[1] * lp[2] * lp[3];
        // The ratio is always in (0, 1]: each l'_i >= 1, and the paired products
        // l'_1 l'_4 and l'_2 l'_3 stay below L'_1 L'_4 and L'_2 L'_3 because
        // x + 1/x is maximized at the ends of [smin, smax].
        assert(sign(lprod) > 0);
        assert(iv_less(C.big_l_prod, dyadic_interval::exact(lprod)) != trilean::yes);
        trilean th = iv_less(iv_mul(pi_u.interval(p), C.big_l_prod, p),
                             dyadic_interval::exact(lprod));
        if (th == trilean::unknown) continue;
        trace_cmp(tr_thinning, th == trilean::yes);
        if (th == trilean::no) { rejected(reject_reason::thinning); return res; }

        // lattice offsets delta_i = floor(Delta_i l'_i) in {0, ..., l'_i - 1}
        bigint dl[4];
        for (int i = 0; i < 4 && !again; ++i) {
            auto f = floor_partial(iv_mul_int(delta_u[i].interval(p), lp[i]));
            if (!f) { again = true; break; }
            dl[i] = std::move(*f);
            trace_val(static_cast<std::uint8_t>(tr_delta1 + i), dl[i]);
        }
        if (again) continue;

        // Coefficients: least lattice point of n(t)-sheared centered box, plus
        // offsets.  Row i uses the inverse shear n(-t) applied to earlier
        // coefficients; a's corner is exact so a needs no interval at all.
        bigint av = -fdiv(lp[0], bigint(2)) + dl[0];  // ceil(-l'_1/2) + delta_1
        trace_val(tr_coeff_a, av);
        if (sign(av) == 0) { rejected(reject_reason::zero_a); return res; }

        auto ceil_coeff = [&](const dyadic_interval& arg) { return ceil_partial(arg); };

        // b = ceil(-l'_2/2 + 3 t a) + delta_2
        auto bv_c = ceil_coeff(iv_add(exact_halves(-lp[1]), iv_mul_int(t, 3 * av), p));
        if (!bv_c) continue;
        bigint bv = *bv_c + dl[1];
        trace_val(tr_coeff_b, bv);

        // c = ceil(-l'_3/2 - 3 t^2 a + 2 t b) + delta_3
        auto cv_c = ceil_coeff(iv_add(iv_add(exact_halves(-lp[2]), iv_mul_int(t2, -3 * av), p),
                                      iv_mul_int(t, 2 * bv), p));
        if (!cv_c) continue;
        bigint cv = *cv_c + dl[2];
        trace_val(tr_coeff_c, cv);

        // d = ceil(-l'_4/2 + t^3 a - t^2 b + t c) + delta_4
        dyadic_interval t3 = iv_mul(t2, t, p);
        auto dv_c = ceil_coeff(iv_add(iv_add(exact_halves(-lp[3]), iv_mul_int(t3, av), p),
                                      iv_add(iv_mul_int(t2, -bv), iv_mul_int(t, cv), p), p));
        if (!dv_c) continue;
        bigint dv = *dv_c + dl[3];
        trace_val(tr_coeff_d, dv);

        cubic_form f{av, bv, cv, dv};
        bigint D = discriminant(f);

        bool disc_ok = sign(D) != 0 && abs(D) <= par.bound();
        trace_cmp(tr_disc, disc_ok);
        if (!disc_ok) { rejected(reject_reason::disc); return res; }

        bool sig_ok = (sign(D) > 0) == (par.signature() == 3);
        trace_cmp(tr_signature, sig_ok);
        if (!sig_ok) { rejected(reject_reason::signature); return res; }

        // q-ball: s^6 q(a(s)^-1 n(-t) f) < s^6 R^2 |disc|^(1/2), both sides
        // multiplied out so only intervals for t and s enter.  With u = s^4
        // and (a1,b1,c1,d1) = n(-t) f:
        //   lhs = 5 a1^2 u^3 + (b1^2 + 2 a1 c1) u^2 + (c1^2 + 2 b1 d1) u + 5 d1^2
        dyadic_interval b1 = iv_add(dyadic_interval::exact(bv), iv_mul_int(t, -3 * av), p);
        dyadic_interval c1 = iv_add(iv_add(dyadic_interval::exact(cv), iv_mul_int(t, -2 * bv), p),
                                    iv_mul_int(t2, 3 * av), p);
        dyadic_interval d1 = iv_add(iv_add(dyadic_interval::exact(dv), iv_mul_int(t, -cv), p),
                                    iv_add(iv_mul_int(t2, bv), iv_mul_int(t3, -av), p), p);
        dyadic_interval u = iv_square(s2, p);
        dyadic_interval u2 = iv_square(u, p);
        dyadic_interval u3 = iv_mul(u2, u, p);
        dyadic_interval k2 = iv_add(iv_square(b1, p), iv_mul_int(c1, 2 * av), p);
        dyadic_interval k1 = iv_add(iv_square(c1, p), iv_scale2(iv_mul(b1, d1, p), 1), p);
        dyadic_interval lhs = iv_add(iv_add(iv_mul_int(u3, 5 * av * av), iv_mul(u2, k2, p), p),
                                     iv_add(iv_mul(u, k1, p), iv_mul_int(iv_square(d1, p), 5), p), p);
        dyadic_interval s6 = iv_mul(s2, u, p);
        dyadic_interval rhs = iv_scale_rational(
            iv_mul(s6, iv_root(dyadic_interval::exact(abs(D)), 2, p), p), par.radius_sq(), p);
        trilean qt = iv_less(lhs, rhs);
        if (qt == trilean::unknown) continue;
        trace_cmp(tr_qball, qt == trilean::yes);
        if (qt == trilean::no) { rejected(reject_reason::q_ball); return res; }

        bool irr = is_irreducible(f);
        trace_cmp(tr_irreducible, irr);
        if (!irr) { rejected(reject_reason::reducible); return res; }

        res.success = true;
        res.form = std::move(f);
        res.precision = p;
        return res;
    }
}

// ---- whole samples ----------------------------------------------------------

sample_result sample_weighted(const sampler_params& par, const random_stream& sample_stream,
                              const sample_options& opt) {
    for (std::uint64_t k = 0;; ++k) {
        attempt_result r = attempt(par, sample_stream.child(k), opt);
        if (r.success)
            return sample_result{std::move(r.form), bigint(k + 1), r.precision, 0};
    }
}

namespace {

// Exact Bernoulli(thr) from one lazy uniform: u < thr.
bool bernoulli(lazy_uniform& u, const rational& thr) {
    for (long p = 8;; p *= 2) {
        dyadic_interval iv = u.interval(p);
        if (cmp_rational(iv.hi, thr) < 0) return true;
        if (cmp_rational(iv.lo, thr) >= 0) return false;
    }
}

} // namespace

sample_result sample_uniform(const sampler_params& par, const random_stream& sample_stream,
                             const sample_options& opt) {
    for (std::uint64_t k = 0;; ++k) {
        random_stream att = sample_stream.child(k);
        attempt_result r = attempt(par, att, opt);
        if (!r.success) continue;
        // Weighted sampling hits an orbit with probability prop. to 3/stab;
        // keeping with probability stab/3 flattens that to uniform.
        int st = stab_order(r.form);
        if (st != 3) {
            lazy_uniform keep(att.child(var_keep));
            if (!bernoulli(keep, rational(st, 3))) continue;
        }
        return sample_result{std::move(r.form), bigint(k + 1), r.precision, st};
    }
}

std::vector<sample_result> draw_samples(const sampler_params& par, sample_mode mode,
                                        std::uint64_t seed, std::uint64_t count,
                                        const sample_options& opt, int jobs) {
    std::vector<sample_result> out(count);
    random_stream root = random_stream::from_seed(seed);
    auto one = [&](std::uint64_t i) {
        random_stream base = root.child(i);
        out[i] = mode == sample_mode::weighted ? sample_weighted(par, base, opt)
                                               : sample_uniform(par, base, opt);
    };
    if (jobs <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) one(i);
        return out;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (std::uint64_t i; (i = next.fetch_add(1)) < count;) one(i);
        });
    for (std::thread& th : pool) th.join();
    return out;
}

coeff_bounds sampling_box_bounds(const sampler_params& par) {
    const long p = 64;
    const sampler_params::consts& C = par.at(p);
    coeff_bounds r;
    // Worst cases of the coefficient recurrences over all admissible
    // (t, s, delta), i.e. |t| <= 1/2 and l'_i at its supremum L'_i:
    //   A = ceil(lam smin^-3), B = ceil(sqrt5 lam smin^-1 + (3/2) A),
    //   C = ceil(sqrt5 lam smax + 3A + B), D = ceil(lam smax^3 + A + B/2 + C/2);
    // each bounds the respective |coefficient| the sampler can emit.
    dyadic_interval smin3 = iv_mul(C.smin, C.smin_sq, p);
    r.A = ceil_int(iv_div(C.lam, smin3, p).hi);
    r.B = ceil_int(iv_add(iv_div(C.sqrt5lam, C.smin, p),
                          dyadic_interval::exact(dyadic(3 * r.A, -1)), p)
                       .hi);
    r.C = ceil_int(iv_add(iv_mul(C.sqrt5lam, C.smax, p),
                          dyadic_interval::exact(bigint(3 * r.A + r.B)), p)
                       .hi);
    // lam smax^3 = lam^2 / 2
    dyadic_interval lam_smax3 = iv_scale_rational(iv_mul(C.lam, C.lam, p), rational(1, 2), p);
    r.D = ceil_int(iv_add(lam_smax3,
                          dyadic_interval::exact(dyadic(2 * r.A + r.B + r.C, -1)), p)
                       .hi);
    return r;
}

} // namespace cubicrand
