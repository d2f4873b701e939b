#ifndef CUBICRAND_BOX_LATTICE_HPP
#define CUBICRAND_BOX_LATTICE_HPP

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

#include "cubicrand/bigint.hpp"

namespace cubicrand {

// Axis-parallel box prod_i [a_i, a_i + l_i) with integer side lengths l_i >= 0.
// The corner type S is any ordered commutative-ring scalar (exact rationals,
// or intervals when corners are only partially known).
template <class S>
struct int_box {
    std::vector<S> lower;
    std::vector<bigint> sides;

    std::size_t dim() const { return lower.size(); }
};

// Lower-triangular unipotent matrix: unit diagonal, arbitrary entries below.
// rows[i] holds the entries m_ij for j < i.
template <class S>
struct lower_unipotent {
    std::vector<std::vector<S>> rows;

    static lower_unipotent identity(std::size_t n) {
        lower_unipotent m;
        m.rows.resize(n);
        for (std::size_t i = 0; i < n; ++i) m.rows[i].assign(i, S(0));
        return m;
    }

    std::size_t dim() const { return rows.size(); }

    // Forward substitution on M X = I; the inverse is again unipotent lower
    // triangular and needs no division.
    lower_unipotent inverse() const {
        std::size_t n = dim();
        lower_unipotent inv = identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                S acc = rows[i][j];
                for (std::size_t k = j + 1; k < i; ++k)
                    acc = acc + rows[i][k] * inv.rows[k][j];
                inv.rows[i][j] = S(0) - acc;
            }
        return inv;
    }

    std::vector<S> apply(const std::vector<S>& v) const {
        assert(v.size() == dim());
        std::vector<S> r = v;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                r[i] = r[i] + rows[i][j] * v[j];
        return r;
    }
};

// |Z^n intersect M I| = l_1 ... l_n: shearing a box whose sides are integers
// permutes the lattice cosets, so the count is the box volume exactly.
template <class S>
bigint count_points(const int_box<S>& box, const lower_unipotent<S>& m) {
    assert(box.dim() == m.dim());
    (void)m;  // the count never depends on the shear, only on the sides
    bigint n = 1;
    for (const bigint& l : box.sides) n *= l;
    return n;
}

// The bijection {0,...,l_1-1} x ... x {0,...,l_n-1} -> Z^n intersect M I
// underlying count_points: coordinate i is the least admissible value
// ceil(a_i - sum_{j<i} (M^-1)_ij v_j) plus the offset delta_i.  `ceil` is a
// partial ceiling on S (nullopt = not yet determined); if any coordinate is
// undetermined the whole sample is.
template <class S, class CeilFn>
std::optional<std::vector<bigint>> sample_point(const int_box<S>& box,
                                                const lower_unipotent<S>& m,
                                                const std::vector<bigint>& delta,
                                                CeilFn&& ceil) {
    std::size_t n = box.dim();
    assert(delta.size() == n && m.dim() == n);
    lower_unipotent<S> minv = m.inverse();
    std::vector<bigint> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        assert(delta[i] >= 0 && delta[i] < box.sides[i]);
        S x = box.lower[i];
        for (std::size_t j = 0; j < i; ++j)
            x = x - minv.rows[i][j] * S(v[j]);
        std::optional<bigint> c = ceil(x);
        if (!c) return std::nullopt;
        v[i] = *c + delta[i];
    }
    return v;
}

} // namespace cubicrand

#endif
