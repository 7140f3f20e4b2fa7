#pragma once

#include "toriq/ints.hpp"

#include <optional>
#include <utility>

namespace toriq {

struct HnfResult {
    IntMat h;  // row Hermite normal form, h = u * m
    IntMat u;  // unimodular
};

// Row Hermite normal form with the usual canonical convention: pivots
// positive and strictly to the right as the row index grows, entries above
// a pivot reduced into [0, pivot), zero rows at the bottom.  The H part is
// the unique canonical representative of the row lattice of m.
inline HnfResult hnf(const IntMat& m) {
    IntMat h = m;
    IntMat u = IntMat::identity(m.rows);
    std::size_t row = 0;

    auto swap_rows = [&](std::size_t p, std::size_t q) {
        if (p == q) return;
        for (std::size_t j = 0; j < h.cols; ++j) std::swap(h(p, j), h(q, j));
        for (std::size_t j = 0; j < u.cols; ++j) std::swap(u(p, j), u(q, j));
    };
    auto addmul_row = [&](std::size_t dst, const Int& c, std::size_t src) {
        if (c == 0) return;
        for (std::size_t j = 0; j < h.cols; ++j) h(dst, j) += c * h(src, j);
        for (std::size_t j = 0; j < u.cols; ++j) u(dst, j) += c * u(src, j);
    };
    auto negate_row = [&](std::size_t p) {
        for (std::size_t j = 0; j < h.cols; ++j) h(p, j) = -h(p, j);
        for (std::size_t j = 0; j < u.cols; ++j) u(p, j) = -u(p, j);
    };

    for (std::size_t col = 0; col < h.cols && row < h.rows; ++col) {
        // euclidean elimination below the working row
        while (true) {
            std::size_t best = h.rows;
            for (std::size_t i = row; i < h.rows; ++i)
                if (h(i, col) != 0 && (best == h.rows || abs(h(i, col)) < abs(h(best, col))))
                    best = i;
            if (best == h.rows) break;  // column is zero from `row` down
            swap_rows(row, best);
            bool cleared = true;
            for (std::size_t i = row + 1; i < h.rows; ++i) {
                if (h(i, col) == 0) continue;
                Int q = floor_div(h(i, col), h(row, col));
                addmul_row(i, -q, row);
                if (h(i, col) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (h(row, col) == 0) continue;
        if (h(row, col) < 0) negate_row(row);
        for (std::size_t i = 0; i < row; ++i) {
            Int q = floor_div(h(i, col), h(row, col));
            addmul_row(i, -q, row);
        }
        ++row;
    }
    return {std::move(h), std::move(u)};
}

inline std::size_t rank_of_hnf(const IntMat& h) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < h.rows; ++i)
        if (!is_zero(h.row(i))) ++r;
    return r;
}

// A sublattice of Z^ambient_rank, stored by its canonical Hermite basis so
// that equality of sublattices is equality of representations.
struct Sublattice {
    std::size_t ambient_rank = 0;
    std::vector<IntVec> basis;  // canonical, linearly independent rows
    bool saturated = false;

    std::size_t rank() const { return basis.size(); }
    bool is_zero_lattice() const { return basis.empty(); }

    bool operator==(const Sublattice& o) const {
        return ambient_rank == o.ambient_rank && basis == o.basis;
    }
    bool operator!=(const Sublattice& o) const { return !(*this == o); }
};

inline IntMat basis_matrix(const Sublattice& l) {
    return IntMat::from_rows(l.basis, l.ambient_rank);
}

namespace detail {

inline std::vector<IntVec> hermite_rows(const std::vector<IntVec>& gens, std::size_t n) {
    if (gens.empty()) return {};
    HnfResult r = hnf(IntMat::from_rows(gens, n));
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < r.h.rows; ++i) {
        IntVec v = r.h.row(i);
        if (!is_zero(v)) rows.push_back(std::move(v));
    }
    return rows;
}

}  // namespace detail

// integer kernel {x : m x = 0}; always a saturated sublattice of Z^cols
inline Sublattice kernel_basis(const IntMat& m) {
    Sublattice k;
    k.ambient_rank = m.cols;
    k.saturated = true;
    if (m.cols == 0) return k;
    // rows of U opposite the zero rows of hnf(m^T) span the kernel, and
    // they are part of a basis of Z^cols, hence saturated
    HnfResult r = hnf(m.transpose());
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < r.h.rows; ++i)
        if (is_zero(r.h.row(i))) gens.push_back(r.u.row(i));
    k.basis = detail::hermite_rows(gens, m.cols);
    return k;
}

inline Sublattice kernel_basis_of_rows(const std::vector<IntVec>& rows, std::size_t n) {
    if (rows.empty()) {
        Sublattice full;
        full.ambient_rank = n;
        full.saturated = true;
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, 0);
            e[i] = 1;
            full.basis.push_back(std::move(e));
        }
        return full;
    }
    return kernel_basis(IntMat::from_rows(rows, n));
}

// smallest saturated sublattice containing the span of `gens`
inline Sublattice saturation_of(const std::vector<IntVec>& gens, std::size_t n) {
    Sublattice ortho = kernel_basis_of_rows(gens, n);
    Sublattice s = kernel_basis_of_rows(ortho.basis, n);
    return s;
}

inline Sublattice make_sublattice(const std::vector<IntVec>& gens, std::size_t n) {
    Sublattice l;
    l.ambient_rank = n;
    l.basis = detail::hermite_rows(gens, n);
    l.saturated = saturation_of(l.basis, n).basis == l.basis;
    return l;
}

inline Sublattice zero_sublattice(std::size_t n) {
    Sublattice l;
    l.ambient_rank = n;
    l.saturated = true;
    return l;
}

inline Sublattice saturate(const Sublattice& l) {
    return saturation_of(l.basis, l.ambient_rank);
}

inline bool lattice_contains(const Sublattice& l, const IntVec& v) {
    // reduce v by the Hermite basis; v is in the lattice iff it reduces to 0
    IntVec x = v;
    for (const IntVec& b : l.basis) {
        std::size_t p = 0;
        while (p < b.size() && b[p] == 0) ++p;
        if (p == b.size()) continue;
        Int q = floor_div(x[p], b[p]);
        if (q != 0) x = combine(1, x, -q, b);
        if (x[p] != 0) return false;
    }
    return is_zero(x);
}

// canonical representative of v modulo the lattice (entries over the pivot
// columns of the Hermite basis land in [0, pivot))
inline IntVec reduce_mod_lattice(IntVec v, const Sublattice& l) {
    for (const IntVec& b : l.basis) {
        std::size_t p = 0;
        while (p < b.size() && b[p] == 0) ++p;
        if (p == b.size()) continue;
        Int q = floor_div(v[p], b[p]);
        if (q != 0) v = combine(1, v, -q, b);
    }
    return v;
}

// right inverse over Z of a surjective integer matrix, if one exists
inline std::optional<IntMat> right_inverse(const IntMat& p) {
    if (p.rows == 0) return IntMat(p.cols, 0);
    HnfResult r = hnf(p.transpose());  // r.h = r.u * p^T
    if (r.h.rows < p.rows) return std::nullopt;
    // surjective iff the column lattice of p is all of Z^rows, i.e. the
    // Hermite form of p^T is the identity block over zero rows
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.rows; ++j)
            if (r.h(i, j) != Int(i == j ? 1 : 0)) return std::nullopt;
    for (std::size_t i = p.rows; i < r.h.rows; ++i)
        if (!is_zero(r.h.row(i))) return std::nullopt;
    IntMat inv(p.cols, p.rows);
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j) inv(j, i) = r.u(i, j);
    return inv;
}

// surjective projection N -> N/L in coordinates: the canonical Hermite
// basis of the dual lattice L^perp, one row per quotient coordinate.
// Requires L saturated; then the kernel is exactly L.
inline IntMat quotient_projection(std::size_t ambient_rank, const Sublattice& l) {
    if (l.ambient_rank != ambient_rank) throw error("quotient_projection: rank mismatch");
    if (!l.saturated) throw error("quotient_projection: sublattice is not saturated");
    Sublattice perp = kernel_basis_of_rows(l.basis, ambient_rank);
    return IntMat::from_rows(perp.basis, ambient_rank);
}

// exact determinant by fraction-free elimination (test support, small n)
inline Int determinant(const IntMat& m) {
    if (m.rows != m.cols) throw error("determinant: square matrix required");
    std::size_t n = m.rows;
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sgn > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

inline std::size_t rank_of(const std::vector<IntVec>& rows, std::size_t n) {
    return detail::hermite_rows(rows, n).size();
}

}  // namespace toriq
