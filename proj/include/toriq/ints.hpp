#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace toriq {

// All lattice arithmetic is exact. Hermite intermediates overflow 64 bit
// even on small inputs, so entries are arbitrary-precision throughout.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int sign(const Int& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

// ---- vector helpers ----

inline bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

inline Int content(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

// divide by the gcd of the entries; direction is preserved, the zero
// vector stays zero
inline IntVec primitive(IntVec v) {
    Int g = content(v);
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

inline bool is_primitive(const IntVec& v) { return content(v) == 1; }

inline Int dot(const IntVec& u, const IntVec& v) {
    if (u.size() != v.size()) throw error("dot: length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline IntVec neg(IntVec v) {
    for (Int& x : v) x = -x;
    return v;
}

inline IntVec add(const IntVec& u, const IntVec& v) {
    if (u.size() != v.size()) throw error("add: length mismatch");
    IntVec w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
    return w;
}

inline IntVec sub(const IntVec& u, const IntVec& v) {
    if (u.size() != v.size()) throw error("sub: length mismatch");
    IntVec w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
    return w;
}

inline IntVec scale(const Int& c, IntVec v) {
    for (Int& x : v) x *= c;
    return v;
}

// a*u + b*v
inline IntVec combine(const Int& a, const IntVec& u, const Int& b, const IntVec& v) {
    IntVec w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = a * u[i] + b * v[i];
    return w;
}

inline bool lex_less(const IntVec& a, const IntVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline std::string to_string(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

// ---- matrices (row major) ----

struct IntMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;  // rows*cols entries

    IntMat() = default;
    IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    static IntMat identity(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMat from_rows(const std::vector<IntVec>& rws, std::size_t ncols) {
        IntMat m(rws.size(), ncols);
        for (std::size_t i = 0; i < rws.size(); ++i) {
            if (rws[i].size() != ncols) throw error("from_rows: ragged rows");
            for (std::size_t j = 0; j < ncols; ++j) m(i, j) = rws[i][j];
        }
        return m;
    }

    Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    IntVec row(std::size_t i) const {
        IntVec v(cols);
        for (std::size_t j = 0; j < cols; ++j) v[j] = (*this)(i, j);
        return v;
    }

    IntVec col(std::size_t j) const {
        IntVec v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }

    std::vector<IntVec> row_list() const {
        std::vector<IntVec> r;
        r.reserve(rows);
        for (std::size_t i = 0; i < rows; ++i) r.push_back(row(i));
        return r;
    }

    IntMat transpose() const {
        IntMat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const IntMat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator!=(const IntMat& o) const { return !(*this == o); }
};

inline IntVec mul(const IntMat& m, const IntVec& v) {
    if (m.cols != v.size()) throw error("mul: dimension mismatch");
    IntVec w(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
        w[i] = s;
    }
    return w;
}

inline IntMat mul(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) throw error("mul: dimension mismatch");
    IntMat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

// the canonical pairing of a linear form with a lattice vector
inline Int pairing(const IntVec& u, const IntVec& v) {
    if (u.size() != v.size()) throw error("pairing: length mismatch");
    return dot(u, v);
}

}  // namespace toriq
