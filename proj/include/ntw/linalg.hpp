#pragma once

// Small exact linear algebra over Z and Q.  Matrices here are tiny (at most
// a handful of rows and columns), so clarity wins over asymptotics.

#include <algorithm>
#include <utility>
#include <vector>

#include "ntw/arith.hpp"

namespace ntw::linalg {

using ZMatrix = std::vector<std::vector<Integer>>;
using QMatrix = std::vector<std::vector<Rational>>;

inline ZMatrix to_z(const std::vector<IntVec>& rows) {
    ZMatrix m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<Integer> row;
        row.reserve(r.size());
        for (Int x : r) row.emplace_back(static_cast<long>(x));
        m.push_back(std::move(row));
    }
    return m;
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
inline Integer determinant(ZMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline QMatrix to_q(const std::vector<IntVec>& rows) {
    QMatrix m;
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (Int x : r) row.emplace_back(static_cast<long>(x));
        m.push_back(std::move(row));
    }
    return m;
}

inline std::size_t rank(const std::vector<IntVec>& rows) {
    if (rows.empty()) return 0;
    QMatrix m = to_q(rows);
    return rref(m).size();
}

/// Dimension of the affine hull of a point set (-1 for the empty set).
inline int affine_rank(const std::vector<IntVec>& pts) {
    if (pts.empty()) return -1;
    std::vector<IntVec> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        IntVec d(pts[i].size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = pts[i][k] - pts[0][k];
        diffs.push_back(std::move(d));
    }
    return static_cast<int>(rank(diffs));
}

/// Scales a rational vector to the primitive integer vector on the same ray.
inline IntVec primitive(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
    std::vector<Integer> z;
    Integer g = 0;
    for (const auto& x : v) {
        Integer y = x.get_num() * (l / x.get_den());
        g = gcd(g, y);
        z.push_back(y);
    }
    IntVec out;
    for (auto& y : z) out.push_back(to_int(g == 0 ? y : Integer(y / g)));
    return out;
}

/// Basis of the rational null space {x : rows * x = 0}, scaled to primitive integer vectors.
inline std::vector<IntVec> nullspace(const std::vector<IntVec>& rows, std::size_t cols) {
    std::vector<IntVec> basis;
    if (rows.empty()) {
        for (std::size_t i = 0; i < cols; ++i) {
            IntVec e(cols, 0);
            e[i] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    QMatrix m = to_q(rows);
    auto piv = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
        basis.push_back(primitive(v));
    }
    return basis;
}

/// Lattice basis of {x in Z^n : rows * x = 0}, via unimodular column reduction.
inline std::vector<IntVec> integer_kernel(const std::vector<IntVec>& rows, std::size_t n) {
    ZMatrix a = to_z(rows);
    ZMatrix u(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto combine = [&](std::size_t p, std::size_t j, const Integer& s, const Integer& t,
                       const Integer& x, const Integer& y) {
        // col_p <- s*col_p + t*col_j ; col_j <- x*col_p + y*col_j
        auto apply = [&](std::vector<Integer>& row) {
            Integer cp = row[p], cj = row[j];
            row[p] = s * cp + t * cj;
            row[j] = x * cp + y * cj;
        };
        for (auto& row : a) apply(row);
        for (auto& row : u) apply(row);
    };
    std::size_t piv = 0;
    for (std::size_t i = 0; i < a.size() && piv < n; ++i) {
        for (std::size_t j = piv + 1; j < n; ++j) {
            if (a[i][j] == 0) continue;
            Integer x = a[i][piv], y = a[i][j], g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            combine(piv, j, s, t, Integer(-y / g), Integer(x / g));
        }
        if (a[i][piv] != 0) ++piv;
    }
    std::vector<IntVec> basis;
    for (std::size_t c = piv; c < n; ++c) {
        IntVec v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = to_int(u[r][c]);
        basis.push_back(v);
    }
    return basis;
}

/// Lattice basis of Z^n intersected with the linear span of the given vectors.
inline std::vector<IntVec> saturated_span_basis(const std::vector<IntVec>& gens, std::size_t n) {
    if (rank(gens) == 0) return {};
    auto perp = nullspace(gens, n);
    return integer_kernel(perp, n);
}

/// Solves sum_i c_i * basis[i] = v exactly; the caller guarantees v lies in the span.
inline std::vector<Rational> coordinates(const std::vector<IntVec>& basis, const IntVec& v) {
    const std::size_t k = basis.size(), n = v.size();
    QMatrix m(n, std::vector<Rational>(k + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) m[r][c] = static_cast<long>(basis[c][r]);
        m[r][k] = static_cast<long>(v[r]);
    }
    auto piv = rref(m);
    if (!piv.empty() && piv.back() == k) throw InvalidInput("vector not in span of basis");
    std::vector<Rational> c(k, Rational(0));
    for (std::size_t i = 0; i < piv.size(); ++i) c[piv[i]] = m[i][k];
    return c;
}

/// Primitive normal of the hyperplane through d affinely independent points of Z^d.
inline IntVec hyperplane_normal(const std::vector<IntVec>& pts) {
    const std::size_t d = pts[0].size();
    std::vector<IntVec> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        IntVec x(d);
        for (std::size_t k = 0; k < d; ++k) x[k] = pts[i][k] - pts[0][k];
        diffs.push_back(std::move(x));
    }
    std::vector<Integer> normal(d);
    for (std::size_t col = 0; col < d; ++col) {
        ZMatrix minor;
        for (const auto& r : diffs) {
            std::vector<Integer> row;
            for (std::size_t k = 0; k < d; ++k)
                if (k != col) row.emplace_back(static_cast<long>(r[k]));
            minor.push_back(std::move(row));
        }
        Integer det = determinant(minor);
        normal[col] = (col % 2 == 0) ? det : Integer(-det);
    }
    Integer g = 0;
    for (auto& x : normal) g = gcd(g, x);
    IntVec out;
    for (auto& x : normal) out.push_back(g == 0 ? 0 : to_int(Integer(x / g)));
    return out;
}

inline Integer dot(const IntVec& a, const IntVec& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Integer(static_cast<long>(a[i])) * static_cast<long>(b[i]);
    return s;
}

}  // namespace ntw::linalg
