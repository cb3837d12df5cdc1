#pragma once

// Dense rational matrices and the exact linear algebra the rest of the
// library is built on: fraction-free rank/determinant, kernels, solving.

#include "fewxc/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fewxc {

class RMatrix {
public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

    static RMatrix identity(std::size_t n) {
        RMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RMatrix from_rows(const std::vector<RVector>& rows) {
        if (rows.empty()) return RMatrix(0, 0);
        RMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) {
        check(i, j);
        return entries_[i * cols_ + j];
    }
    const Rational& operator()(std::size_t i, std::size_t j) const {
        check(i, j);
        return entries_[i * cols_ + j];
    }

    RVector row(std::size_t i) const {
        RVector r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    RMatrix transposed() const {
        RMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> entries_;
};

inline Rational dot(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RVector sub(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: size mismatch");
    RVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RVector add(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: size mismatch");
    RVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RVector scaled(const RVector& a, const Rational& t) {
    RVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * t;
    return r;
}

inline bool is_zero(const RVector& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

// Scales a nonzero rational vector by a positive factor so that its entries
// are coprime integers. Positive scaling only: orientation is preserved.
inline RVector primitive(const RVector& v) {
    Integer lcm(1);
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    Integer gcd(0);
    std::vector<Integer> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = Integer(v[i] * lcm);
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (gcd == 0) return RVector(v.size(), Rational(0));
    RVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(ints[i] / gcd);
    return r;
}

// Primitive integer form with the first nonzero entry positive; canonical
// representative of a line/direction regarded up to nonzero scaling.
inline RVector primitive_signed(const RVector& v) {
    RVector r = primitive(v);
    for (const auto& x : r) {
        if (x > 0) return r;
        if (x < 0) return scaled(r, Rational(-1));
    }
    return r;
}

namespace detail {

// Clears denominators row by row; rank and kernels are unaffected.
inline std::vector<std::vector<Integer>> integer_rows(const RMatrix& m) {
    std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer lcm(1);
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j)
            rows[i][j] = Integer(m(i, j) * lcm);
    }
    return rows;
}

} // namespace detail

// Exact rank via fraction-free (Bareiss) elimination on the
// denominator-cleared integer matrix. Keeps intermediate growth polynomial.
inline std::size_t rank(const RMatrix& m) {
    auto a = detail::integer_rows(m);
    const std::size_t nr = a.size(), nc = nr ? a[0].size() : 0;
    Integer prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = r;
        while (piv < nr && a[piv][c] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(a[r], a[piv]);
        for (std::size_t i = r + 1; i < nr; ++i) {
            for (std::size_t j = c + 1; j < nc; ++j)
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

// Determinant of a square matrix by the same fraction-free scheme, with the
// cleared denominators divided back out.
inline Rational det(const RMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    Rational denom(1);
    auto a = detail::integer_rows(m);
    for (std::size_t i = 0; i < n; ++i) {
        Integer lcm(1);
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den().get_mpz_t());
        denom *= Rational(lcm);
    }
    Integer prev(1);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            std::swap(a[c], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    Rational d(a[n - 1][n - 1]);
    if (sign < 0) d = -d;
    return d / denom;
}

namespace detail {

// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(RMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(r, piv);
        const Rational inv = Rational(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace detail

// Basis of the right kernel {x : Mx = 0}; basis size = cols - rank.
inline std::vector<RVector> null_space(const RMatrix& m) {
    RMatrix a = m;
    const auto pivots = detail::rref(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<RVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RVector v(m.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of Ax = b, or nullopt when inconsistent.
inline std::optional<RVector> solve(const RMatrix& a, const RVector& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve: size mismatch");
    RMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const auto pivots = detail::rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    RVector x(a.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

} // namespace fewxc
