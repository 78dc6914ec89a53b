#pragma once

#include "latpts/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace latpts {

/// Dense row-major matrix over an exact ring. Entry (i, j) is row i, column j.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {
        if (rows == 0 || cols == 0)
            throw DimensionError("matrix dimensions must be positive");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0)
            throw DimensionError("matrix dimensions must be positive");
        for (const auto &row : init) {
            if (row.size() != cols_)
                throw DimensionError("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    static Matrix diagonal(const std::vector<T> &d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    /// Matrix whose columns are the given vectors.
    static Matrix from_columns(const std::vector<std::vector<T>> &cols) {
        if (cols.empty())
            throw DimensionError("no columns");
        Matrix m(cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_)
                throw DimensionError("column length mismatch");
            for (std::size_t i = 0; i < m.rows_; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const T &at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw DimensionError("matrix index out of range");
        return (*this)(i, j);
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_)
            throw DimensionError("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix &a, const std::vector<T> &v) {
        if (a.cols_ != v.size())
            throw DimensionError("matrix-vector shape mismatch");
        std::vector<T> out(a.rows_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                out[i] += a(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

inline RationalMatrix to_rational(const IntegerMatrix &m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rational(m(i, j));
    return r;
}

inline RationalVector to_rational(const IntegerVector &v) {
    return RationalVector(v.begin(), v.end());
}

/// Throws InvariantError if any entry is not an integer.
inline IntegerMatrix to_integer(const RationalMatrix &m) {
    IntegerMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!is_integer(m(i, j)))
                throw InvariantError("matrix entry is not an integer");
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

/// Bareiss fraction-free elimination.
inline Integer determinant(const IntegerMatrix &input) {
    if (!input.square())
        throw DimensionError("determinant of non-square matrix");
    IntegerMatrix m = input;
    const std::size_t n = m.rows();
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Clears denominators row by row, then runs Bareiss.
inline Rational determinant(const RationalMatrix &m) {
    if (!m.square())
        throw DimensionError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    IntegerMatrix scaled(n, n);
    Integer scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j)
            scaled(i, j) = Rational(m(i, j) * l).get_num();
        scale *= l;
    }
    return make_rational(determinant(scaled), scale);
}

/// Gauss-Jordan inverse; throws RankError if singular.
inline RationalMatrix inverse(const RationalMatrix &input) {
    if (!input.square())
        throw DimensionError("inverse of non-square matrix");
    const std::size_t n = input.rows();
    RationalMatrix a = input;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0)
            ++p;
        if (p == n)
            throw RankError("matrix is singular");
        a.swap_rows(c, p);
        inv.swap_rows(c, p);
        Rational piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0)
                continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

inline std::size_t rank(const RationalMatrix &input) {
    RationalMatrix a = input;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        a.swap_rows(r, p);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0)
                continue;
            Rational f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

inline std::size_t rank(const std::vector<RationalVector> &vectors) {
    if (vectors.empty())
        return 0;
    return rank(RationalMatrix::from_columns(vectors).transpose());
}

}  // namespace latpts
