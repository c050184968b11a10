#pragma once

#include "leibniz/poly.hpp"
#include "leibniz/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace leibniz {

using Vec = std::vector<Rational>;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("Matrix: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    T& at(std::size_t i, std::size_t j) {
        check(i, j);
        return (*this)(i, j);
    }
    const T& at(std::size_t i, std::size_t j) const {
        check(i, j);
        return (*this)(i, j);
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + static_cast<long>(i * cols_),
                              data_.begin() + static_cast<long>((i + 1) * cols_));
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        a.same_shape(b);
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        a.same_shape(b);
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
        return a;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
            }
        return c;
    }
    friend Matrix operator*(const Rational& s, Matrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_upper_triangular() const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < i && j < cols_; ++j)
                if (!(*this)(i, j).is_zero()) return false;
        return true;
    }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("Matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") out of " +
                                    std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    void same_shape(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using PMatrix = Matrix<MultiPoly>;

struct Rref {
    QMatrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

// Gauss-Jordan with fixed pivot order: columns left to right, first nonzero
// row at or below the current one. Row updates for a pivot are independent and
// run under OpenMP when `parallel` is set; results are identical either way.
Rref rref(QMatrix a, bool parallel = true);

std::size_t rank(const QMatrix& a);

// One basis vector per free column: 1 at the free column, -R(r,f) at pivots.
std::vector<Vec> nullspace(const QMatrix& a);

struct LinearSolution {
    std::optional<Vec> particular;  // empty when inconsistent
    std::vector<Vec> nullspace;
    bool consistent() const { return particular.has_value(); }
};

LinearSolution solve_linear_system(const QMatrix& a, const Vec& b);

// M^d == 0 for a d x d matrix.
bool matrix_is_nilpotent(const QMatrix& m);

QMatrix inverse(const QMatrix& m);  // throws std::domain_error if singular

Vec mat_vec(const QMatrix& m, const Vec& v);
Vec vec_mat(const Vec& v, const QMatrix& m);  // row vector times matrix

bool is_zero_vec(const Vec& v);

// Rank of the span of a list of vectors of equal length.
std::size_t span_rank(const std::vector<Vec>& vs, std::size_t len);

// Evaluate a symbolic matrix at constants for every indeterminate.
QMatrix evaluate(const PMatrix& m, const std::map<std::string, Rational>& values);

std::string to_string(const QMatrix& m);

}  // namespace leibniz
