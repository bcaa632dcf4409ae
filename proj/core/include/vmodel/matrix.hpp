#pragma once

#include "vmodel/scalar.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace vmodel {

using Vector = std::vector<GaussRational>;

// Dense row-major matrix over Q(i).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    // Matrix whose columns are the given vectors (all of equal length).
    static Matrix from_columns(std::span<const Vector> columns, std::size_t dim);
    static Matrix from_rows(std::span<const Vector> rows, std::size_t dim);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GaussRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const GaussRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;

    Matrix transpose() const;
    Vector apply(std::span<const GaussRational> v) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

    bool is_zero() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussRational> data_;
};

// Exact rank. Rows are scaled to Gaussian integers and reduced with
// Bareiss' fraction-free elimination; pivots are the first nonzero entry
// in row order within each column, so the run is reproducible.
std::size_t rank(const Matrix& m);

// Basis of {x : m x = 0}, from the reduced row echelon form.
std::vector<Vector> kernel(const Matrix& m);

// Inverse of a square matrix; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

// Standard symmetric bilinear form sum_i a_i b_i (no conjugation).
GaussRational dot(std::span<const GaussRational> a, std::span<const GaussRational> b);

// Gram matrix of the standard form on the given vectors.
Matrix gram_matrix(std::span<const Vector> vectors);

}  // namespace vmodel
