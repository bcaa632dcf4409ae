#pragma once

#include "vmodel/matrix.hpp"
#include "vmodel/scalar.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace vmodel {

// Color tuple phi: [k] -> [n], stored 0-based.
using Colors = std::vector<std::size_t>;

// Sparse element of V^{(x)k} with dim V = n, in the basis e_phi. Only
// nonzero coefficients are stored; entries are keyed by the base-n number
// whose most significant digit is phi(1), so map order is lexicographic.
class Tensor {
public:
    using Index = std::uint64_t;

    Tensor(std::size_t n, std::size_t k);

    static Tensor scalar(std::size_t n, const GaussRational& value);
    static Tensor basis(std::size_t n, const Colors& colors);
    // sum_c e_c (x) e_c
    static Tensor identity_form(std::size_t n);
    static Tensor from_vector(std::span<const GaussRational> v);

    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    const std::map<Index, GaussRational>& entries() const { return entries_; }
    std::size_t nonzeros() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    Index index_of(std::span<const std::size_t> colors) const;
    Colors colors_of(Index index) const;

    GaussRational at(std::span<const std::size_t> colors) const;
    GaussRational at_index(Index index) const;
    // Scalar value of an order-0 tensor.
    GaussRational value() const;

    void add(Index index, const GaussRational& value);
    void add(std::span<const std::size_t> colors, const GaussRational& value) { add(index_of(colors), value); }

    Tensor& operator+=(const Tensor& o);
    Tensor& operator-=(const Tensor& o);
    Tensor& operator*=(const GaussRational& c);
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(const GaussRational& c, Tensor t) { return t *= c; }

    friend bool operator==(const Tensor&, const Tensor&) = default;
    friend bool operator<(const Tensor& a, const Tensor& b);

    // One line per entry, `c1 c2 ... ck : scalar` with 1-based colors.
    std::string dump() const;

private:
    void check_same_shape(const Tensor& o) const;

    std::size_t n_;
    std::size_t k_;
    std::map<Index, GaussRational> entries_;
};

// n x n matrix with g^T g = I, checked on construction.
class OrthogonalMap {
public:
    explicit OrthogonalMap(Matrix m);
    static OrthogonalMap identity(std::size_t n) { return OrthogonalMap(Matrix::identity(n)); }

    const Matrix& matrix() const { return m_; }
    std::size_t n() const { return m_.rows(); }

    friend OrthogonalMap operator*(const OrthogonalMap& a, const OrthogonalMap& b) {
        return OrthogonalMap(a.m_ * b.m_);
    }
    OrthogonalMap inverse() const { return OrthogonalMap(m_.transpose()); }
    friend bool operator==(const OrthogonalMap&, const OrthogonalMap&) = default;

private:
    Matrix m_;
};

bool is_orthogonal(const Matrix& m);

// Pairs slots i < j (1-based) through the form and drops them.
Tensor contract(const Tensor& t, std::size_t i, std::size_t j);
// sum_phi a(phi) b(phi); bilinear, no conjugation.
GaussRational bilinear_form(const Tensor& a, const Tensor& b);
Tensor tensor_product(const Tensor& a, const Tensor& b);
// g (x) ... (x) g applied to t.
Tensor apply_orthogonal(const Matrix& g, const Tensor& t);
inline Tensor apply_orthogonal(const OrthogonalMap& g, const Tensor& t) { return apply_orthogonal(g.matrix(), t); }

// Dimension of the linear span (fraction-free elimination on the support columns).
std::size_t span_rank(std::span<const Tensor> ts);
Matrix gram_matrix(std::span<const Tensor> ts);
// Rank of the Gram matrix; below span_rank when the span has isotropic directions.
std::size_t gram_rank(std::span<const Tensor> ts);

// Incrementally maintained echelon basis of a span of tensors.
class SpanBasis {
public:
    // Returns true when t enlarged the span.
    bool add(const Tensor& t);
    std::size_t dimension() const { return rows_.size(); }
    // The basis vectors (reduced rows, each with leading coefficient 1).
    const std::vector<Tensor>& rows() const { return rows_; }

private:
    std::vector<Tensor> rows_;  // sorted by pivot index
};

}  // namespace vmodel
