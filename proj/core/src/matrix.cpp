#include "vmodel/matrix.hpp"

#include "vmodel/errors.hpp"

#include <utility>

namespace vmodel {

namespace {

// Element of Z[i], used only inside the fraction-free elimination.
struct GaussInt {
    mpz_class re;
    mpz_class im;

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// a / b where b is known to divide a in Z[i].
GaussInt exact_div(const GaussInt& a, const GaussInt& b) {
    mpz_class norm = b.re * b.re + b.im * b.im;
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    if (!mpz_divisible_p(re.get_mpz_t(), norm.get_mpz_t()) ||
        !mpz_divisible_p(im.get_mpz_t(), norm.get_mpz_t()))
        throw InvariantError("Bareiss step produced a non-exact quotient");
    mpz_divexact(re.get_mpz_t(), re.get_mpz_t(), norm.get_mpz_t());
    mpz_divexact(im.get_mpz_t(), im.get_mpz_t(), norm.get_mpz_t());
    return {re, im};
}

std::vector<std::vector<GaussInt>> to_gaussian_integers(const Matrix& m) {
    std::vector<std::vector<GaussInt>> out(m.rows(), std::vector<GaussInt>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class scale = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(r, c).re().den().get_mpz_t());
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(r, c).im().den().get_mpz_t());
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const auto& z = m(r, c);
            out[r][c].re = z.re().num() * (scale / z.re().den());
            out[r][c].im = z.im().num() * (scale / z.im().den());
        }
    }
    return out;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        GaussRational inv = m(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            GaussRational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussRational(1);
    return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns, std::size_t dim) {
    Matrix m(dim, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != dim) throw PreconditionError("column length mismatch");
        for (std::size_t r = 0; r < dim; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

Matrix Matrix::from_rows(std::span<const Vector> rows, std::size_t dim) {
    Matrix m(rows.size(), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != dim) throw PreconditionError("row length mismatch");
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vector Matrix::apply(std::span<const GaussRational> v) const {
    if (v.size() != cols_) throw PreconditionError("matrix-vector shape mismatch");
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
        }
    return out;
}

bool Matrix::is_zero() const {
    for (const auto& z : data_)
        if (!z.is_zero()) return false;
    return true;
}

std::size_t rank(const Matrix& m) {
    auto a = to_gaussian_integers(m);
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    GaussInt prev{1, 0};
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = exact_div(sub(mul(a[r][c], a[i][j]), mul(a[i][c], a[r][j])), prev);
            a[i][c] = GaussInt{0, 0};
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

std::vector<Vector> kernel(const Matrix& m) {
    Matrix red = m;
    auto pivots = rref(red);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = GaussRational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw PreconditionError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = GaussRational(1);
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
    return inv;
}

GaussRational dot(std::span<const GaussRational> a, std::span<const GaussRational> b) {
    if (a.size() != b.size()) throw PreconditionError("dot product length mismatch");
    GaussRational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

Matrix gram_matrix(std::span<const Vector> vectors) {
    Matrix g(vectors.size(), vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i; j < vectors.size(); ++j) {
            g(i, j) = dot(vectors[i], vectors[j]);
            g(j, i) = g(i, j);
        }
    return g;
}

}  // namespace vmodel
