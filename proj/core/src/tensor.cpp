#include "vmodel/tensor.hpp"

#include "vmodel/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace vmodel {

Tensor::Tensor(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (n == 0) throw PreconditionError("tensor over a zero-dimensional space");
    long double size = 1;
    for (std::size_t t = 0; t < k; ++t) size *= static_cast<long double>(n);
    if (size > static_cast<long double>(std::numeric_limits<Index>::max() / 2))
        throw PreconditionError("tensor index space n^k too large");
}

Tensor Tensor::scalar(std::size_t n, const GaussRational& value) {
    Tensor t(n, 0);
    t.add(Index{0}, value);
    return t;
}

Tensor Tensor::basis(std::size_t n, const Colors& colors) {
    Tensor t(n, colors.size());
    t.add(colors, GaussRational(1));
    return t;
}

Tensor Tensor::identity_form(std::size_t n) {
    Tensor t(n, 2);
    for (std::size_t c = 0; c < n; ++c) t.add(Colors{c, c}, GaussRational(1));
    return t;
}

Tensor Tensor::from_vector(std::span<const GaussRational> v) {
    Tensor t(v.size(), 1);
    for (std::size_t c = 0; c < v.size(); ++c) t.add(Index{c}, v[c]);
    return t;
}

Tensor::Index Tensor::index_of(std::span<const std::size_t> colors) const {
    if (colors.size() != k_) throw PreconditionError("color tuple has wrong length");
    Index idx = 0;
    for (auto c : colors) {
        if (c >= n_) throw PreconditionError("color out of range");
        idx = idx * n_ + c;
    }
    return idx;
}

Colors Tensor::colors_of(Index index) const {
    Colors colors(k_);
    for (std::size_t t = k_; t-- > 0;) {
        colors[t] = static_cast<std::size_t>(index % n_);
        index /= n_;
    }
    return colors;
}

GaussRational Tensor::at(std::span<const std::size_t> colors) const { return at_index(index_of(colors)); }

GaussRational Tensor::at_index(Index index) const {
    auto it = entries_.find(index);
    return it == entries_.end() ? GaussRational() : it->second;
}

GaussRational Tensor::value() const {
    if (k_ != 0) throw PreconditionError("value() of a tensor of positive order");
    return at_index(0);
}

void Tensor::add(Index index, const GaussRational& value) {
    if (value.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(index, value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

void Tensor::check_same_shape(const Tensor& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw PreconditionError("tensor shape mismatch");
}

Tensor& Tensor::operator+=(const Tensor& o) {
    check_same_shape(o);
    for (const auto& [idx, v] : o.entries_) add(idx, v);
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
    check_same_shape(o);
    for (const auto& [idx, v] : o.entries_) add(idx, -v);
    return *this;
}

Tensor& Tensor::operator*=(const GaussRational& c) {
    if (c.is_zero()) {
        entries_.clear();
        return *this;
    }
    for (auto& [idx, v] : entries_) v *= c;
    return *this;
}

bool operator<(const Tensor& a, const Tensor& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.k_ != b.k_) return a.k_ < b.k_;
    return a.entries_ < b.entries_;
}

std::string Tensor::dump() const {
    std::ostringstream out;
    for (const auto& [idx, v] : entries_) {
        auto colors = colors_of(idx);
        for (std::size_t t = 0; t < colors.size(); ++t) out << (t ? " " : "") << colors[t] + 1;
        out << (colors.empty() ? ": " : " : ") << v.str() << '\n';
    }
    return out.str();
}

bool is_orthogonal(const Matrix& m) {
    return m.rows() == m.cols() && m.transpose() * m == Matrix::identity(m.rows());
}

OrthogonalMap::OrthogonalMap(Matrix m) : m_(std::move(m)) {
    if (!is_orthogonal(m_)) throw PreconditionError("matrix is not orthogonal (g^T g != I)");
}

Tensor contract(const Tensor& t, std::size_t i, std::size_t j) {
    if (!(1 <= i && i < j && j <= t.k()))
        throw PreconditionError("contract: need 1 <= i < j <= k, got i=" + std::to_string(i) +
                                " j=" + std::to_string(j) + " k=" + std::to_string(t.k()));
    Tensor out(t.n(), t.k() - 2);
    Colors kept;
    for (const auto& [idx, v] : t.entries()) {
        auto colors = t.colors_of(idx);
        if (colors[i - 1] != colors[j - 1]) continue;
        kept.clear();
        for (std::size_t s = 0; s < colors.size(); ++s)
            if (s != i - 1 && s != j - 1) kept.push_back(colors[s]);
        out.add(kept, v);
    }
    return out;
}

GaussRational bilinear_form(const Tensor& a, const Tensor& b) {
    if (a.n() != b.n() || a.k() != b.k()) throw PreconditionError("bilinear_form: shape mismatch");
    GaussRational sum;
    const auto& small = a.nonzeros() <= b.nonzeros() ? a : b;
    const auto& large = a.nonzeros() <= b.nonzeros() ? b : a;
    for (const auto& [idx, v] : small.entries()) {
        auto it = large.entries().find(idx);
        if (it != large.entries().end()) sum += v * it->second;
    }
    return sum;
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
    if (a.n() != b.n()) throw PreconditionError("tensor_product: dimension mismatch");
    Tensor out(a.n(), a.k() + b.k());
    Tensor::Index shift = 1;
    for (std::size_t t = 0; t < b.k(); ++t) shift *= b.n();
    for (const auto& [ia, va] : a.entries())
        for (const auto& [ib, vb] : b.entries()) out.add(ia * shift + ib, va * vb);
    return out;
}

Tensor apply_orthogonal(const Matrix& g, const Tensor& t) {
    if (g.rows() != t.n() || g.cols() != t.n()) throw PreconditionError("apply_orthogonal: dimension mismatch");
    Tensor current = t;
    for (std::size_t slot = 0; slot < t.k(); ++slot) {
        Tensor next(t.n(), t.k());
        for (const auto& [idx, v] : current.entries()) {
            auto colors = current.colors_of(idx);
            std::size_t b = colors[slot];
            for (std::size_t a = 0; a < t.n(); ++a) {
                if (g(a, b).is_zero()) continue;
                colors[slot] = a;
                next.add(colors, g(a, b) * v);
            }
        }
        current = std::move(next);
    }
    return current;
}

namespace {

void check_uniform(std::span<const Tensor> ts) {
    for (const auto& t : ts)
        if (t.n() != ts.front().n() || t.k() != ts.front().k())
            throw PreconditionError("tensor list has mixed shapes");
}

}  // namespace

std::size_t span_rank(std::span<const Tensor> ts) {
    if (ts.empty()) return 0;
    check_uniform(ts);
    std::set<Tensor::Index> support;
    for (const auto& t : ts)
        for (const auto& [idx, v] : t.entries()) support.insert(idx);
    std::vector<Tensor::Index> columns(support.begin(), support.end());
    Matrix m(ts.size(), columns.size());
    for (std::size_t r = 0; r < ts.size(); ++r)
        for (std::size_t c = 0; c < columns.size(); ++c) m(r, c) = ts[r].at_index(columns[c]);
    return rank(m);
}

Matrix gram_matrix(std::span<const Tensor> ts) {
    check_uniform(ts);
    Matrix g(ts.size(), ts.size());
    for (std::size_t a = 0; a < ts.size(); ++a)
        for (std::size_t b = a; b < ts.size(); ++b) {
            g(a, b) = bilinear_form(ts[a], ts[b]);
            g(b, a) = g(a, b);
        }
    return g;
}

std::size_t gram_rank(std::span<const Tensor> ts) {
    if (ts.empty()) return 0;
    return rank(gram_matrix(ts));
}

bool SpanBasis::add(const Tensor& t) {
    if (!rows_.empty() && (t.n() != rows_.front().n() || t.k() != rows_.front().k()))
        throw PreconditionError("SpanBasis: tensor shape mismatch");
    Tensor residual = t;
    for (const auto& row : rows_) {
        if (residual.is_zero()) return false;
        Tensor::Index pivot = row.entries().begin()->first;
        // Rows are sorted by pivot; entries below the current pivot are final.
        if (residual.entries().begin()->first > pivot) continue;
        auto it = residual.entries().find(pivot);
        if (it == residual.entries().end()) continue;
        GaussRational factor = it->second;
        for (const auto& [idx, v] : row.entries()) residual.add(idx, -(factor * v));
    }
    if (residual.is_zero()) return false;
    residual *= residual.entries().begin()->second.inverse();
    auto pivot = residual.entries().begin()->first;
    auto pos = std::find_if(rows_.begin(), rows_.end(),
                            [&](const Tensor& r) { return r.entries().begin()->first > pivot; });
    rows_.insert(pos, std::move(residual));
    return true;
}

}  // namespace vmodel
