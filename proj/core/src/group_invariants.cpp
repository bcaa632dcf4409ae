#include "vmodel/group_invariants.hpp"

#include "vmodel/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace vmodel {

FiniteOrthogonalGroup::FiniteOrthogonalGroup(std::vector<Matrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw PreconditionError("group with no elements");
    n_ = elements_.front().rows();
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const auto& g = elements_[i];
        if (g.rows() != n_ || g.cols() != n_)
            throw PreconditionError("group element " + std::to_string(i + 1) + " has the wrong size");
        if (!is_orthogonal(g))
            throw PreconditionError("group element " + std::to_string(i + 1) + " is not orthogonal");
        for (std::size_t j = 0; j < i; ++j)
            if (elements_[j] == g) throw PreconditionError("group element " + std::to_string(i + 1) + " is repeated");
    }
    if (!contains(Matrix::identity(n_))) throw PreconditionError("group does not contain the identity");
    // A finite set of invertible maps closed under products is a group.
    for (std::size_t i = 0; i < elements_.size(); ++i)
        for (std::size_t j = 0; j < elements_.size(); ++j)
            if (!contains(elements_[i] * elements_[j]))
                throw PreconditionError("group is not closed: product of elements " + std::to_string(i + 1) + " and " +
                                        std::to_string(j + 1) + " is missing");
}

FiniteOrthogonalGroup FiniteOrthogonalGroup::generated_by(const std::vector<Matrix>& generators, std::size_t n,
                                                          std::size_t max_order) {
    std::vector<Matrix> elements{Matrix::identity(n)};
    for (std::size_t next = 0; next < elements.size(); ++next) {
        for (const auto& g : generators) {
            Matrix p = elements[next] * g;
            if (std::find(elements.begin(), elements.end(), p) == elements.end()) {
                elements.push_back(std::move(p));
                if (elements.size() > max_order) throw PreconditionError("generated group exceeds the order limit");
            }
        }
    }
    return FiniteOrthogonalGroup(std::move(elements));
}

bool FiniteOrthogonalGroup::contains(const Matrix& g) const {
    return std::find(elements_.begin(), elements_.end(), g) != elements_.end();
}

std::size_t invariant_dim_finite(const FiniteOrthogonalGroup& group, std::size_t k) {
    GaussRational sum;
    for (const auto& g : group.elements()) {
        GaussRational trace;
        for (std::size_t i = 0; i < group.n(); ++i) trace += g(i, i);
        sum += pow(trace, static_cast<unsigned>(k));
    }
    GaussRational avg = sum / GaussRational(static_cast<long>(group.order()));
    if (!avg.is_real() || !avg.re().is_integer() || avg.re().sign() < 0)
        throw InvariantError("character average " + avg.str() + " is not a nonnegative integer");
    return avg.re().num().get_ui();
}

std::vector<Tensor> fixed_subspace(const FiniteOrthogonalGroup& group, std::size_t k) {
    const std::size_t n = group.n();
    SpanBasis span;
    Tensor shape(n, k);
    Tensor::Index total = 1;
    for (std::size_t t = 0; t < k; ++t) total *= n;
    for (Tensor::Index idx = 0; idx < total; ++idx) {
        Tensor e = Tensor::basis(n, shape.colors_of(idx));
        Tensor averaged(n, k);
        for (const auto& g : group.elements()) averaged += apply_orthogonal(g, e);
        if (!averaged.is_zero()) span.add(averaged);
    }
    return span.rows();
}

std::vector<BrauerDiagram> brauer_diagrams(std::size_t k) {
    std::vector<BrauerDiagram> out;
    if (k % 2) return out;
    std::vector<bool> used(k, false);
    BrauerDiagram current;
    std::function<void()> extend = [&]() {
        std::size_t a = 0;
        while (a < k && used[a]) ++a;
        if (a == k) {
            out.push_back(current);
            return;
        }
        used[a] = true;
        for (std::size_t b = a + 1; b < k; ++b) {
            if (used[b]) continue;
            used[b] = true;
            current.emplace_back(a, b);
            extend();
            current.pop_back();
            used[b] = false;
        }
        used[a] = false;
    };
    extend();
    return out;
}

Tensor brauer_tensor(std::size_t n, std::size_t k, const BrauerDiagram& d) {
    if (d.size() * 2 != k) throw PreconditionError("Brauer diagram does not match k");
    Tensor t(n, k);
    Colors colors(k, 0);
    std::vector<std::size_t> pair_color(d.size(), 0);
    while (true) {
        for (std::size_t p = 0; p < d.size(); ++p) colors[d[p].first] = colors[d[p].second] = pair_color[p];
        t.add(colors, GaussRational(1));
        std::size_t p = 0;
        while (p < pair_color.size() && ++pair_color[p] == n) pair_color[p++] = 0;
        if (p == pair_color.size()) break;
    }
    return t;
}

std::size_t cycle_count(std::size_t k, const BrauerDiagram& d1, const BrauerDiagram& d2) {
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::size_t components = k;
    for (const auto* d : {&d1, &d2})
        for (auto [a, b] : *d) {
            auto ra = find(a), rb = find(b);
            if (ra != rb) {
                parent[ra] = rb;
                --components;
            }
        }
    return components;
}

Matrix brauer_gram(std::size_t n, std::size_t k) {
    auto diagrams = brauer_diagrams(k);
    Matrix g(diagrams.size(), diagrams.size());
    for (std::size_t a = 0; a < diagrams.size(); ++a)
        for (std::size_t b = a; b < diagrams.size(); ++b) {
            auto cycles = cycle_count(k, diagrams[a], diagrams[b]);
            g(a, b) = pow(GaussRational(static_cast<long>(n)), static_cast<unsigned>(cycles));
            g(b, a) = g(a, b);
        }
    return g;
}

std::size_t brauer_invariant_dim(std::size_t n, std::size_t k) {
    if (n == 0) throw PreconditionError("brauer_invariant_dim: n must be positive");
    if (k % 2) return 0;
    return rank(brauer_gram(n, k));
}

FiniteOrthogonalGroup spin_stabilizer(const std::vector<Vector>& points, const std::vector<GaussRational>& weights) {
    if (points.empty()) throw PreconditionError("spin_stabilizer: no points");
    if (points.size() != weights.size()) throw PreconditionError("spin_stabilizer: points and weights differ in number");
    const std::size_t n = points.front().size();
    const std::size_t m = points.size();

    // Greedy choice of points forming a basis of V.
    std::vector<std::size_t> basis_idx;
    {
        std::vector<Vector> chosen;
        for (std::size_t i = 0; i < m && chosen.size() < n; ++i) {
            chosen.push_back(points[i]);
            if (rank(Matrix::from_rows(chosen, n)) == chosen.size())
                basis_idx.push_back(i);
            else
                chosen.pop_back();
        }
    }
    if (basis_idx.size() < n)
        throw PreconditionError("spin points do not span V: span has dimension " + std::to_string(basis_idx.size()) +
                                " < n = " + std::to_string(n));

    std::vector<Vector> basis_cols;
    for (auto i : basis_idx) basis_cols.push_back(points[i]);
    const Matrix basis_inv = *inverse(Matrix::from_columns(basis_cols, n));
    const Matrix gram = gram_matrix(points);

    std::vector<Matrix> elements;
    std::vector<std::size_t> sigma(m);
    std::vector<bool> used(m, false);
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (i == m) {
            std::vector<Vector> images;
            for (auto b : basis_idx) images.push_back(points[sigma[b]]);
            Matrix g = Matrix::from_columns(images, n) * basis_inv;
            for (std::size_t j = 0; j < m; ++j)
                if (g.apply(points[j]) != points[sigma[j]]) return;
            if (!is_orthogonal(g)) throw InvariantError("form-preserving point permutation gave a non-orthogonal map");
            elements.push_back(std::move(g));
            return;
        }
        for (std::size_t t = 0; t < m; ++t) {
            if (used[t] || weights[t] != weights[i]) continue;
            bool ok = true;
            for (std::size_t j = 0; j <= i && ok; ++j) {
                std::size_t tj = j == i ? t : sigma[j];
                ok = gram(t, tj) == gram(i, j);
            }
            if (!ok) continue;
            used[t] = true;
            sigma[i] = t;
            assign(i + 1);
            used[t] = false;
        }
    };
    assign(0);
    return FiniteOrthogonalGroup(std::move(elements));
}

FiniteOrthogonalGroup parse_group(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    std::size_t n = 0;
    bool header = false;
    std::vector<Matrix> elements;
    std::size_t row = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream words_in(raw);
        std::vector<std::string> words;
        for (std::string w; words_in >> w;) words.push_back(w);
        if (words.empty()) continue;
        if (!header) {
            if (words.size() != 2 || words[0] != "group" || words[1].rfind("n=", 0) != 0)
                throw ParseError("expected 'group n=<n>' header", line);
            try {
                n = std::stoul(words[1].substr(2));
            } catch (const std::exception&) {
                throw ParseError("bad dimension in header", line);
            }
            if (n == 0) throw ParseError("dimension must be positive", line);
            header = true;
            continue;
        }
        if (words.size() == 1 && words[0] == "matrix") {
            if (!elements.empty() && row != n) throw ParseError("previous matrix has too few rows", line);
            elements.emplace_back(n, n);
            row = 0;
            continue;
        }
        if (elements.empty() || row == n) throw ParseError("matrix row outside a 'matrix' block", line);
        if (words.size() != n) throw ParseError("matrix row needs " + std::to_string(n) + " entries", line);
        for (std::size_t c = 0; c < n; ++c) {
            try {
                elements.back()(row, c) = GaussRational::parse(words[c]);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), line);
            }
        }
        ++row;
    }
    if (!header) throw ParseError("missing 'group' header");
    if (elements.empty()) throw ParseError("group file lists no matrices");
    if (row != n) throw ParseError("last matrix has too few rows");
    return FiniteOrthogonalGroup(std::move(elements));
}

std::string format_group(const FiniteOrthogonalGroup& group) {
    std::ostringstream out;
    out << "group n=" << group.n() << '\n';
    for (const auto& g : group.elements()) {
        out << "matrix\n";
        for (std::size_t r = 0; r < g.rows(); ++r) {
            for (std::size_t c = 0; c < g.cols(); ++c) out << (c ? " " : "") << g(r, c).str();
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace vmodel
