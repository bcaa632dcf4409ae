#include "vmodel/spin_analysis.hpp"

#include "vmodel/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace vmodel {

namespace {

using Poly = std::map<Exponent, GaussRational>;

Poly multiply(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exponent e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            auto& slot = out[e];
            slot += ca * cb;
            if (slot.is_zero()) out.erase(e);
        }
    return out;
}

Matrix antidiagonal(std::size_t n) {
    Matrix j(n, n);
    for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = GaussRational(1);
    return j;
}

GaussRational power_of(const Rational& t, int d) {
    GaussRational base = d >= 0 ? GaussRational(t) : GaussRational(t).inverse();
    return pow(base, static_cast<unsigned>(d >= 0 ? d : -d));
}

Vector scaled(const Vector& v, const GaussRational& c) {
    Vector out = v;
    for (auto& x : out) x *= c;
    return out;
}

Vector axpy(const Vector& y, const GaussRational& a, const Vector& x) {
    Vector out = y;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * x[i];
    return out;
}

// Basis of span(points) via row reduction order: greedy independent subset.
std::vector<Vector> span_basis(const std::vector<Vector>& points, std::size_t n) {
    std::vector<Vector> basis;
    for (const auto& p : points) {
        basis.push_back(p);
        if (rank(Matrix::from_rows(basis, n)) < basis.size()) basis.pop_back();
    }
    return basis;
}

}  // namespace

Matrix one_param_at(const OneParamSubgroup& lambda, const Rational& t) {
    if (t.is_zero()) throw PreconditionError("one-parameter subgroup evaluated at t = 0");
    const std::size_t n = lambda.n();
    auto inv = inverse(lambda.basis);
    if (!inv) throw PreconditionError("one-parameter subgroup basis is singular");
    Matrix diag(n, n);
    for (std::size_t i = 0; i < n; ++i) diag(i, i) = power_of(t, lambda.weights.at(i));
    return lambda.basis * diag * *inv;
}

OneParamCheck verify_one_param(const OneParamSubgroup& lambda, const std::vector<Rational>& samples) {
    const std::size_t n = lambda.basis.rows();
    if (lambda.basis.cols() != n || n == 0) return {false, "basis must be a nonempty square matrix"};
    if (lambda.weights.size() != n)
        return {false, "expected " + std::to_string(n) + " weights, got " + std::to_string(lambda.weights.size())};
    if (lambda.basis.transpose() * lambda.basis != antidiagonal(n))
        return {false, "basis Gram matrix is not the anti-diagonal identity"};
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (lambda.weights[i] < lambda.weights[i + 1])
            return {false, "weights are not non-increasing at position " + std::to_string(i + 1)};
    for (std::size_t i = 0; i < n; ++i)
        if (lambda.weights[i] != -lambda.weights[n - 1 - i])
            return {false, "weight d_" + std::to_string(i + 1) + " != -d_" + std::to_string(n - i)};

    // t^{2D} (lambda(t)^T lambda(t) - I) has polynomial entries of degree <= 4D.
    int max_weight = 0;
    for (int d : lambda.weights) max_weight = std::max(max_weight, std::abs(d));
    const std::size_t needed = 4 * static_cast<std::size_t>(max_weight) + 1;
    std::vector<Rational> points = samples;
    if (points.empty())
        for (std::size_t s = 1; s <= needed; ++s) points.emplace_back(static_cast<long>(s));
    std::set<Rational> distinct;
    for (const auto& t : points)
        if (!t.is_zero()) distinct.insert(t);
    if (distinct.size() < needed)
        return {false, "need " + std::to_string(needed) + " distinct nonzero sample points"};
    const Matrix identity = Matrix::identity(n);
    for (const auto& t : points) {
        if (t.is_zero()) continue;
        Matrix g = one_param_at(lambda, t);
        if (g.transpose() * g != identity) return {false, "lambda(" + t.str() + ") is not orthogonal"};
    }
    return {true, ""};
}

bool orbit_closed(const std::vector<Vector>& points) {
    if (points.empty()) return true;
    const std::size_t n = points.front().size();
    return rank(gram_matrix(points)) == rank(Matrix::from_rows(points, n));
}

VertexModel compose_linear(const VertexModel& h, const Matrix& m, unsigned e) {
    const std::size_t n = h.n();
    if (m.rows() != n || m.cols() != n) throw PreconditionError("compose_linear: matrix has the wrong size");
    // powers[j][p] = (sum_c m[j][c] x_c)^p
    std::vector<std::vector<Poly>> powers(n);
    for (std::size_t j = 0; j < n; ++j) {
        Poly linear;
        for (std::size_t c = 0; c < n; ++c) {
            if (m(j, c).is_zero()) continue;
            Exponent x(n, 0);
            x[c] = 1;
            linear[x] = m(j, c);
        }
        powers[j].push_back(Poly{{Exponent(n, 0), GaussRational(1)}});
        for (unsigned p = 1; p <= e; ++p) powers[j].push_back(multiply(powers[j].back(), linear));
    }
    std::map<Exponent, GaussRational> values;
    auto value_of = [&](const Exponent& alpha) -> const GaussRational& {
        auto it = values.find(alpha);
        if (it == values.end()) it = values.emplace(alpha, h.eval(alpha)).first;
        return it->second;
    };
    VertexModel out(n);
    for (const auto& beta : exponents_up_to(n, e)) {
        Poly expanded{{Exponent(n, 0), GaussRational(1)}};
        for (std::size_t j = 0; j < n; ++j)
            if (beta[j]) expanded = multiply(expanded, powers[j][beta[j]]);
        GaussRational v;
        for (const auto& [alpha, coeff] : expanded) v += coeff * value_of(alpha);
        out.set(beta, v);
    }
    return VertexModel::from_support(n, out.support(), e);
}

std::optional<VertexModel> apply_limit(const OneParamSubgroup& lambda, const VertexModel& h, unsigned e) {
    const std::size_t n = h.n();
    if (lambda.n() != n) throw PreconditionError("apply_limit: dimension mismatch");
    auto basis_inv = inverse(lambda.basis);
    if (!basis_inv) throw PreconditionError("apply_limit: basis is singular");
    // Coefficients in the monomials of the coordinates dual to v_1..v_n.
    VertexModel in_weight_basis = compose_linear(h, *basis_inv, e);
    std::map<Exponent, GaussRational> surviving;
    for (const auto& [alpha, v] : in_weight_basis.support()) {
        long weight = 0;
        for (std::size_t i = 0; i < n; ++i) weight += static_cast<long>(alpha[i]) * lambda.weights[i];
        if (weight < 0) return std::nullopt;
        if (weight == 0) surviving[alpha] = v;
    }
    return compose_linear(VertexModel::from_support(n, surviving, e), lambda.basis, e);
}

std::vector<Vector> canonical_basis(const std::vector<Vector>& vectors, std::size_t n) {
    // Diagonalize the form: orthogonal basis with nonzero self-products.
    std::vector<Vector> rest = span_basis(vectors, n);
    std::vector<Vector> orth;
    std::vector<GaussRational> norms;
    while (!rest.empty()) {
        std::optional<Vector> pick;
        std::size_t drop = rest.size();
        for (std::size_t a = 0; a < rest.size() && !pick; ++a)
            if (!dot(rest[a], rest[a]).is_zero()) {
                pick = rest[a];
                drop = a;
            }
        for (std::size_t a = 0; a < rest.size() && !pick; ++a)
            for (std::size_t b = a + 1; b < rest.size() && !pick; ++b)
                if (!dot(rest[a], rest[b]).is_zero()) {
                    pick = axpy(rest[a], GaussRational(1), rest[b]);
                    drop = a;
                }
        if (!pick) throw PreconditionError("canonical_basis: the form is degenerate on the given span");
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(drop));
        GaussRational c = dot(*pick, *pick);
        for (auto& w : rest) w = axpy(w, -(dot(w, *pick) / c), *pick);
        rest = span_basis(rest, n);
        orth.push_back(*pick);
        norms.push_back(c);
    }

    // Pair w_a, w_b into a hyperbolic pair when -c_a/c_b is a square; a
    // leftover w needs sqrt(c). Backtracks over all pairings.
    const std::size_t m = orth.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::optional<std::size_t> single;
    std::vector<bool> used(m, false);
    std::string blocker;
    std::function<bool()> search = [&]() -> bool {
        std::size_t a = 0;
        while (a < m && used[a]) ++a;
        if (a == m) return true;
        used[a] = true;
        for (std::size_t b = a + 1; b < m; ++b) {
            if (used[b]) continue;
            GaussRational ratio = -(norms[a] / norms[b]);
            if (!ratio.sqrt()) {
                if (blocker.empty()) blocker = ratio.str();
                continue;
            }
            used[b] = true;
            pairs.emplace_back(a, b);
            if (search()) return true;
            pairs.pop_back();
            used[b] = false;
        }
        std::size_t remaining = 0;
        for (std::size_t i = 0; i < m; ++i) remaining += used[i] ? 0 : 1;
        if (!single && m % 2 == 1 && remaining % 2 == 0) {
            if (norms[a].sqrt()) {
                single = a;
                if (search()) return true;
                single.reset();
            } else if (blocker.empty()) {
                blocker = norms[a].str();
            }
        }
        used[a] = false;
        return false;
    };
    if (!search())
        throw PreconditionError("canonical basis needs the square root of " + (blocker.empty() ? std::string("?") : blocker) +
                                ", which is not in Q(i)");

    std::vector<Vector> left;
    std::vector<Vector> right;
    for (auto [a, b] : pairs) {
        GaussRational mu = *(-(norms[a] / norms[b])).sqrt();
        left.push_back(axpy(orth[a], mu, orth[b]));
        right.push_back(scaled(axpy(orth[a], -mu, orth[b]), (GaussRational(2) * norms[a]).inverse()));
    }
    std::vector<Vector> out = left;
    if (single) out.push_back(scaled(orth[*single], norms[*single].sqrt()->inverse()));
    out.insert(out.end(), right.rbegin(), right.rend());
    return out;
}

OneParamSubgroup degenerate_witness(const std::vector<Vector>& points, const std::vector<GaussRational>& weights) {
    if (points.size() != weights.size()) throw PreconditionError("degenerate_witness: points and weights differ in number");
    if (orbit_closed(points))
        throw PreconditionError("degenerate_witness: the form is nondegenerate on span(u); the orbit is closed");
    const std::size_t n = points.front().size();

    auto basis = span_basis(points, n);
    auto radical_coeffs = kernel(gram_matrix(basis));
    Vector r(n);
    for (std::size_t i = 0; i < basis.size(); ++i) r = axpy(r, radical_coeffs.front()[i], basis[i]);

    // Hyperbolic partner s: <r, s> = 1, <s, s> = 0.
    std::size_t j = 0;
    while (r[j].is_zero()) ++j;
    Vector x(n);
    x[j] = r[j].inverse();
    Vector s = axpy(x, -(dot(x, x) / GaussRational(2)), r);

    std::vector<Vector> middle;
    if (n > 2) {
        auto complement = kernel(Matrix::from_rows(std::vector<Vector>{r, s}, n));
        middle = canonical_basis(complement, n);
    }

    std::vector<Vector> columns{r};
    columns.insert(columns.end(), middle.begin(), middle.end());
    columns.push_back(s);
    OneParamSubgroup lambda{Matrix::from_columns(columns, n), std::vector<int>(n, 0)};
    lambda.weights.front() = 1;
    lambda.weights.back() = -1;
    auto check = verify_one_param(lambda);
    if (!check.ok) throw InvariantError("constructed witness fails verification: " + check.reason);
    return lambda;
}

NormalizedSpin normalize_spin(std::size_t n, const std::vector<Vector>& points,
                              const std::vector<GaussRational>& weights, unsigned e) {
    NormalizedSpin out;
    out.degree = std::max<unsigned>(e, static_cast<unsigned>(3 * points.size()));
    out.points = points;
    out.weights = weights;
    VertexModel current = VertexModel::spin(n, points, weights).truncated(out.degree);

    while (!orbit_closed(out.points)) {
        OneParamSubgroup lambda = degenerate_witness(out.points, out.weights);
        auto limit = apply_limit(lambda, current, out.degree);
        if (!limit) throw InvariantError("witness subgroup has no limit on the spin model");

        // Point limits: weight -1 coordinates vanish on span(u), weight +1 ones go to 0.
        const Matrix basis_inv = *inverse(lambda.basis);
        std::vector<Vector> next_points;
        std::vector<GaussRational> next_weights;
        for (std::size_t i = 0; i < out.points.size(); ++i) {
            Vector y = basis_inv.apply(out.points[i]);
            for (std::size_t c = 0; c < n; ++c) {
                if (lambda.weights[c] < 0 && !y[c].is_zero())
                    throw InvariantError("spin point has a component of negative weight");
                if (lambda.weights[c] > 0) y[c] = GaussRational();
            }
            Vector u = lambda.basis.apply(y);
            auto it = std::find(next_points.begin(), next_points.end(), u);
            if (it == next_points.end()) {
                next_points.push_back(std::move(u));
                next_weights.push_back(out.weights[i]);
            } else {
                next_weights[static_cast<std::size_t>(it - next_points.begin())] += out.weights[i];
            }
        }
        out.points.clear();
        out.weights.clear();
        for (std::size_t i = 0; i < next_points.size(); ++i)
            if (!next_weights[i].is_zero()) {
                out.points.push_back(std::move(next_points[i]));
                out.weights.push_back(next_weights[i]);
            }
        current = VertexModel::spin(n, out.points, out.weights).truncated(out.degree);
        if (current != *limit) throw InvariantError("functional limit disagrees with the limit of the points");
        out.witnesses.push_back(std::move(lambda));
    }
    out.model = std::move(current);
    return out;
}

OneParamSubgroup parse_one_param(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    std::optional<std::size_t> n;
    std::vector<Vector> columns;
    std::optional<std::vector<int>> weights;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream words_in(raw);
        std::vector<std::string> words;
        for (std::string w; words_in >> w;) words.push_back(w);
        if (words.empty()) continue;
        if (!n) {
            if (words.size() != 2 || words[0] != "oneparam" || words[1].rfind("n=", 0) != 0)
                throw ParseError("expected 'oneparam n=<n>' header", line);
            try {
                n = std::stoul(words[1].substr(2));
            } catch (const std::exception&) {
                throw ParseError("bad dimension in header", line);
            }
            if (*n == 0) throw ParseError("dimension must be positive", line);
            continue;
        }
        if (words[0] == "weights") {
            if (weights) throw ParseError("duplicate weights line", line);
            if (words.size() != *n + 1) throw ParseError("weights line needs " + std::to_string(*n) + " integers", line);
            weights.emplace();
            for (std::size_t i = 1; i < words.size(); ++i) {
                try {
                    std::size_t used = 0;
                    weights->push_back(std::stoi(words[i], &used));
                    if (used != words[i].size()) throw std::invalid_argument(words[i]);
                } catch (const std::exception&) {
                    throw ParseError("bad weight '" + words[i] + "'", line);
                }
            }
            continue;
        }
        if (weights) throw ParseError("basis column after the weights line", line);
        if (words.size() != *n) throw ParseError("basis column needs " + std::to_string(*n) + " entries", line);
        Vector col;
        for (const auto& w : words) {
            try {
                col.push_back(GaussRational::parse(w));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), line);
            }
        }
        columns.push_back(std::move(col));
    }
    if (!n) throw ParseError("missing 'oneparam' header");
    if (columns.size() != *n) throw ParseError("expected " + std::to_string(*n) + " basis columns");
    if (!weights) throw ParseError("missing weights line");
    return {Matrix::from_columns(columns, *n), *weights};
}

std::string format_one_param(const OneParamSubgroup& lambda) {
    std::ostringstream out;
    out << "oneparam n=" << lambda.n() << '\n';
    for (std::size_t c = 0; c < lambda.basis.cols(); ++c) {
        for (std::size_t r = 0; r < lambda.basis.rows(); ++r) out << (r ? " " : "") << lambda.basis(r, c).str();
        out << '\n';
    }
    out << "weights";
    for (int d : lambda.weights) out << ' ' << d;
    out << '\n';
    return out.str();
}

}  // namespace vmodel
