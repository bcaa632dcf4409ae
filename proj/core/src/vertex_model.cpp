#include "vmodel/vertex_model.hpp"

#include "vmodel/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace vmodel {

unsigned total_degree(const Exponent& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0u); }

std::vector<Exponent> exponents_up_to(std::size_t n, unsigned e) {
    std::vector<Exponent> out;
    Exponent alpha(n, 0);
    for (unsigned d = 0; d <= e; ++d) {
        // descending lex among exponents of degree d
        std::function<void(std::size_t, unsigned)> fill = [&](std::size_t pos, unsigned left) {
            if (pos + 1 == n) {
                alpha[pos] = left;
                out.push_back(alpha);
                return;
            }
            for (unsigned a = left + 1; a-- > 0;) {
                alpha[pos] = a;
                fill(pos + 1, left - a);
            }
        };
        if (n == 0) {
            if (d == 0) out.emplace_back();
            continue;
        }
        fill(0, d);
    }
    return out;
}

VertexModel::VertexModel(std::size_t n) : n_(n) {
    if (n == 0) throw PreconditionError("vertex model needs at least one color");
}

VertexModel VertexModel::from_support(std::size_t n, const std::map<Exponent, GaussRational>& support,
                                      std::optional<unsigned> declared_degree) {
    VertexModel h(n);
    for (const auto& [alpha, v] : support) h.set(alpha, v);
    if (declared_degree && h.support_degree() > *declared_degree)
        throw PreconditionError("support has terms above the declared degree bound");
    h.declared_degree_ = declared_degree;
    return h;
}

VertexModel VertexModel::spin(std::size_t n, std::vector<Vector> points, std::vector<GaussRational> weights) {
    if (points.size() != weights.size()) throw PreconditionError("spin model: points and weights differ in number");
    for (const auto& p : points)
        if (p.size() != n) throw PreconditionError("spin model: point has wrong dimension");
    for (const auto& a : weights)
        if (a.is_zero()) throw PreconditionError("spin model: zero weight");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw PreconditionError("spin model: repeated point");
    VertexModel h(n);
    h.spin_ = SpinForm{std::move(points), std::move(weights)};
    return h;
}

VertexModel VertexModel::spin(std::vector<Vector> points, std::vector<GaussRational> weights) {
    if (points.empty()) throw PreconditionError("spin model without points: dimension unknown");
    std::size_t n = points.front().size();
    return spin(n, std::move(points), std::move(weights));
}

void VertexModel::set(const Exponent& alpha, const GaussRational& value) {
    if (alpha.size() != n_) throw PreconditionError("exponent vector has wrong length");
    if (spin_) throw PreconditionError("cannot set support values on a spin model");
    if (value.is_zero())
        support_.erase(alpha);
    else
        support_[alpha] = value;
}

GaussRational VertexModel::eval(const Exponent& alpha) const {
    if (alpha.size() != n_) throw PreconditionError("exponent vector has wrong length");
    if (spin_) {
        GaussRational sum;
        for (std::size_t i = 0; i < spin_->points.size(); ++i) {
            GaussRational term = spin_->weights[i];
            for (std::size_t c = 0; c < n_ && !term.is_zero(); ++c)
                if (alpha[c]) term *= pow(spin_->points[i][c], alpha[c]);
            sum += term;
        }
        return sum;
    }
    auto it = support_.find(alpha);
    return it == support_.end() ? GaussRational() : it->second;
}

unsigned VertexModel::support_degree() const {
    unsigned d = 0;
    for (const auto& [alpha, v] : support_) d = std::max(d, total_degree(alpha));
    return d;
}

std::optional<unsigned> VertexModel::degree_bound() const {
    if (spin_) return std::nullopt;
    if (declared_degree_) return declared_degree_;
    return support_degree();
}

VertexModel VertexModel::truncated(unsigned e) const {
    VertexModel out(n_);
    for (const auto& alpha : exponents_up_to(n_, e)) out.set(alpha, eval(alpha));
    out.declared_degree_ = e;
    return out;
}

// ---------------------------------------------------------------------------
// Colorings

namespace {

struct EdgeSlot {
    enum class Kind { core, half, pair };
    Kind kind;
    std::size_t a;  // core: vertex; half: label; pair: label
    std::size_t b;  // core: vertex; half: vertex; pair: label
};

// Edges ordered so vertices tend to complete early: open pairs first, then
// vertex by vertex, each edge placed with its larger endpoint.
std::vector<EdgeSlot> ordered_slots(const Fragment& f) {
    std::vector<EdgeSlot> slots;
    for (std::size_t l = 0; l < f.k(); ++l)
        if (!f.ends[l].is_vertex() && f.ends[l].index > l)
            slots.push_back({EdgeSlot::Kind::pair, l, f.ends[l].index});
    for (std::size_t v = 0; v < f.core.vertex_count; ++v) {
        for (std::size_t l = 0; l < f.k(); ++l)
            if (f.ends[l].is_vertex() && f.ends[l].index == v) slots.push_back({EdgeSlot::Kind::half, l, v});
        for (auto [u, w] : f.core.edges)
            if (w == v) slots.push_back({EdgeSlot::Kind::core, u, w});
    }
    return slots;
}

class WeightCache {
public:
    explicit WeightCache(const VertexModel& h) : h_(h) {}
    const GaussRational& operator()(const Exponent& alpha) {
        auto it = cache_.find(alpha);
        if (it == cache_.end()) it = cache_.emplace(alpha, h_.eval(alpha)).first;
        return it->second;
    }

private:
    const VertexModel& h_;
    std::map<Exponent, GaussRational> cache_;
};

GaussRational circle_factor(std::size_t n, std::size_t circles) {
    return pow(GaussRational(static_cast<long>(n)), static_cast<unsigned>(circles));
}

}  // namespace

Tensor p_h(const VertexModel& h, const Fragment& f) {
    f.validate();
    const std::size_t n = h.n();
    const std::size_t nv = f.core.vertex_count;
    Tensor out(n, f.k());
    WeightCache weight(h);

    std::vector<Exponent> counts(nv, Exponent(n, 0));
    std::vector<std::size_t> remaining = f.degrees();
    Colors label_color(f.k(), 0);

    GaussRational base(1);
    for (std::size_t v = 0; v < nv; ++v)
        if (remaining[v] == 0) base *= weight(counts[v]);
    if (base.is_zero()) return out;

    const auto slots = ordered_slots(f);

    // Adds color c at vertex v; returns the weight factor if v completes.
    auto place = [&](std::size_t v, std::size_t c, unsigned times, GaussRational& acc) {
        counts[v][c] += times;
        remaining[v] -= times;
        if (remaining[v] == 0) acc *= weight(counts[v]);
    };
    auto unplace = [&](std::size_t v, std::size_t c, unsigned times) {
        counts[v][c] -= times;
        remaining[v] += times;
    };

    std::function<void(std::size_t, const GaussRational&)> recurse = [&](std::size_t s, const GaussRational& acc) {
        if (s == slots.size()) {
            out.add(label_color, acc);
            return;
        }
        const auto& slot = slots[s];
        for (std::size_t c = 0; c < n; ++c) {
            GaussRational next = acc;
            switch (slot.kind) {
                case EdgeSlot::Kind::pair:
                    label_color[slot.a] = c;
                    label_color[slot.b] = c;
                    break;
                case EdgeSlot::Kind::half:
                    label_color[slot.a] = c;
                    place(slot.b, c, 1, next);
                    break;
                case EdgeSlot::Kind::core:
                    if (slot.a == slot.b) {
                        place(slot.a, c, 2, next);
                    } else {
                        place(slot.a, c, 1, next);
                        place(slot.b, c, 1, next);
                    }
                    break;
            }
            if (!next.is_zero()) recurse(s + 1, next);
            switch (slot.kind) {
                case EdgeSlot::Kind::pair:
                    break;
                case EdgeSlot::Kind::half:
                    unplace(slot.b, c, 1);
                    break;
                case EdgeSlot::Kind::core:
                    if (slot.a == slot.b) {
                        unplace(slot.a, c, 2);
                    } else {
                        unplace(slot.a, c, 1);
                        unplace(slot.b, c, 1);
                    }
                    break;
            }
        }
    };
    recurse(0, base);
    if (f.core.circles) out *= circle_factor(n, f.core.circles);
    return out;
}

GaussRational partition_function(const VertexModel& h, const Graph& g) {
    return p_h(h, Fragment::from_graph(g)).value();
}

GaussRational h_phi(const VertexModel& h, const Fragment& f, const Colors& phi) {
    f.validate();
    if (phi.size() != f.k()) throw PreconditionError("h_phi: boundary coloring has wrong length");
    const std::size_t n = h.n();
    for (auto c : phi)
        if (c >= n) throw PreconditionError("h_phi: color out of range");
    for (std::size_t l = 0; l < f.k(); ++l)
        if (!f.ends[l].is_vertex() && phi[l] != phi[f.ends[l].index]) return GaussRational();

    // Odometer over the colors of the internal edges.
    const auto& edges = f.core.edges;
    std::vector<std::size_t> psi(edges.size(), 0);
    GaussRational total;
    while (true) {
        std::vector<Exponent> counts(f.core.vertex_count, Exponent(n, 0));
        for (std::size_t e = 0; e < edges.size(); ++e) {
            ++counts[edges[e].first][psi[e]];
            ++counts[edges[e].second][psi[e]];
        }
        for (std::size_t l = 0; l < f.k(); ++l)
            if (f.ends[l].is_vertex()) ++counts[f.ends[l].index][phi[l]];
        GaussRational term(1);
        for (const auto& alpha : counts) {
            term *= h.eval(alpha);
            if (term.is_zero()) break;
        }
        total += term;

        std::size_t e = 0;
        while (e < psi.size() && ++psi[e] == n) psi[e++] = 0;
        if (e == psi.size()) break;
    }
    if (f.core.circles) total *= circle_factor(n, f.core.circles);
    return total;
}

Matrix signed_permutation_matrix(const std::vector<std::size_t>& perm, const std::vector<int>& signs) {
    const std::size_t n = perm.size();
    if (signs.size() != n) throw PreconditionError("signed permutation: length mismatch");
    std::vector<bool> hit(n, false);
    Matrix g(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (perm[j] >= n || hit[perm[j]]) throw PreconditionError("signed permutation: not a permutation");
        if (signs[j] != 1 && signs[j] != -1) throw PreconditionError("signed permutation: sign must be +-1");
        hit[perm[j]] = true;
        g(perm[j], j) = GaussRational(signs[j]);
    }
    return g;
}

VertexModel act_signed_permutation(const VertexModel& h, const std::vector<std::size_t>& perm,
                                   const std::vector<int>& signs) {
    Matrix g = signed_permutation_matrix(perm, signs);
    const std::size_t n = h.n();
    if (perm.size() != n) throw PreconditionError("signed permutation: dimension mismatch");
    if (const auto& spin = h.spin_form()) {
        std::vector<Vector> points;
        for (const auto& u : spin->points) points.push_back(g.apply(u));
        return VertexModel::spin(n, std::move(points), spin->weights);
    }
    // (g.h)(x^beta) = h(x^alpha) prod_j s_j^{alpha_j}, where beta_{perm[j]} = alpha_j.
    std::map<Exponent, GaussRational> support;
    for (const auto& [alpha, v] : h.support()) {
        Exponent beta(n, 0);
        int sign = 1;
        for (std::size_t j = 0; j < n; ++j) {
            beta[perm[j]] = alpha[j];
            if (signs[j] < 0 && alpha[j] % 2 == 1) sign = -sign;
        }
        support[beta] = sign > 0 ? v : -v;
    }
    return VertexModel::from_support(n, support, h.declared_degree());
}

// ---------------------------------------------------------------------------
// Partition polynomial

void PartitionPolynomial::add(const PolyMonomial& m, const mpz_class& c) {
    if (c == 0) return;
    auto& slot = terms_[m];
    slot += c;
    if (slot == 0) terms_.erase(m);
}

GaussRational PartitionPolynomial::evaluate(const VertexModel& h) const {
    GaussRational total;
    for (const auto& [mono, coeff] : terms_) {
        GaussRational term{Rational(coeff, 1)};
        for (const auto& [alpha, power] : mono) {
            term *= pow(h.eval(alpha), power);
            if (term.is_zero()) break;
        }
        total += term;
    }
    return total;
}

std::string PartitionPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << coeff.get_str();
        for (const auto& [alpha, power] : mono) {
            out << "*y[";
            for (std::size_t c = 0; c < alpha.size(); ++c) out << (c ? "," : "") << alpha[c];
            out << ']';
            if (power != 1) out << '^' << power;
        }
    }
    return out.str();
}

PartitionPolynomial PartitionPolynomial::parse(std::string_view text) {
    PartitionPolynomial poly;
    std::string compact;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
    if (compact.empty()) throw ParseError("empty polynomial");
    if (compact == "0") return poly;

    std::size_t pos = 0;
    auto fail = [&](const std::string& why) { throw ParseError("polynomial: " + why + " near position " + std::to_string(pos)); };
    auto read_uint = [&]() {
        std::size_t start = pos;
        while (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos]))) ++pos;
        if (start == pos) fail("expected a number");
        return std::stoul(compact.substr(start, pos - start));
    };

    std::optional<std::size_t> arity;
    while (pos < compact.size()) {
        bool negative = false;
        if (compact[pos] == '-') {
            negative = true;
            ++pos;
        }
        std::size_t start = pos;
        while (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos]))) ++pos;
        if (start == pos) fail("expected a coefficient");
        mpz_class coeff(compact.substr(start, pos - start), 10);
        if (negative) coeff = -coeff;
        PolyMonomial mono;
        while (pos < compact.size() && compact[pos] == '*') {
            ++pos;
            if (compact.compare(pos, 2, "y[") != 0) fail("expected y[");
            pos += 2;
            Exponent alpha;
            while (true) {
                alpha.push_back(static_cast<unsigned>(read_uint()));
                if (pos < compact.size() && compact[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (pos < compact.size() && compact[pos] == ']') {
                    ++pos;
                    break;
                }
                fail("expected , or ]");
            }
            if (arity && *arity != alpha.size()) fail("variables with different numbers of colors");
            arity = alpha.size();
            unsigned power = 1;
            if (pos < compact.size() && compact[pos] == '^') {
                ++pos;
                power = static_cast<unsigned>(read_uint());
            }
            mono[alpha] += power;
        }
        poly.add(mono, coeff);
        if (pos == compact.size()) break;
        if (compact[pos] != '+') fail("expected +");
        ++pos;
    }
    return poly;
}

PartitionPolynomial partition_polynomial(const Graph& g, std::size_t n) {
    if (n == 0) throw PreconditionError("partition_polynomial: n must be positive");
    PartitionPolynomial poly;
    mpz_class circle_coeff;
    mpz_ui_pow_ui(circle_coeff.get_mpz_t(), n, g.circles);
    std::vector<std::size_t> phi(g.edges.size(), 0);
    while (true) {
        std::vector<Exponent> counts(g.vertex_count, Exponent(n, 0));
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            ++counts[g.edges[e].first][phi[e]];
            ++counts[g.edges[e].second][phi[e]];
        }
        PolyMonomial mono;
        for (const auto& alpha : counts) ++mono[alpha];
        poly.add(mono, circle_coeff);

        std::size_t e = 0;
        while (e < phi.size() && ++phi[e] == n) phi[e++] = 0;
        if (e == phi.size()) break;
    }
    return poly;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

struct Header {
    std::string keyword;
    std::size_t n = 0;
    std::optional<unsigned> degree;
};

std::vector<std::string> words_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

unsigned long parse_count(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        auto v = std::stoul(s, &used);
        if (used != s.size() || s[0] == '-' || s[0] == '+') throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a nonnegative integer, got '" + s + "'", line);
    }
}

Header parse_header(const std::vector<std::string>& words, std::size_t line) {
    Header h;
    h.keyword = words[0];
    bool have_n = false;
    for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i].rfind("n=", 0) == 0) {
            h.n = parse_count(words[i].substr(2), line);
            have_n = true;
        } else if (words[i].rfind("degree=", 0) == 0) {
            h.degree = static_cast<unsigned>(parse_count(words[i].substr(7), line));
        } else {
            throw ParseError("unexpected header field '" + words[i] + "'", line);
        }
    }
    if (!have_n || h.n == 0) throw ParseError("header needs n=<positive integer>", line);
    return h;
}

// Calls `body(words, line)` for each non-empty, comment-stripped line after the header.
template <class Body>
Header scan(std::string_view text, Body body) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    std::optional<Header> header;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto words = words_of(raw);
        if (words.empty()) continue;
        if (!header) {
            header = parse_header(words, line);
            continue;
        }
        body(*header, words, line);
    }
    if (!header) throw ParseError("missing header line");
    return *header;
}

// Splits `lhs... : rhs...` around a standalone colon.
std::pair<std::vector<std::string>, std::vector<std::string>> split_colon(const std::vector<std::string>& words,
                                                                          std::size_t from, std::size_t line) {
    auto colon = std::find(words.begin() + static_cast<std::ptrdiff_t>(from), words.end(), ":");
    if (colon == words.end()) throw ParseError("expected ' : ' separator", line);
    return {{words.begin() + static_cast<std::ptrdiff_t>(from), colon}, {colon + 1, words.end()}};
}

GaussRational scalar_at(const std::string& s, std::size_t line) {
    try {
        return GaussRational::parse(s);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
    }
}

}  // namespace

VertexModel parse_model(std::string_view text) {
    std::map<Exponent, GaussRational> support;
    auto header = scan(text, [&](const Header& h, const std::vector<std::string>& words, std::size_t line) {
        if (h.keyword != "model") throw ParseError("expected 'model' header", 1);
        if (words[0] != "term") throw ParseError("expected 'term' line", line);
        auto [lhs, rhs] = split_colon(words, 1, line);
        if (lhs.size() != h.n) throw ParseError("term needs " + std::to_string(h.n) + " exponents", line);
        if (rhs.size() != 1) throw ParseError("term needs exactly one scalar", line);
        Exponent alpha;
        for (const auto& w : lhs) alpha.push_back(static_cast<unsigned>(parse_count(w, line)));
        if (support.count(alpha)) throw ParseError("duplicate term", line);
        support[alpha] = scalar_at(rhs[0], line);
    });
    if (header.keyword != "model") throw ParseError("expected 'model' header", 1);
    try {
        return VertexModel::from_support(header.n, support, header.degree);
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

std::string format_model(const VertexModel& h) {
    std::ostringstream out;
    out << "model n=" << h.n();
    if (h.declared_degree()) out << " degree=" << *h.declared_degree();
    out << '\n';
    VertexModel explicit_model = h;
    if (h.spin_form()) {
        if (!h.declared_degree()) throw PreconditionError("format_model: spin model needs a degree bound");
        explicit_model = h.truncated(*h.declared_degree());
    }
    for (const auto& [alpha, v] : explicit_model.support()) {
        out << "term";
        for (auto a : alpha) out << ' ' << a;
        out << " : " << v.str() << '\n';
    }
    return out.str();
}

VertexModel parse_spin(std::string_view text) {
    std::vector<Vector> points;
    std::vector<GaussRational> weights;
    auto header = scan(text, [&](const Header& h, const std::vector<std::string>& words, std::size_t line) {
        if (h.keyword != "spin") throw ParseError("expected 'spin' header", 1);
        if (words[0] != "point") throw ParseError("expected 'point' line", line);
        auto [lhs, rhs] = split_colon(words, 1, line);
        if (lhs.size() != 1) throw ParseError("point needs exactly one weight", line);
        if (rhs.size() != h.n) throw ParseError("point needs " + std::to_string(h.n) + " coordinates", line);
        weights.push_back(scalar_at(lhs[0], line));
        Vector u;
        for (const auto& w : rhs) u.push_back(scalar_at(w, line));
        points.push_back(std::move(u));
    });
    if (header.keyword != "spin") throw ParseError("expected 'spin' header", 1);
    try {
        return VertexModel::spin(header.n, std::move(points), std::move(weights));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

std::string format_spin(const VertexModel& h) {
    if (!h.spin_form()) throw PreconditionError("format_spin: model has no spin form");
    std::ostringstream out;
    out << "spin n=" << h.n() << '\n';
    const auto& s = *h.spin_form();
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        out << "point " << s.weights[i].str() << " :";
        for (const auto& c : s.points[i]) out << ' ' << c.str();
        out << '\n';
    }
    return out.str();
}

VertexModel parse_any_model(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto words = words_of(raw);
        if (words.empty()) continue;
        if (words[0] == "spin") return parse_spin(text);
        return parse_model(text);
    }
    throw ParseError("empty model file");
}

}  // namespace vmodel
