#pragma once

#include "vmodel/graph.hpp"
#include "vmodel/matrix.hpp"
#include "vmodel/scalar.hpp"
#include "vmodel/tensor.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vmodel {

// Exponent vector alpha of the monomial x_1^alpha_1 ... x_n^alpha_n.
using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& alpha);
// All exponents in N^n with |alpha| <= e, ordered by degree then descending lex.
std::vector<Exponent> exponents_up_to(std::size_t n, unsigned e);

// h(p) = sum_i weights[i] * p(points[i]).
struct SpinForm {
    std::vector<Vector> points;
    std::vector<GaussRational> weights;

    friend bool operator==(const SpinForm&, const SpinForm&) = default;
};

// An n-color vertex model: a linear functional on F[x_1..x_n], given either
// by its values on finitely many monomials (all others are 0) or in spin form.
class VertexModel {
public:
    explicit VertexModel(std::size_t n);

    static VertexModel from_support(std::size_t n, const std::map<Exponent, GaussRational>& support,
                                    std::optional<unsigned> declared_degree = std::nullopt);
    // Points must be pairwise distinct and weights nonzero.
    static VertexModel spin(std::vector<Vector> points, std::vector<GaussRational> weights);
    static VertexModel spin(std::size_t n, std::vector<Vector> points, std::vector<GaussRational> weights);

    std::size_t n() const { return n_; }
    const std::map<Exponent, GaussRational>& support() const { return support_; }
    const std::optional<SpinForm>& spin_form() const { return spin_; }

    void set(const Exponent& alpha, const GaussRational& value);

    // h(x^alpha)
    GaussRational eval(const Exponent& alpha) const;

    // Largest degree this model is trusted for: the declared bound, else the
    // largest support degree. nullopt for spin models (exact at every degree).
    std::optional<unsigned> degree_bound() const;
    std::optional<unsigned> declared_degree() const { return declared_degree_; }
    // Largest |alpha| with nonzero stored value (0 when empty).
    unsigned support_degree() const;

    // h_e: explicit values on every monomial of degree <= e, spin form dropped.
    VertexModel truncated(unsigned e) const;

    friend bool operator==(const VertexModel&, const VertexModel&) = default;

private:
    std::size_t n_;
    std::map<Exponent, GaussRational> support_;
    std::optional<SpinForm> spin_;
    std::optional<unsigned> declared_degree_;
};

// f_h(G) = n^{circles} sum_{phi: E -> [n]} prod_v h(x^{phi(delta(v))}).
GaussRational partition_function(const VertexModel& h, const Graph& g);

// h_phi(F) for a single boundary coloring phi (0-based colors), by direct
// enumeration of the remaining edge colors.
GaussRational h_phi(const VertexModel& h, const Fragment& f, const Colors& phi);

// p_h(F) = sum_phi h_phi(F) e_phi; for k = 0 this is the scalar f_h(F).
Tensor p_h(const VertexModel& h, const Fragment& f);

// g.h for the signed permutation g e_j = signs[j] e_{perm[j]}.
VertexModel act_signed_permutation(const VertexModel& h, const std::vector<std::size_t>& perm,
                                   const std::vector<int>& signs);
// The matrix of that signed permutation.
Matrix signed_permutation_matrix(const std::vector<std::size_t>& perm, const std::vector<int>& signs);

// Monomial in the variables y_alpha: alpha -> power, ordered descending.
using PolyMonomial = std::map<Exponent, unsigned, std::greater<Exponent>>;

// Integer polynomial in the variables y_alpha. Terms are printed in
// descending monomial order.
class PartitionPolynomial {
public:
    using Terms = std::map<PolyMonomial, mpz_class, std::greater<PolyMonomial>>;

    void add(const PolyMonomial& m, const mpz_class& c);
    const Terms& terms() const { return terms_; }

    // Substitutes y_alpha := h(x^alpha).
    GaussRational evaluate(const VertexModel& h) const;

    // `c*y[a1,...,an]^p*...` terms joined by ` + `; `0` when empty.
    std::string str() const;
    static PartitionPolynomial parse(std::string_view text);

    friend bool operator==(const PartitionPolynomial&, const PartitionPolynomial&) = default;

private:
    Terms terms_;
};

PartitionPolynomial partition_polynomial(const Graph& g, std::size_t n);

// `model n=<n> [degree=<e>]` with `term a1 ... an : scalar` lines.
VertexModel parse_model(std::string_view text);
std::string format_model(const VertexModel& h);
// `spin n=<n>` with `point a : u1 ... un` lines.
VertexModel parse_spin(std::string_view text);
std::string format_spin(const VertexModel& h);
// Either form, dispatching on the header keyword.
VertexModel parse_any_model(std::string_view text);

}  // namespace vmodel
