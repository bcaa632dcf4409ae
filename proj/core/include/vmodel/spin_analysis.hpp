#pragma once

#include "vmodel/matrix.hpp"
#include "vmodel/vertex_model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vmodel {

// lambda(t) = B diag(t^{d_1}, ..., t^{d_n}) B^{-1}, where the columns
// v_1..v_n of B form a canonical basis (<v_i, v_j> = 1 iff i + j = n + 1).
struct OneParamSubgroup {
    Matrix basis;
    std::vector<int> weights;

    std::size_t n() const { return basis.rows(); }
    friend bool operator==(const OneParamSubgroup&, const OneParamSubgroup&) = default;
};

struct OneParamCheck {
    bool ok = false;
    std::string reason;  // empty when ok
};

// Evaluates lambda(t) for a nonzero rational t.
Matrix one_param_at(const OneParamSubgroup& lambda, const Rational& t);

// Checks the canonical Gram shape, d_1 >= ... >= d_n with d_i = -d_{n+1-i},
// and lambda(t)^T lambda(t) = I at 4D + 1 distinct nonzero points, where D is
// the largest |d_i|. `samples` overrides the default points 1, 2, ...
OneParamCheck verify_one_param(const OneParamSubgroup& lambda,
                               const std::vector<Rational>& samples = {});

// True iff the form restricted to span(points) is nondegenerate.
bool orbit_closed(const std::vector<Vector>& points);

// (h o M)(x^beta) = h(prod_j (sum_c M[j][c] x_c)^{beta_j}) for |beta| <= e;
// the transpose of the linear substitution p -> p o M on polynomials.
VertexModel compose_linear(const VertexModel& h, const Matrix& m, unsigned e);

// lim_{t->0} lambda(t) h_e, or nullopt when some coefficient of negative
// weight is nonzero. Result carries degree bound e.
std::optional<VertexModel> apply_limit(const OneParamSubgroup& lambda, const VertexModel& h, unsigned e);

// Canonical basis of the space spanned by `vectors` (assumed nondegenerate)
// in the anti-diagonal order. Throws PreconditionError naming the value whose
// square root would leave Q(i).
std::vector<Vector> canonical_basis(const std::vector<Vector>& vectors, std::size_t n);

// One-parameter subgroup that scales a radical vector of span(points) by t,
// its hyperbolic partner by 1/t and fixes the rest. Requires a degenerate span.
OneParamSubgroup degenerate_witness(const std::vector<Vector>& points, const std::vector<GaussRational>& weights);

struct NormalizedSpin {
    VertexModel model{1};  // h'_e, explicit support up to degree e
    std::vector<Vector> points;
    std::vector<GaussRational> weights;
    unsigned degree = 0;
    std::vector<OneParamSubgroup> witnesses;  // one per limit step
};

// Repeats witness + limit until the point span is nondegenerate or no points
// remain. The degree used is max(3m, e).
NormalizedSpin normalize_spin(std::size_t n, const std::vector<Vector>& points,
                              const std::vector<GaussRational>& weights, unsigned e);

// `oneparam n=<n>`, n lines with the basis columns v_1..v_n, `weights d1 ... dn`.
OneParamSubgroup parse_one_param(std::string_view text);
std::string format_one_param(const OneParamSubgroup& lambda);

}  // namespace vmodel
