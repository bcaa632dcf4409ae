#pragma once

#include "vmodel/matrix.hpp"
#include "vmodel/tensor.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vmodel {

// Finite subgroup of O_n given by its full element list. Construction checks
// orthogonality, the identity, and closure under products.
class FiniteOrthogonalGroup {
public:
    explicit FiniteOrthogonalGroup(std::vector<Matrix> elements);
    // Closure of the given orthogonal generators (identity included).
    static FiniteOrthogonalGroup generated_by(const std::vector<Matrix>& generators, std::size_t n,
                                              std::size_t max_order = 10000);

    std::size_t n() const { return n_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Matrix>& elements() const { return elements_; }
    bool contains(const Matrix& g) const;

private:
    std::size_t n_;
    std::vector<Matrix> elements_;
};

// dim (V^{(x)k})^H = (1/|H|) sum_g tr(g)^k.
std::size_t invariant_dim_finite(const FiniteOrthogonalGroup& group, std::size_t k);

// Basis of the image of the averaging projector (1/|H|) sum_g g^{(x)k}.
std::vector<Tensor> fixed_subspace(const FiniteOrthogonalGroup& group, std::size_t k);

// Perfect matching of [k] as 0-based pairs (a < b), pairs sorted.
using BrauerDiagram = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<BrauerDiagram> brauer_diagrams(std::size_t k);
// prod_{(a,b)} delta(phi(a), phi(b)) as a tensor in V^{(x)k}.
Tensor brauer_tensor(std::size_t n, std::size_t k, const BrauerDiagram& d);
// Number of connected components (all cycles) of d1 united with d2.
std::size_t cycle_count(std::size_t k, const BrauerDiagram& d1, const BrauerDiagram& d2);
// Gram matrix with entries n^{#cycles}.
Matrix brauer_gram(std::size_t n, std::size_t k);
// dim (V^{(x)k})^{O_n}.
std::size_t brauer_invariant_dim(std::size_t n, std::size_t k);

// All orthogonal g permuting the points u_i among themselves with equal
// weights. The points must span V.
FiniteOrthogonalGroup spin_stabilizer(const std::vector<Vector>& points, const std::vector<GaussRational>& weights);

// `group n=<n>`, then each element as `matrix` followed by n rows.
FiniteOrthogonalGroup parse_group(std::string_view text);
std::string format_group(const FiniteOrthogonalGroup& group);

}  // namespace vmodel
