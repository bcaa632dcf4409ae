#pragma once

#include "vmodel/graph.hpp"
#include "vmodel/matrix.hpp"
#include "vmodel/vertex_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vmodel {

// Finite principal submatrix of the edge connection matrix:
// entries(a, b) = f_h(fragments[a] * fragments[b]).
struct ConnectionMatrix {
    std::vector<Fragment> fragments;
    Matrix entries;
};

enum class Certificate { none, hit_ambient_bound, hit_invariant_dim };

const char* certificate_name(Certificate c);

struct SizeClassStat {
    std::size_t vertices;
    std::size_t fragments;     // enumerated in this class
    std::size_t distinct;      // distinct nonzero p_h images first seen in this class
    std::size_t span_dim;      // dim span of all images so far
    std::size_t rank;          // Gram rank so far
};

// Lower bound on rk M_{f_h,k}, certified only when it meets an upper bound
// known independently (n^k, or a supplied invariant dimension).
struct RankReport {
    std::size_t k = 0;
    std::size_t rank = 0;
    bool certified = false;
    std::size_t fragments_used = 0;
    Certificate certificate = Certificate::none;
    std::vector<SizeClassStat> classes;
};

ConnectionMatrix build_matrix(const VertexModel& h, std::vector<Fragment> fragments);
std::size_t rank_direct(const ConnectionMatrix& m);
// Gram rank of the tensors p_h(F); equals rank_direct(build_matrix(h, fs)).
std::size_t rank_via_gram(const VertexModel& h, const std::vector<Fragment>& fragments);

// Degree cap used for fragment enumeration: the model's degree bound, or
// max(k, 3) for spin models.
std::size_t default_max_degree(const VertexModel& h, std::size_t k);

struct SaturationOptions {
    std::size_t vertex_budget = 2;
    std::optional<std::size_t> target;
    std::optional<std::size_t> max_degree;
};

// Adds fragments class by class (by internal vertex count) and tracks the
// Gram rank of their p_h images. Stops on rank == n^k, rank == target, two
// consecutive classes without growth, or an exhausted budget.
RankReport saturating_rank(const VertexModel& h, std::size_t k, const SaturationOptions& options);

// `rank=<r> certified=<bool> certificate=<kind> fragments=<m>`
std::string format_report(const RankReport& r);
// Tab-separated rows of scalar text.
std::string format_matrix(const Matrix& m);

}  // namespace vmodel
