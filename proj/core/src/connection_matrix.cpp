#include "vmodel/connection_matrix.hpp"

#include "vmodel/errors.hpp"
#include "vmodel/tensor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace vmodel {

const char* certificate_name(Certificate c) {
    switch (c) {
        case Certificate::hit_ambient_bound:
            return "hit_ambient_bound";
        case Certificate::hit_invariant_dim:
            return "hit_invariant_dim";
        case Certificate::none:
            break;
    }
    return "none";
}

ConnectionMatrix build_matrix(const VertexModel& h, std::vector<Fragment> fragments) {
    for (const auto& f : fragments)
        if (f.k() != fragments.front().k()) throw PreconditionError("build_matrix: fragments with different k");
    ConnectionMatrix m{std::move(fragments), {}};
    const std::size_t size = m.fragments.size();
    m.entries = Matrix(size, size);
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = a; b < size; ++b) {
            m.entries(a, b) = partition_function(h, glue(m.fragments[a], m.fragments[b]));
            m.entries(b, a) = m.entries(a, b);
        }
    return m;
}

std::size_t rank_direct(const ConnectionMatrix& m) { return rank(m.entries); }

std::size_t rank_via_gram(const VertexModel& h, const std::vector<Fragment>& fragments) {
    std::vector<Tensor> images;
    images.reserve(fragments.size());
    for (const auto& f : fragments) {
        if (f.k() != fragments.front().k()) throw PreconditionError("rank_via_gram: fragments with different k");
        images.push_back(p_h(h, f));
    }
    return gram_rank(images);
}

std::size_t default_max_degree(const VertexModel& h, std::size_t k) {
    if (auto bound = h.degree_bound()) return *bound;
    return std::max<std::size_t>(k, 3);
}

RankReport saturating_rank(const VertexModel& h, std::size_t k, const SaturationOptions& options) {
    RankReport report;
    report.k = k;
    const std::size_t max_degree = options.max_degree.value_or(default_max_degree(h, k));
    const Tensor probe(h.n(), k);  // validates that n^k is indexable
    long double ambient_ld = 1;
    for (std::size_t t = 0; t < k; ++t) ambient_ld *= static_cast<long double>(h.n());
    const auto ambient = static_cast<std::size_t>(ambient_ld);

    SpanBasis span;
    std::set<Tensor> seen;
    std::size_t stagnant = 0;
    for (std::size_t v = 0; v <= options.vertex_budget; ++v) {
        auto fragments = enumerate_fragment_class(k, v, max_degree);
        report.fragments_used += fragments.size();
        std::size_t distinct = 0;
        for (const auto& f : fragments) {
            Tensor image = p_h(h, f);
            if (image.is_zero() || !seen.insert(image).second) continue;
            ++distinct;
            span.add(image);
        }
        std::size_t rank = gram_rank(span.rows());
        report.classes.push_back({v, fragments.size(), distinct, span.dimension(), rank});
        bool grew = rank > report.rank;
        report.rank = rank;

        if (rank == ambient) {
            report.certified = true;
            report.certificate = Certificate::hit_ambient_bound;
            break;
        }
        if (options.target && rank == *options.target) {
            report.certified = true;
            report.certificate = Certificate::hit_invariant_dim;
            break;
        }
        stagnant = grew ? 0 : stagnant + 1;
        if (stagnant >= 2) break;
    }
    return report;
}

std::string format_report(const RankReport& r) {
    std::ostringstream out;
    out << "rank=" << r.rank << " certified=" << (r.certified ? "true" : "false")
        << " certificate=" << certificate_name(r.certificate) << " fragments=" << r.fragments_used;
    return out.str();
}

std::string format_matrix(const Matrix& m) {
    std::ostringstream out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? "\t" : "") << m(r, c).str();
        out << '\n';
    }
    return out.str();
}

}  // namespace vmodel
