#pragma once

// Reference implementations used only as test oracles. They follow the
// textbook definitions directly and share no code with the library
// algorithms they check (only the scalar and container types).

#include "vmodel/graph.hpp"
#include "vmodel/matrix.hpp"
#include "vmodel/vertex_model.hpp"

#include <functional>
#include <map>
#include <vector>

namespace oracle {

using vmodel::GaussRational;

// Plain Gauss-Jordan elimination with field division.
inline std::size_t gauss_jordan_rank(vmodel::Matrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
        const GaussRational inv = m(rank, c).inverse();
        for (std::size_t j = 0; j < m.cols(); ++j) m(rank, j) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == rank || m(r, c).is_zero()) continue;
            const GaussRational f = m(r, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

// f_h(G) by recursion over the edge list, building each vertex's color
// multiset as the colors are chosen.
inline GaussRational partition_function(const vmodel::VertexModel& h, const vmodel::Graph& g) {
    const std::size_t n = h.n();
    std::vector<vmodel::Exponent> at(g.vertex_count, vmodel::Exponent(n, 0));
    GaussRational total;
    std::function<void(std::size_t)> go = [&](std::size_t e) {
        if (e == g.edges.size()) {
            GaussRational w(1);
            for (const auto& alpha : at) w *= h.eval(alpha);
            total += w;
            return;
        }
        auto [u, v] = g.edges[e];
        for (std::size_t c = 0; c < n; ++c) {
            ++at[u][c];
            ++at[v][c];
            go(e + 1);
            --at[u][c];
            --at[v][c];
        }
    };
    go(0);
    for (std::size_t c = 0; c < g.circles; ++c) total *= GaussRational(static_cast<long>(n));
    return total;
}

// Number of perfect matchings of a simple graph given by its edge list.
inline std::size_t perfect_matchings(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<bool> covered(vertices, false);
    std::function<std::size_t()> go = [&]() -> std::size_t {
        std::size_t v = 0;
        while (v < vertices && covered[v]) ++v;
        if (v == vertices) return 1;
        std::size_t count = 0;
        for (auto [a, b] : edges) {
            if (a == b) continue;
            std::size_t w;
            if (a == v)
                w = b;
            else if (b == v)
                w = a;
            else
                continue;
            if (covered[w]) continue;
            covered[v] = covered[w] = true;
            count += go();
            covered[v] = covered[w] = false;
        }
        return count;
    };
    return go();
}

// Counts k-fragments with exactly `vertices` labeled vertices, no circles and
// all degrees <= max_degree: every end is attached to a vertex or paired with
// another end, and every vertex pair carries a multiplicity. Brute force over
// all end maps and multiplicity vectors, filtered afterwards.
inline std::size_t count_fragments(std::size_t k, std::size_t vertices, std::size_t max_degree) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 0; u < vertices; ++u)
        for (std::size_t v = u; v < vertices; ++v) pairs.emplace_back(u, v);

    // target[l] < vertices: attached to that vertex; otherwise paired with end target[l] - vertices.
    std::vector<std::size_t> target(k, 0);
    std::size_t total = 0;
    const std::size_t options = vertices + k;
    std::function<void(std::size_t)> ends = [&](std::size_t l) {
        if (l == k) {
            for (std::size_t a = 0; a < k; ++a) {
                if (target[a] < vertices) continue;
                std::size_t b = target[a] - vertices;
                if (b == a || target[b] != a + vertices) return;
            }
            std::vector<std::size_t> base(vertices, 0);
            for (std::size_t a = 0; a < k; ++a)
                if (target[a] < vertices) ++base[target[a]];
            std::vector<std::size_t> mult(pairs.size(), 0);
            std::function<void(std::size_t)> edges = [&](std::size_t p) {
                if (p == pairs.size()) {
                    std::vector<std::size_t> deg = base;
                    for (std::size_t q = 0; q < pairs.size(); ++q) {
                        deg[pairs[q].first] += mult[q];
                        deg[pairs[q].second] += mult[q];
                    }
                    for (auto d : deg)
                        if (d > max_degree) return;
                    ++total;
                    return;
                }
                for (std::size_t m = 0; m <= max_degree; ++m) {
                    mult[p] = m;
                    edges(p + 1);
                }
            };
            edges(0);
            return;
        }
        for (std::size_t t = 0; t < options; ++t) {
            target[l] = t;
            ends(l + 1);
        }
    };
    ends(0);
    return total;
}

}  // namespace oracle
