#include "vmodel/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace vmodel {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

GaussRational random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> part(-2, 2);
    long re = part(rng);
    long im = part(rng);
    return GaussRational(Rational(re), Rational(im));
}

VertexModel random_model(std::mt19937_64& rng, std::size_t n, unsigned degree) {
    VertexModel h(n);
    for (const auto& alpha : exponents_up_to(n, degree))
        if (uniform(rng, 0, 3) != 0) h.set(alpha, random_scalar(rng));
    return h;
}

Graph random_graph(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_edges) {
    Graph g;
    g.vertex_count = uniform(rng, 1, std::max<std::size_t>(max_vertices, 1));
    const std::size_t edges = uniform(rng, 0, max_edges);
    for (std::size_t e = 0; e < edges; ++e) {
        if (uniform(rng, 0, 9) == 0) {
            ++g.circles;
            continue;
        }
        std::size_t u = uniform(rng, 0, g.vertex_count - 1);
        std::size_t v = uniform(rng, 0, g.vertex_count - 1);
        g.add_edge(std::min(u, v), std::max(u, v));
    }
    return g;
}

Fragment random_fragment(std::mt19937_64& rng, std::size_t k, std::size_t max_vertices, std::size_t max_edges) {
    Fragment f;
    f.core.vertex_count = uniform(rng, 0, max_vertices);
    const std::size_t v = f.core.vertex_count;
    if (v > 0) {
        const std::size_t edges = uniform(rng, 0, max_edges);
        for (std::size_t e = 0; e < edges; ++e) {
            std::size_t a = uniform(rng, 0, v - 1);
            std::size_t b = uniform(rng, 0, v - 1);
            f.core.add_edge(std::min(a, b), std::max(a, b));
        }
    }
    if (uniform(rng, 0, 5) == 0) ++f.core.circles;

    std::vector<std::size_t> labels(k);
    std::iota(labels.begin(), labels.end(), 0);
    std::shuffle(labels.begin(), labels.end(), rng);
    f.ends.resize(k);
    std::size_t i = 0;
    while (i < k) {
        bool pair = i + 1 < k && (v == 0 || uniform(rng, 0, 3) == 0);
        if (pair) {
            f.ends[labels[i]] = OpenTarget::to_end(labels[i + 1]);
            f.ends[labels[i + 1]] = OpenTarget::to_end(labels[i]);
            i += 2;
        } else if (v > 0) {
            f.ends[labels[i]] = OpenTarget::to_vertex(uniform(rng, 0, v - 1));
            ++i;
        } else {
            // A lone end with no vertices to attach to: add one.
            f.core.vertex_count = 1;
            f.ends[labels[i]] = OpenTarget::to_vertex(0);
            ++i;
        }
    }
    f.validate();
    return f;
}

}  // namespace vmodel
