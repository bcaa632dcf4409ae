#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vmodel {

// Undirected multigraph with loops and circles (edges without endpoints).
// Vertices are 0..vertex_count-1; each edge is stored as (u, v) with u <= v.
struct Graph {
    std::size_t vertex_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t circles = 0;

    void add_edge(std::size_t u, std::size_t v);

    // A loop contributes 2 to its vertex.
    std::vector<std::size_t> degrees() const;
    std::size_t max_degree() const;

    friend bool operator==(const Graph&, const Graph&) = default;
};

// Destination of the half edge at an open end: an internal vertex, or
// another open end (the two ends then share a single edge).
struct OpenTarget {
    enum class Kind { vertex, open_end };
    Kind kind = Kind::vertex;
    std::size_t index = 0;  // vertex id, or 0-based label of the partner end

    static OpenTarget to_vertex(std::size_t v) { return {Kind::vertex, v}; }
    static OpenTarget to_end(std::size_t label0) { return {Kind::open_end, label0}; }
    bool is_vertex() const { return kind == Kind::vertex; }

    friend bool operator==(const OpenTarget&, const OpenTarget&) = default;
};

// k-fragment: a graph plus k labeled degree-one open ends. `ends[l]` is the
// far side of the half edge at label l+1. Open ends are not vertices.
struct Fragment {
    Graph core;
    std::vector<OpenTarget> ends;

    std::size_t k() const { return ends.size(); }

    // Throws PreconditionError if the end table is inconsistent.
    void validate() const;

    // Degrees of internal vertices, half edges included.
    std::vector<std::size_t> degrees() const;
    // Number of edges: core edges, half edges and open-end pairs.
    std::size_t edge_count() const;

    static Fragment from_graph(Graph g);

    friend bool operator==(const Fragment&, const Fragment&) = default;
};

// One vertex carrying all k half edges.
Fragment basic_fragment(std::size_t k);
// A single edge between open ends 1 and 2.
Fragment open_edge();
Fragment with_circle(Fragment f, std::size_t count = 1);

// Fuses equally labeled half edges of two k-fragments into edges.
Graph glue(const Fragment& f, const Fragment& h);
// Disjoint union; h's labels are shifted by f.k().
Fragment product(const Fragment& f, const Fragment& h);
// Fuses the half edges at labels i < j (1-based); the remaining labels are
// renumbered 1..k-2 keeping their order.
Fragment contract_fragment(const Fragment& f, std::size_t i, std::size_t j);

// All k-fragments with at most `max_vertices` internal vertices, every vertex
// of degree at most `max_degree` (unbounded when nullopt) and no circles.
// Isomorphic duplicates are kept. Ordered by (vertex count, edge count,
// encoding), where the encoding lists each label's target followed by the
// edge multiplicities over vertex pairs (0,0), (0,1), ..., (1,1), ...
std::vector<Fragment> enumerate_fragments(std::size_t k, std::size_t max_vertices,
                                          std::optional<std::size_t> max_degree);
// Same, restricted to exactly `vertices` internal vertices.
std::vector<Fragment> enumerate_fragment_class(std::size_t k, std::size_t vertices,
                                               std::optional<std::size_t> max_degree);
// Graphs (no circles) on exactly `vertices` vertices with at most
// `max_edges` edges, in the same encoding order.
std::vector<Graph> enumerate_graphs(std::size_t vertices, std::size_t max_edges);

// Line-oriented text format (see README). `graph` headers yield k = 0.
Fragment parse_fragment(std::string_view text);
std::string format_fragment(const Fragment& f);
std::string format_graph(const Graph& g);

}  // namespace vmodel
