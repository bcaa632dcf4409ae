#include "oracles.hpp"

#include "vmodel/errors.hpp"
#include "vmodel/graph.hpp"
#include "vmodel/sampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace vmodel;

namespace {

// Graph equality up to the order of the edge list.
bool same_graph(Graph a, Graph b) {
    std::sort(a.edges.begin(), a.edges.end());
    std::sort(b.edges.begin(), b.edges.end());
    return a == b;
}

Graph k2() {
    Graph g;
    g.vertex_count = 2;
    g.add_edge(0, 1);
    return g;
}

}  // namespace

TEST_CASE("glue examples") {
    Graph circle = glue(open_edge(), open_edge());
    CHECK(circle.vertex_count == 0);
    CHECK(circle.edges.empty());
    CHECK(circle.circles == 1);

    CHECK(glue(basic_fragment(1), basic_fragment(1)) == k2());

    Graph loop = glue(basic_fragment(2), open_edge());
    CHECK(loop.vertex_count == 1);
    REQUIRE(loop.edges.size() == 1);
    CHECK(loop.edges[0] == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(loop.circles == 0);
}

TEST_CASE("product examples") {
    Fragment p = product(basic_fragment(1), basic_fragment(1));
    CHECK(p.k() == 2);
    CHECK(p.core.vertex_count == 2);
    CHECK(p.ends[0] == OpenTarget::to_vertex(0));
    CHECK(p.ends[1] == OpenTarget::to_vertex(1));

    Fragment f = with_circle(basic_fragment(3));
    CHECK(product(f, Fragment{}) == f);
    CHECK(product(Fragment{}, f) == f);

    Fragment q = product(open_edge(), basic_fragment(1));
    CHECK(q.k() == 3);
    CHECK(q.ends[0] == OpenTarget::to_end(1));
    CHECK(q.ends[1] == OpenTarget::to_end(0));
    CHECK(q.ends[2] == OpenTarget::to_vertex(0));
}

TEST_CASE("contract examples") {
    Fragment c = contract_fragment(open_edge(), 1, 2);
    CHECK(c.k() == 0);
    CHECK(c.core.circles == 1);
    CHECK(c.core.vertex_count == 0);

    Fragment loop = contract_fragment(basic_fragment(2), 1, 2);
    CHECK(loop.core.vertex_count == 1);
    CHECK(loop.core.edges.size() == 1);

    Fragment edge = contract_fragment(product(basic_fragment(1), basic_fragment(1)), 1, 2);
    CHECK(edge.k() == 0);
    CHECK(edge.core == k2());

    CHECK_THROWS_AS(contract_fragment(basic_fragment(2), 2, 2), PreconditionError);
    CHECK_THROWS_AS(contract_fragment(basic_fragment(2), 1, 3), PreconditionError);
}

TEST_CASE("enumeration base cases") {
    auto two = enumerate_fragments(2, 0, 3);
    REQUIRE(two.size() == 1);
    CHECK(two[0] == open_edge());
    CHECK(enumerate_fragments(1, 0, 3).empty());
    CHECK(enumerate_fragments(1, 1, 3).size() == 2);
}

TEST_CASE("enumeration counts match the brute-force generator") {
    for (std::size_t k = 0; k <= 4; ++k)
        for (std::size_t v = 0; v <= 2; ++v)
            for (std::size_t d = 1; d <= 4; ++d) {
                if (k == 0 && v == 0) continue;
                CAPTURE(k);
                CAPTURE(v);
                CAPTURE(d);
                auto cls = enumerate_fragment_class(k, v, d);
                CHECK(cls.size() == oracle::count_fragments(k, v, d));
                for (const auto& f : cls) {
                    CHECK(f.k() == k);
                    CHECK(f.core.vertex_count == v);
                    CHECK(f.core.circles == 0);
                    for (auto deg : f.degrees()) CHECK(deg <= d);
                }
            }
}

TEST_CASE("enumeration is ordered by vertices then edges and has no repeats") {
    auto all = enumerate_fragments(2, 2, 3);
    for (std::size_t i = 1; i < all.size(); ++i) {
        const auto& a = all[i - 1];
        const auto& b = all[i];
        CHECK(std::pair(a.core.vertex_count, a.edge_count()) <= std::pair(b.core.vertex_count, b.edge_count()));
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(all[i] == all[j]);
}

TEST_CASE("glue preserves vertices and counts circles") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        std::size_t k = rng() % 5;
        Fragment f = random_fragment(rng, k, 3, 4);
        Fragment h = random_fragment(rng, k, 3, 4);
        Graph g = glue(f, h);
        CHECK(g.vertex_count == f.core.vertex_count + h.core.vertex_count);
        CHECK(g.circles >= f.core.circles + h.core.circles);
        // Every edge of F and H survives, fused half edges included.
        CHECK(g.edges.size() + g.circles - f.core.circles - h.core.circles <= f.edge_count() + h.edge_count());
        std::size_t degree_sum = 0;
        for (auto d : g.degrees()) degree_sum += d;
        std::size_t fh_degrees = 0;
        for (auto d : f.degrees()) fh_degrees += d;
        for (auto d : h.degrees()) fh_degrees += d;
        CHECK(degree_sum == fh_degrees);
    }
}

TEST_CASE("glue equals contracting the product on pairs (i, k+i)") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 150; ++t) {
        std::size_t k = rng() % 4;
        Fragment f = random_fragment(rng, k, 2, 3);
        Fragment h = random_fragment(rng, k, 2, 3);
        Fragment p = product(f, h);
        // After contracting (1, k+1) the remaining labels shift down by one
        // below k+1 and by two above it, so the next pair is again (1, k).
        for (std::size_t i = 0; i < k; ++i) p = contract_fragment(p, 1, p.k() / 2 + 1);
        CHECK(p.k() == 0);
        CHECK(same_graph(p.core, glue(f, h)));
    }
}

TEST_CASE("contraction order does not matter on disjoint pairs") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 150; ++t) {
        Fragment f = random_fragment(rng, 2, 2, 3);
        Fragment h = random_fragment(rng, 2, 2, 3);
        Fragment p = product(f, h);  // labels 1..4
        // (1,3) then the former (2,4), which is (1,2) afterwards.
        Fragment a = contract_fragment(contract_fragment(p, 1, 3), 1, 2);
        Fragment b = contract_fragment(contract_fragment(p, 2, 4), 1, 2);
        CHECK(same_graph(a.core, b.core));
    }
}

TEST_CASE("text format round-trips") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
        Fragment f = random_fragment(rng, rng() % 5, 3, 4);
        CHECK(parse_fragment(format_fragment(f)) == f);
    }
    Fragment named = parse_fragment("fragment k=3\nvertex a\nvertex b\nedge a b\nloop b\ncircle\nopen 2 b\nopenpair 1 3\n");
    CHECK(named.core.vertex_count == 2);
    CHECK(named.core.circles == 1);
    CHECK(named.ends[1] == OpenTarget::to_vertex(1));
    CHECK(named.ends[0] == OpenTarget::to_end(2));
}

TEST_CASE("malformed fragments report the line") {
    auto message = [](const char* text) {
        try {
            parse_fragment(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("graph\nvertex a\nedge a b\n").find("line 3") != std::string::npos);
    CHECK(message("fragment k=2\nvertex a\nopen 1 a\n").find("open end 2") != std::string::npos);
    CHECK(message("graf\n").find("line 1") != std::string::npos);
    CHECK(message("fragment k=1\nvertex a\nopen 2 a\n") != "no error");
}

TEST_CASE("graph enumeration honours the edge cap") {
    auto graphs = enumerate_graphs(2, 2);
    // Pairs (0,0), (0,1), (1,1) with total multiplicity <= 2: 1 + 3 + 6.
    CHECK(graphs.size() == 10);
    for (const auto& g : graphs) CHECK(g.edges.size() <= 2);
}
