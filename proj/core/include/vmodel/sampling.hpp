#pragma once

#include "vmodel/graph.hpp"
#include "vmodel/vertex_model.hpp"

#include <random>

namespace vmodel {

// Random small instances for property checks. Scalars are Gaussian integers
// with parts in [-2, 2]; roughly a quarter of the monomials are left at zero.
GaussRational random_scalar(std::mt19937_64& rng);
VertexModel random_model(std::mt19937_64& rng, std::size_t n, unsigned degree);

Graph random_graph(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_edges);

// Up to `max_vertices` internal vertices and `max_edges` core edges; each end
// hangs off a random vertex or pairs with another end.
Fragment random_fragment(std::mt19937_64& rng, std::size_t k, std::size_t max_vertices, std::size_t max_edges);

}  // namespace vmodel
