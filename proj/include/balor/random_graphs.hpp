#pragma once

#include <cstdint>

#include "balor/graph.hpp"

namespace balor {

// Configuration model: pair left stubs to right stubs uniformly, resample the whole
// pairing on any multi-edge (bipartite pairings cannot create loops). Exact uniform
// over simple k-regular bipartite graphs on n+n labeled vertices; deterministic per seed.
Graph random_regular_bipartite(int n, int k, std::uint64_t seed, int retry_cap = 20000);

// Erdos-Renyi G(n,p) conditioned on connectivity by resampling; test/corpus helper.
Graph random_connected_graph(int n, double p, std::uint64_t seed, int retry_cap = 20000);

}  // namespace balor
