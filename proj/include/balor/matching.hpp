#pragma once

#include <cstdint>
#include <vector>

#include "balor/graph.hpp"

namespace balor {

struct Matching {
  std::vector<int> partner;  // partner[v] = matched vertex, or -1

  int size() const {
    int c = 0;
    for (std::size_t v = 0; v < partner.size(); ++v)
      if (partner[v] > static_cast<int>(v)) ++c;
    return c;
  }
  bool covers_all() const {
    for (int p : partner)
      if (p < 0) return false;
    return true;
  }
  // matched edge ids in the host graph
  std::vector<int> edge_view(const Graph& g) const;
};

// Maximum matching of a bipartite graph (NotBipartite otherwise).
Matching hopcroft_karp(const Graph& g);

// Exact perfect-matching count by branching on the lowest-index unmatched vertex.
// The edge cap is a guardrail against oversized inputs, not a complexity bound;
// callers that know better pass a larger cap explicitly.
long long enumerate_perfect_matchings(const Graph& g, int edge_cap = 16);

struct RoundStats {
  int round = 0;           // k: augmenting paths up to length 2k-1 were allowed
  int max_path_len = 0;    // longest path actually flipped this round (edges)
  long long flips = 0;     // augmenting paths applied this round
  double unmatched_frac = 0.0;  // fraction of all vertices left unmatched after the round
};

// Label-driven local matching scheme: in round k, repeatedly collect one shortest
// augmenting path (length <= 2k-1) per unmatched left vertex, order them by
// (minimum vertex label on the path, lexicographic vertex sequence), apply a maximal
// vertex-disjoint prefix greedily, and repeat until no such path remains. The final
// matching is maximal w.r.t. augmenting paths of length <= 2k_max-1. Deterministic
// per (graph, labels, seed); the seed only feeds a last-resort tie-break hash.
std::pair<Matching, std::vector<RoundStats>> local_matching_rounds(
    const Graph& g, const std::vector<double>& labels, int k_max, std::uint64_t seed);

// Two edge-disjoint perfect matchings of a k-regular bipartite graph, k >= 2
// (first via hopcroft_karp, second on the graph minus the first).
std::pair<Matching, Matching> two_disjoint_perfect_matchings(const Graph& g);

}  // namespace balor
