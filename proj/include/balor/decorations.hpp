#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "balor/graph.hpp"
#include "balor/matching.hpp"

namespace balor {

struct Orientation {
  std::vector<int> head;  // head[e] is one endpoint of edge e

  int tail(const Graph& g, int e) const { return g.other(e, head[e]); }
};

struct BalanceViolation {
  int v;
  int indeg, outdeg;
};

// Empty iff indegree = outdegree at every vertex.
std::vector<BalanceViolation> verify_balanced(const Graph& g, const Orientation& o);

// Balanced orientation along Hierholzer circuits, one per component (OddDegree).
Orientation euler_orient(const Graph& g);

struct EdgeColoring {
  int colors = 0;
  std::vector<int> color;  // per edge
};

bool is_proper_edge_coloring(const Graph& g, const EdgeColoring& c);

// Proper edge coloring of a bipartite graph with max-degree many colors, by
// peeling perfect matchings off the regular multigraph completion.
EdgeColoring konig_edge_coloring(const Graph& g);

// Orientation plus a d-coloring with exactly one incoming and one outgoing
// edge of each color at every vertex (of a 2d-regular graph).
struct SchreierDecoration {
  Orientation orientation;
  int colors = 0;
  std::vector<int> color;  // per edge
};

std::vector<std::string> verify_schreier(const Graph& g, const SchreierDecoration& sd);

// Balanced-orient, split each vertex into tail/head roles (a d-regular bipartite
// double), Konig-color it with d colors, pull colors back to the edges.
SchreierDecoration schreier_decorate_finite(const Graph& g);

// Projections: drop colors, or merge the last two color classes into one
// unordered class (the color ids 0..d-3 survive; the merged class becomes d-2).
Orientation forget_colors(const SchreierDecoration& sd);
struct UnorderedClassDecoration {
  Orientation orientation;
  int ordered_colors = 0;      // d-2 surviving ordered classes
  std::vector<int> color;      // per edge; value ordered_colors marks the merged class
};
UnorderedClassDecoration forget_order(const SchreierDecoration& sd);

// Edge partition generated by: two edges are grouped when they share a vertex at
// which both point in (or both point out). Locally each vertex contributes its
// in-star and its out-star, so it meets at most two groups; on forests (tree
// balls) that is exactly two at every balanced vertex, while cycles can merge
// the two stars through remote vertices.
struct InOutDecomposition {
  std::vector<int> component;  // per edge
  int component_count = 0;
  std::vector<int> components_at_vertex;  // distinct incident components per vertex
};
InOutDecomposition in_out_subtree_decomposition(const Graph& g, const Orientation& o);

// Completes a Schreier decoration whose last two color classes are merged: the
// merged class must have exactly 2 incoming and 2 outgoing edges per vertex
// (DegenerateClass otherwise). Each head assigns its two incoming class edges the
// two colors (seeded); retries deterministically until every vertex also sees
// distinctly colored outgoing class edges. Every valid completion is reachable.
SchreierDecoration pair_unordered_colors(const Graph& g, const UnorderedClassDecoration& ud,
                                         std::uint64_t seed, int retry_cap = 100000);

// d=2 rigidity probe: colors of same-role edge pairs at a vertex determine each
// other, so a seed assignment propagates along orientation-alternating paths.
struct PropagationResult {
  std::vector<int> forced;  // per edge: -1 unknown, else color in {0,1}
  bool contradiction = false;
  int contradiction_vertex = -1;
};
PropagationResult alternating_constraint_propagation(const Graph& g, const Orientation& o,
                                                     int seed_edge, int seed_color);

// (2d+2)-regular bipartite input: remove two disjoint perfect matchings, Schreier-
// decorate the 2d-regular remainder, keep its color-0 class, re-decorate everything
// else (matchings included) anew, and combine into a (d+1)-color decoration.
SchreierDecoration lift_schreier(const Graph& g, std::uint64_t seed);

}  // namespace balor
