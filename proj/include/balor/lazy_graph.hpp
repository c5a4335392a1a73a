#pragma once

#include <functional>
#include <string>
#include <vector>

#include "balor/graph.hpp"

namespace balor {

// Implicit (possibly infinite) graph given by a neighbor generator over canonical
// vertex encodings, plus an orbit labeling with known representatives.
//
// Encodings of the built-ins:
//   regular tree      "" is the root; a child appends one digit. The root has k
//                     children '0'..'k-1'; every other vertex has k-1 children
//                     '0'..'k-2' and its parent is the code minus its last digit.
//   biregular tree    same scheme; vertices at even depth have degree a, odd depth b.
//   pendant-clique    tree codes as above over T_{2d}; each tree vertex w carries two
//                     cliques K_{2d+5} minus an edge, encoded "w#<c>:<i>" with clique
//                     c in {0,1} and member i in 0..2d+4. Members 0 and 1 are the
//                     endpoints of the removed edge (attached to w); the rest are full.
//   finite wrap       decimal vertex ids of the wrapped Graph.
struct LazyGraph {
  std::string name;
  int degree_bound = 0;
  std::string root;
  int orbit_count = 0;
  std::vector<std::string> orbit_reps;  // orbit_reps[i] has orbit id i
  std::function<std::vector<std::string>(const std::string&)> neighbors;
  std::function<int(const std::string&)> orbit;
};

struct Ball {
  Graph graph;
  int center = 0;
  int radius = 0;
  std::vector<int> depth;               // per ball-local vertex
  std::vector<std::string> encoding;    // ball-local id -> canonical encoding
};

// Induced subgraph on vertices within distance r of root; interior vertices
// (depth <= r-1) keep their full degree. Throws BallTooLarge beyond the cap.
Ball extract_ball(const LazyGraph& lg, const std::string& root, int radius,
                  std::size_t vertex_cap = 1000000);
Ball extract_ball(const LazyGraph& lg, int radius);  // around lg.root

LazyGraph make_regular_tree(int k);
LazyGraph make_biregular_tree(int a, int b);
// Tree T_{2d} with two pendant near-cliques per tree vertex: (2d+4)-regular,
// three orbits (tree / deficient / full), non-bipartite with slow mixing.
LazyGraph make_pendant_clique(int d);
LazyGraph wrap_finite(const Graph& g, const std::string& name = "finite");
// single-orbit wrap for vertex-transitive inputs (caller asserts transitivity)
LazyGraph wrap_transitive(const Graph& g, const std::string& name = "transitive");

// "tree:4", "biregular:3:4", "pendant:2", "circulant:8:1,2"
LazyGraph builtin_lazy(const std::string& spec);
// finite builtins for file-free CLI input: "circulant:8:1,2"
Graph builtin_finite(const std::string& spec);

}  // namespace balor
