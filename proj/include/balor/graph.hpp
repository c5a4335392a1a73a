#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "balor/common.hpp"

namespace balor {

// Simple undirected graph. Edges carry stable canonical indices 0..m-1;
// adjacency lists store (neighbor, edge index) so edge-indexed data
// (orientations, colorings) can be walked from either endpoint.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;

  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);

  int m() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  int other(int e, int v) const {
    auto [a, b] = edges[e];
    return a == v ? b : a;
  }
  bool all_degrees_even() const;
  long long volume() const;  // sum of degrees = 2m
};

// Empty result means the Graph invariants hold; otherwise one message per violation.
std::vector<std::string> validate_graph(const Graph& g);

bool is_connected(const Graph& g);

// Per-component BFS 2-coloring; nullopt iff some component has an odd cycle.
// Works on disconnected graphs (internal helper for matching/coloring code).
std::optional<std::vector<int>> try_two_color(const Graph& g);

struct BipartitionWitness {
  std::optional<std::vector<int>> side;  // values in {1,2} when present
};

// Requires connected input (DisconnectedInput otherwise); witness absent iff odd cycle.
BipartitionWitness bipartition(const Graph& g);

// builders used across tests and the CLI
Graph make_cycle(int n);
Graph make_complete(int n);
Graph make_complete_bipartite(int a, int b);
Graph make_path(int n);
// circulant C_n(s_1, ..): v ~ v+s mod n for each shift
Graph make_circulant(int n, const std::vector<int>& shifts);

// JSON format: {"n": int, "edges": [[u,v], ...]}
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);
std::string graph_to_dot(const Graph& g);

}  // namespace balor
