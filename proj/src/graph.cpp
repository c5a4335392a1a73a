#include "balor/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

namespace balor {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::OddDegree: return "OddDegree";
    case Errc::NotBipartite: return "NotBipartite";
    case Errc::NotBalanced: return "NotBalanced";
    case Errc::NotPerfect: return "NotPerfect";
    case Errc::NotRegularBipartite: return "NotRegularBipartite";
    case Errc::NotEvenRegular: return "NotEvenRegular";
    case Errc::NotTreeBall: return "NotTreeBall";
    case Errc::DisconnectedInput: return "DisconnectedInput";
    case Errc::BallTooLarge: return "BallTooLarge";
    case Errc::TooLarge: return "TooLarge";
    case Errc::UnsupportedParams: return "UnsupportedParams";
    case Errc::InconsistentCounts: return "InconsistentCounts";
    case Errc::BipartiteChain: return "BipartiteChain";
    case Errc::EigenFailure: return "EigenFailure";
    case Errc::GenerationFailed: return "GenerationFailed";
    case Errc::DegenerateClass: return "DegenerateClass";
    case Errc::NoDisjointMatchings: return "NoDisjointMatchings";
    case Errc::InvalidAutomorphism: return "InvalidAutomorphism";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  g.adj.assign(n, {});
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw Error(Errc::InvalidInput, "edge endpoint out of range");
    g.adj[u].push_back({v, e});
    g.adj[v].push_back({u, e});
  }
  return g;
}

bool Graph::all_degrees_even() const {
  for (int v = 0; v < n; ++v)
    if (degree(v) % 2 != 0) return false;
  return true;
}

long long Graph::volume() const { return 2LL * m(); }

std::vector<std::string> validate_graph(const Graph& g) {
  std::vector<std::string> out;
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    if (u == v) out.push_back("loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) {
      out.push_back("edge " + std::to_string(e) + " endpoint out of range");
      continue;
    }
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second)
      out.push_back("multi-edge {" + std::to_string(key.first) + "," + std::to_string(key.second) + "}");
  }
  if (static_cast<int>(g.adj.size()) != g.n) {
    out.push_back("adjacency size mismatch");
    return out;
  }
  // adjacency must mirror the edge list exactly
  long long half_edges = 0;
  for (int v = 0; v < g.n; ++v) {
    for (auto [u, e] : g.adj[v]) {
      ++half_edges;
      if (e < 0 || e >= g.m() || (g.edges[e] != std::make_pair(v, u) && g.edges[e] != std::make_pair(u, v)))
        out.push_back("adjacency of " + std::to_string(v) + " inconsistent with edge " + std::to_string(e));
    }
  }
  if (half_edges != 2LL * g.m()) out.push_back("adjacency covers wrong number of edge slots");
  return out;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return true;
  std::vector<char> vis(g.n, 0);
  std::queue<int> q;
  q.push(0);
  vis[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [u, e] : g.adj[v])
      if (!vis[u]) {
        vis[u] = 1;
        ++cnt;
        q.push(u);
      }
  }
  return cnt == g.n;
}

std::optional<std::vector<int>> try_two_color(const Graph& g) {
  std::vector<int> side(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (auto [u, e] : g.adj[v]) {
        if (side[u] < 0) {
          side[u] = 1 - side[v];
          q.push(u);
        } else if (side[u] == side[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

BipartitionWitness bipartition(const Graph& g) {
  if (!is_connected(g)) throw Error(Errc::DisconnectedInput, "bipartition requires a connected graph");
  BipartitionWitness w;
  w.side = try_two_color(g);
  if (w.side)
    for (int& s : *w.side) ++s;
  return w;
}

Graph make_cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph::from_edges(n, e);
}

Graph make_complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph::from_edges(n, e);
}

Graph make_complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.push_back({i, a + j});
  return Graph::from_edges(a + b, e);
}

Graph make_path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph::from_edges(n, e);
}

Graph make_circulant(int n, const std::vector<int>& shifts) {
  if (n < 3) throw Error(Errc::UnsupportedParams, "circulant needs n >= 3");
  std::set<std::pair<int, int>> es;
  for (int s : shifts) {
    if (s <= 0 || s % n == 0) throw Error(Errc::UnsupportedParams, "circulant shift must be nonzero mod n");
    for (int v = 0; v < n; ++v) es.insert(std::minmax(v, (v + s) % n));
  }
  std::vector<std::pair<int, int>> e(es.begin(), es.end());
  return Graph::from_edges(n, e);
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n;
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges) j["edges"].push_back({u, v});
  return j.dump();
}

Graph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& ex) {
    throw Error(Errc::IoError, std::string("bad json: ") + ex.what());
  }
  if (!j.contains("n") || !j.contains("edges"))
    throw Error(Errc::InvalidInput, "graph json needs fields n and edges");
  std::vector<std::pair<int, int>> e;
  for (const auto& pr : j["edges"]) {
    if (!pr.is_array() || pr.size() != 2) throw Error(Errc::InvalidInput, "edge entries must be pairs");
    e.push_back({pr[0].get<int>(), pr[1].get<int>()});
  }
  Graph g = Graph::from_edges(j["n"].get<int>(), e);
  auto bad = validate_graph(g);
  if (!bad.empty()) throw Error(Errc::InvalidInput, "invalid graph: " + bad.front());
  return g;
}

std::string graph_to_dot(const Graph& g) {
  std::ostringstream os;
  os << "graph g {\n";
  for (int v = 0; v < g.n; ++v) os << "  " << v << ";\n";
  for (auto [u, v] : g.edges) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace balor
