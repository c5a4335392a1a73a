#include "balor/matching.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <queue>

namespace balor {

std::vector<int> Matching::edge_view(const Graph& g) const {
  std::vector<int> ids;
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    if (partner[u] == v && partner[v] == u) ids.push_back(e);
  }
  return ids;
}

Matching hopcroft_karp(const Graph& g) {
  auto two = try_two_color(g);
  if (!two) throw Error(Errc::NotBipartite, "hopcroft_karp: input has an odd cycle");
  const std::vector<int>& side = *two;
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> match(g.n, -1), dist(g.n, kInf);

  auto bfs = [&]() {
    std::queue<int> q;
    bool reachable_free = false;
    for (int v = 0; v < g.n; ++v) {
      if (side[v] != 0) continue;
      if (match[v] < 0) {
        dist[v] = 0;
        q.push(v);
      } else {
        dist[v] = kInf;
      }
    }
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (auto [u, e] : g.adj[v]) {
        (void)e;
        int w = match[u];
        if (w < 0) {
          reachable_free = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(int)> augment = [&](int v) {
    for (auto [u, e] : g.adj[v]) {
      (void)e;
      int w = match[u];
      if (w < 0 || (dist[w] == dist[v] + 1 && augment(w))) {
        match[v] = u;
        match[u] = v;
        return true;
      }
    }
    dist[v] = kInf;
    return false;
  };

  while (bfs())
    for (int v = 0; v < g.n; ++v)
      if (side[v] == 0 && match[v] < 0) augment(v);

  Matching res;
  res.partner = std::move(match);
  return res;
}

namespace {

long long pm_count_rec(const Graph& g, std::vector<char>& used, int from) {
  int v = from;
  while (v < g.n && used[v]) ++v;
  if (v == g.n) return 1;
  used[v] = 1;
  long long total = 0;
  for (auto [u, e] : g.adj[v]) {
    (void)e;
    if (used[u]) continue;
    used[u] = 1;
    total += pm_count_rec(g, used, v + 1);
    used[u] = 0;
  }
  used[v] = 0;
  return total;
}

}  // namespace

long long enumerate_perfect_matchings(const Graph& g, int edge_cap) {
  if (g.m() > edge_cap)
    throw Error(Errc::TooLarge, "enumerate_perfect_matchings: edge cap exceeded");
  if (g.n % 2 != 0) return 0;
  if (g.n == 0) return 1;
  std::vector<char> used(g.n, 0);
  return pm_count_rec(g, used, 0);
}

namespace {

struct FoundPath {
  std::vector<int> vertices;  // source (left, free) .. target (right, free)
  double min_label = 0.0;
  std::uint64_t tiebreak = 0;
};

// Lexicographically smallest shortest augmenting path of length <= max_len edges
// from the free left vertex src, comparing paths by their vertex label sequence.
// Each BFS layer is kept sorted by path order — rank of the predecessor's path,
// then own label — so processing a layer in order makes first-write-wins pick the
// lex-min predecessor for every vertex of the next layer.
std::optional<std::vector<int>> lex_min_augmenting_path(
    const Graph& g, const std::vector<int>& match, const std::vector<double>& labels,
    int src, int max_len, const std::vector<std::uint64_t>& tie) {
  std::vector<int> parent(g.n, -2);  // -2 unvisited, -1 root
  std::vector<long long> rank(g.n, -1);
  std::vector<int> layer = {src};
  parent[src] = -1;
  rank[src] = 0;

  auto order_layer = [&](std::vector<int>& vs) {
    std::sort(vs.begin(), vs.end(), [&](int a, int b) {
      if (rank[parent[a]] != rank[parent[b]]) return rank[parent[a]] < rank[parent[b]];
      if (labels[a] != labels[b]) return labels[a] < labels[b];
      return tie[a] < tie[b];
    });
    for (std::size_t i = 0; i < vs.size(); ++i) rank[vs[i]] = static_cast<long long>(i);
  };

  for (int len = 1; len <= max_len; ++len) {
    bool to_right = (len % 2 == 1);  // odd steps cross free edges to the right side
    std::vector<int> next;
    std::vector<int> frees;
    for (int v : layer) {
      if (to_right) {
        for (auto [u, e] : g.adj[v]) {
          (void)e;
          if (parent[u] != -2 || u == match[v]) continue;
          parent[u] = v;
          (match[u] < 0 ? frees : next).push_back(u);
        }
      } else {
        int u = match[v];
        if (u >= 0 && parent[u] == -2) {
          parent[u] = v;
          next.push_back(u);
        }
      }
    }
    if (!frees.empty()) {
      order_layer(frees);
      std::vector<int> path;
      for (int v = frees[0]; v != -1; v = parent[v]) path.push_back(v);
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (next.empty()) return std::nullopt;
    order_layer(next);
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

std::pair<Matching, std::vector<RoundStats>> local_matching_rounds(
    const Graph& g, const std::vector<double>& labels, int k_max, std::uint64_t seed) {
  if (static_cast<int>(labels.size()) != g.n)
    throw Error(Errc::InvalidInput, "local_matching_rounds: label size != vertex count");
  if (k_max < 1) throw Error(Errc::InvalidInput, "local_matching_rounds: k_max must be >= 1");
  auto two = try_two_color(g);
  if (!two) throw Error(Errc::NotBipartite, "local_matching_rounds: input has an odd cycle");
  const std::vector<int>& side = *two;

  std::vector<std::uint64_t> tie(g.n);
  for (int v = 0; v < g.n; ++v) tie[v] = mix64(hash_combine(seed, static_cast<std::uint64_t>(v)));

  std::vector<int> match(g.n, -1);
  std::vector<RoundStats> stats;
  for (int k = 1; k <= k_max; ++k) {
    RoundStats rs;
    rs.round = k;
    const int max_len = 2 * k - 1;
    while (true) {
      std::vector<FoundPath> found;
      for (int v = 0; v < g.n; ++v) {
        if (side[v] != 0 || match[v] >= 0) continue;
        auto path = lex_min_augmenting_path(g, match, labels, v, max_len, tie);
        if (!path) continue;
        FoundPath fp;
        fp.vertices = std::move(*path);
        fp.min_label = labels[fp.vertices[0]];
        fp.tiebreak = tie[fp.vertices[0]];
        for (int u : fp.vertices) {
          fp.min_label = std::min(fp.min_label, labels[u]);
          fp.tiebreak = hash_combine(fp.tiebreak, tie[u]);
        }
        found.push_back(std::move(fp));
      }
      if (found.empty()) break;
      std::sort(found.begin(), found.end(), [&](const FoundPath& a, const FoundPath& b) {
        if (a.min_label != b.min_label) return a.min_label < b.min_label;
        std::size_t len = std::min(a.vertices.size(), b.vertices.size());
        for (std::size_t i = 0; i < len; ++i) {
          if (labels[a.vertices[i]] != labels[b.vertices[i]])
            return labels[a.vertices[i]] < labels[b.vertices[i]];
        }
        if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
        return a.tiebreak < b.tiebreak;
      });
      std::vector<char> used(g.n, 0);
      long long applied = 0;
      for (const auto& fp : found) {
        bool clash = false;
        for (int u : fp.vertices)
          if (used[u]) {
            clash = true;
            break;
          }
        if (clash) continue;
        for (int u : fp.vertices) used[u] = 1;
        // augment: free edges at even positions become matched
        for (std::size_t i = 0; i + 1 < fp.vertices.size(); i += 2) {
          match[fp.vertices[i]] = fp.vertices[i + 1];
          match[fp.vertices[i + 1]] = fp.vertices[i];
        }
        ++applied;
        rs.max_path_len =
            std::max(rs.max_path_len, static_cast<int>(fp.vertices.size()) - 1);
      }
      rs.flips += applied;
      if (applied == 0) break;
    }
    int unmatched = 0;
    for (int v = 0; v < g.n; ++v)
      if (match[v] < 0) ++unmatched;
    rs.unmatched_frac = g.n > 0 ? static_cast<double>(unmatched) / g.n : 0.0;
    stats.push_back(rs);
  }
  Matching res;
  res.partner = std::move(match);
  return {res, stats};
}

std::pair<Matching, Matching> two_disjoint_perfect_matchings(const Graph& g) {
  auto two = try_two_color(g);
  if (!two)
    throw Error(Errc::NotRegularBipartite, "two_disjoint_perfect_matchings: odd cycle present");
  if (g.n == 0 || g.m() == 0)
    throw Error(Errc::NotRegularBipartite, "two_disjoint_perfect_matchings: empty input");
  int k = g.degree(0);
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) != k)
      throw Error(Errc::NotRegularBipartite, "two_disjoint_perfect_matchings: not regular");
  if (k < 2)
    throw Error(Errc::NotRegularBipartite, "two_disjoint_perfect_matchings: degree must be >= 2");

  Matching m1 = hopcroft_karp(g);
  if (!m1.covers_all())
    throw Error(Errc::NoDisjointMatchings, "two_disjoint_perfect_matchings: no perfect matching");
  std::vector<std::pair<int, int>> rest;
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    if (m1.partner[u] == v) continue;
    rest.push_back(g.edges[e]);
  }
  Graph h = Graph::from_edges(g.n, std::move(rest));
  Matching m2 = hopcroft_karp(h);
  if (!m2.covers_all())
    throw Error(Errc::NoDisjointMatchings,
                "two_disjoint_perfect_matchings: remainder has no perfect matching");
  return {m1, m2};
}

}  // namespace balor
