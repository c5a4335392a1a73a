#include "balor/decorations.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace balor {

namespace {

// remaining edges as a new graph plus the per-edge map back to host ids
std::pair<Graph, std::vector<int>> drop_edges(const Graph& g, const std::vector<char>& drop) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> orig;
  for (int e = 0; e < g.m(); ++e) {
    if (drop[e]) continue;
    edges.push_back(g.edges[e]);
    orig.push_back(e);
  }
  return {Graph::from_edges(g.n, std::move(edges)), std::move(orig)};
}

int regular_degree(const Graph& g) {
  if (g.n == 0) return 0;
  int d = g.degree(0);
  for (int v = 1; v < g.n; ++v)
    if (g.degree(v) != d) return -1;
  return d;
}

}  // namespace

std::vector<BalanceViolation> verify_balanced(const Graph& g, const Orientation& o) {
  if (static_cast<int>(o.head.size()) != g.m())
    throw Error(Errc::InvalidInput, "verify_balanced: orientation size != edge count");
  std::vector<int> indeg(g.n, 0);
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    if (o.head[e] != u && o.head[e] != v)
      throw Error(Errc::InvalidInput, "verify_balanced: head is not an endpoint");
    ++indeg[o.head[e]];
  }
  std::vector<BalanceViolation> out;
  for (int v = 0; v < g.n; ++v) {
    int in = indeg[v], deg = g.degree(v);
    if (2 * in != deg) out.push_back({v, in, deg - in});
  }
  return out;
}

Orientation euler_orient(const Graph& g) {
  if (!g.all_degrees_even()) throw Error(Errc::OddDegree, "euler_orient: odd-degree vertex");
  Orientation o;
  o.head.assign(g.m(), -1);
  std::vector<std::size_t> it(g.n, 0);
  std::vector<char> used(g.m(), 0);
  for (int start = 0; start < g.n; ++start) {
    while (true) {
      while (it[start] < g.adj[start].size() && used[g.adj[start][it[start]].second])
        ++it[start];
      if (it[start] == g.adj[start].size()) break;
      int v = start;  // walk a circuit; even degrees guarantee it closes at start
      do {
        while (it[v] < g.adj[v].size() && used[g.adj[v][it[v]].second]) ++it[v];
        if (it[v] >= g.adj[v].size())
          throw Error(Errc::InvalidInput, "euler_orient: walk parity violated");
        auto [u, e] = g.adj[v][it[v]];
        used[e] = 1;
        o.head[e] = u;
        v = u;
      } while (v != start);
    }
  }
  return o;
}

bool is_proper_edge_coloring(const Graph& g, const EdgeColoring& c) {
  if (static_cast<int>(c.color.size()) != g.m()) return false;
  for (int e = 0; e < g.m(); ++e)
    if (c.color[e] < 0 || c.color[e] >= c.colors) return false;
  for (int v = 0; v < g.n; ++v) {
    std::vector<char> seen(c.colors, 0);
    for (auto [u, e] : g.adj[v]) {
      (void)u;
      if (seen[c.color[e]]) return false;
      seen[c.color[e]] = 1;
    }
  }
  return true;
}

EdgeColoring konig_edge_coloring(const Graph& g) {
  auto two = try_two_color(g);
  if (!two) throw Error(Errc::NotBipartite, "konig_edge_coloring: input has an odd cycle");
  int delta = 0;
  for (int v = 0; v < g.n; ++v) delta = std::max(delta, g.degree(v));
  EdgeColoring result;
  result.colors = delta;
  result.color.assign(g.m(), -1);
  if (delta == 0) return result;

  // Complete to a delta-regular bipartite multigraph: pad the smaller side with
  // phantom vertices, then join deficient pairs (parallel edges allowed).
  std::vector<int> left, right;
  for (int v = 0; v < g.n; ++v) ((*two)[v] == 0 ? left : right).push_back(v);
  int total = g.n;
  while (left.size() < right.size()) left.push_back(total++);
  while (right.size() < left.size()) right.push_back(total++);

  std::vector<std::pair<int, int>> medges = g.edges;  // ids < g.m() are real
  std::vector<int> deg(total, 0);
  for (auto& [u, v] : medges) {
    ++deg[u];
    ++deg[v];
  }
  std::size_t li = 0, ri = 0;
  while (true) {
    while (li < left.size() && deg[left[li]] >= delta) ++li;
    while (ri < right.size() && deg[right[ri]] >= delta) ++ri;
    if (li == left.size() || ri == right.size()) break;
    medges.emplace_back(left[li], right[ri]);
    ++deg[left[li]];
    ++deg[right[ri]];
  }

  // Peel delta perfect matchings; each one is a color class.
  std::vector<int> cur_orig(medges.size());
  std::iota(cur_orig.begin(), cur_orig.end(), 0);
  std::vector<std::pair<int, int>> cur_edges = std::move(medges);
  for (int c = 0; c < delta; ++c) {
    Graph h = Graph::from_edges(total, cur_edges);
    Matching m = hopcroft_karp(h);
    if (!m.covers_all())
      throw Error(Errc::NotRegularBipartite, "konig_edge_coloring: completion lost regularity");
    std::vector<char> peel(h.m(), 0);
    std::vector<char> done(total, 0);
    for (int v = 0; v < total; ++v) {
      if (done[v]) continue;
      int u = m.partner[v];
      done[v] = done[u] = 1;
      for (auto [w, e] : h.adj[v]) {
        if (w == u && !peel[e]) {
          peel[e] = 1;
          if (cur_orig[e] < g.m()) result.color[cur_orig[e]] = c;
          break;
        }
      }
    }
    std::vector<std::pair<int, int>> nxt_edges;
    std::vector<int> nxt_orig;
    for (int e = 0; e < h.m(); ++e) {
      if (peel[e]) continue;
      nxt_edges.push_back(cur_edges[e]);
      nxt_orig.push_back(cur_orig[e]);
    }
    cur_edges = std::move(nxt_edges);
    cur_orig = std::move(nxt_orig);
  }
  return result;
}

std::vector<std::string> verify_schreier(const Graph& g, const SchreierDecoration& sd) {
  std::vector<std::string> issues;
  if (static_cast<int>(sd.color.size()) != g.m() ||
      static_cast<int>(sd.orientation.head.size()) != g.m()) {
    issues.push_back("decoration arrays do not match the edge count");
    return issues;
  }
  int d = sd.colors;
  int reg = regular_degree(g);
  if (reg != 2 * d)
    issues.push_back("graph is not 2d-regular for d = " + std::to_string(d));
  for (int e = 0; e < g.m(); ++e) {
    if (sd.color[e] < 0 || sd.color[e] >= d) {
      issues.push_back("edge " + std::to_string(e) + " has color out of range");
      return issues;
    }
    auto [u, v] = g.edges[e];
    if (sd.orientation.head[e] != u && sd.orientation.head[e] != v) {
      issues.push_back("edge " + std::to_string(e) + " head is not an endpoint");
      return issues;
    }
  }
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> in(d, 0), out(d, 0);
    for (auto [u, e] : g.adj[v]) {
      (void)u;
      (sd.orientation.head[e] == v ? in : out)[sd.color[e]]++;
    }
    for (int c = 0; c < d; ++c) {
      if (in[c] != 1)
        issues.push_back("vertex " + std::to_string(v) + " has " + std::to_string(in[c]) +
                         " incoming edges of color " + std::to_string(c));
      if (out[c] != 1)
        issues.push_back("vertex " + std::to_string(v) + " has " + std::to_string(out[c]) +
                         " outgoing edges of color " + std::to_string(c));
    }
  }
  return issues;
}

SchreierDecoration schreier_decorate_finite(const Graph& g) {
  int reg = regular_degree(g);
  if (reg < 0 || reg % 2 != 0)
    throw Error(Errc::NotEvenRegular, "schreier_decorate_finite: input must be 2d-regular");
  int d = reg / 2;
  SchreierDecoration sd;
  sd.orientation = euler_orient(g);
  sd.colors = d;
  sd.color.assign(g.m(), -1);
  if (d == 0) return sd;

  // Bipartite double along the orientation: tail role v, head role n + v; edge ids
  // coincide with the host's, so the Konig colors pull back directly.
  std::vector<std::pair<int, int>> dedges(g.m());
  for (int e = 0; e < g.m(); ++e) {
    int h = sd.orientation.head[e];
    dedges[e] = {g.other(e, h), g.n + h};
  }
  Graph dbl = Graph::from_edges(2 * g.n, std::move(dedges));
  EdgeColoring col = konig_edge_coloring(dbl);
  sd.color = col.color;
  return sd;
}

Orientation forget_colors(const SchreierDecoration& sd) { return sd.orientation; }

UnorderedClassDecoration forget_order(const SchreierDecoration& sd) {
  if (sd.colors < 2)
    throw Error(Errc::InvalidInput, "forget_order: needs at least two color classes");
  UnorderedClassDecoration ud;
  ud.orientation = sd.orientation;
  ud.ordered_colors = sd.colors - 2;
  ud.color.assign(sd.color.size(), 0);
  for (std::size_t e = 0; e < sd.color.size(); ++e)
    ud.color[e] = std::min(sd.color[e], sd.colors - 2);
  return ud;
}

InOutDecomposition in_out_subtree_decomposition(const Graph& g, const Orientation& o) {
  if (static_cast<int>(o.head.size()) != g.m())
    throw Error(Errc::InvalidInput, "in_out_subtree_decomposition: orientation size mismatch");
  std::vector<int> parent(g.m());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int v = 0; v < g.n; ++v) {
    int first_in = -1, first_out = -1;
    for (auto [u, e] : g.adj[v]) {
      (void)u;
      int& anchor = (o.head[e] == v) ? first_in : first_out;
      if (anchor < 0)
        anchor = e;
      else
        parent[find(e)] = find(anchor);
    }
  }
  InOutDecomposition dec;
  dec.component.assign(g.m(), -1);
  std::vector<int> id_of;
  for (int e = 0; e < g.m(); ++e) {
    int r = find(e);
    int found = -1;
    for (std::size_t i = 0; i < id_of.size(); ++i)
      if (id_of[i] == r) {
        found = static_cast<int>(i);
        break;
      }
    if (found < 0) {
      found = static_cast<int>(id_of.size());
      id_of.push_back(r);
    }
    dec.component[e] = found;
  }
  dec.component_count = static_cast<int>(id_of.size());
  dec.components_at_vertex.assign(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> seen;
    for (auto [u, e] : g.adj[v]) {
      (void)u;
      int c = dec.component[e];
      if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
    }
    dec.components_at_vertex[v] = static_cast<int>(seen.size());
  }
  return dec;
}

PropagationResult alternating_constraint_propagation(const Graph& g, const Orientation& o,
                                                     int seed_edge, int seed_color) {
  if (regular_degree(g) != 4)
    throw Error(Errc::UnsupportedParams,
                "alternating_constraint_propagation: implemented for 4-regular inputs only");
  if (!verify_balanced(g, o).empty())
    throw Error(Errc::NotBalanced, "alternating_constraint_propagation: orientation unbalanced");
  if (seed_edge < 0 || seed_edge >= g.m() || (seed_color != 0 && seed_color != 1))
    throw Error(Errc::InvalidInput, "alternating_constraint_propagation: bad seed");

  // partner[e at v] = the other same-role edge at v; its color must be 1 - c(e)
  auto partner = [&](int e, int v) {
    bool incoming = o.head[e] == v;
    for (auto [u, f] : g.adj[v]) {
      (void)u;
      if (f != e && (o.head[f] == v) == incoming) return f;
    }
    return -1;
  };

  PropagationResult res;
  res.forced.assign(g.m(), -1);
  std::vector<int> queue = {seed_edge};
  res.forced[seed_edge] = seed_color;
  while (!queue.empty() && !res.contradiction) {
    int e = queue.back();
    queue.pop_back();
    auto [a, b] = g.edges[e];
    for (int v : {a, b}) {
      int f = partner(e, v);
      if (f < 0) continue;
      int want = 1 - res.forced[e];
      if (res.forced[f] < 0) {
        res.forced[f] = want;
        queue.push_back(f);
      } else if (res.forced[f] != want) {
        res.contradiction = true;
        res.contradiction_vertex = v;
        break;
      }
    }
  }
  return res;
}

SchreierDecoration pair_unordered_colors(const Graph& g, const UnorderedClassDecoration& ud,
                                         std::uint64_t seed, int retry_cap) {
  if (static_cast<int>(ud.color.size()) != g.m() ||
      static_cast<int>(ud.orientation.head.size()) != g.m())
    throw Error(Errc::InvalidInput, "pair_unordered_colors: decoration size mismatch");
  const int merged = ud.ordered_colors;
  const int d = ud.ordered_colors + 2;

  // class edges at each vertex, split by role
  std::vector<std::vector<int>> cin(g.n), cout(g.n);
  for (int e = 0; e < g.m(); ++e) {
    if (ud.color[e] != merged) continue;
    int h = ud.orientation.head[e];
    cin[h].push_back(e);
    cout[g.other(e, h)].push_back(e);
  }
  for (int v = 0; v < g.n; ++v)
    if (cin[v].size() != 2 || cout[v].size() != 2)
      throw Error(Errc::DegenerateClass,
                  "pair_unordered_colors: merged class must have 2 in and 2 out per vertex");

  std::vector<int> color = ud.color;
  for (int attempt = 0; attempt < retry_cap; ++attempt) {
    for (int v = 0; v < g.n; ++v) {
      if (cin[v].empty()) continue;
      std::uint64_t bit =
          mix64(hash_combine(hash_combine(seed, static_cast<std::uint64_t>(attempt)),
                             static_cast<std::uint64_t>(v))) &
          1ULL;
      int lo = std::min(cin[v][0], cin[v][1]), hi = std::max(cin[v][0], cin[v][1]);
      color[lo] = bit ? d - 2 : d - 1;
      color[hi] = bit ? d - 1 : d - 2;
    }
    bool ok = true;
    for (int v = 0; v < g.n && ok; ++v)
      if (!cout[v].empty() && color[cout[v][0]] == color[cout[v][1]]) ok = false;
    if (ok) {
      SchreierDecoration sd;
      sd.orientation = ud.orientation;
      sd.colors = d;
      sd.color = std::move(color);
      return sd;
    }
  }
  throw Error(Errc::GenerationFailed, "pair_unordered_colors: retry cap exhausted");
}

namespace {

// Schreier decoration with seed-dependent output: decorate a seeded relabeling of
// the host and pull the result back through the isomorphism.
SchreierDecoration schreier_decorate_seeded(const Graph& g, std::uint64_t seed) {
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(mix64(seed));
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> edges(g.m());
  for (int e = 0; e < g.m(); ++e) edges[e] = {perm[g.edges[e].first], perm[g.edges[e].second]};
  Graph h = Graph::from_edges(g.n, std::move(edges));
  SchreierDecoration hd = schreier_decorate_finite(h);
  std::vector<int> inv(g.n);
  for (int v = 0; v < g.n; ++v) inv[perm[v]] = v;
  SchreierDecoration sd;
  sd.colors = hd.colors;
  sd.color = hd.color;
  sd.orientation.head.resize(g.m());
  for (int e = 0; e < g.m(); ++e) sd.orientation.head[e] = inv[hd.orientation.head[e]];
  return sd;
}

}  // namespace

SchreierDecoration lift_schreier(const Graph& g, std::uint64_t seed) {
  int reg = regular_degree(g);
  if (reg < 4 || reg % 2 != 0)
    throw Error(Errc::NotEvenRegular, "lift_schreier: input must be (2d+2)-regular, d >= 1");
  if (!try_two_color(g)) throw Error(Errc::NotBipartite, "lift_schreier: input has an odd cycle");
  const int d = reg / 2 - 1;

  auto [m1, m2] = two_disjoint_perfect_matchings(g);
  std::vector<char> in_matchings(g.m(), 0);
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    if (m1.partner[u] == v || m2.partner[u] == v) in_matchings[e] = 1;
  }

  // Decorate the 2d-regular remainder and keep only its color-0 class K.
  auto [rest, rest_orig] = drop_edges(g, in_matchings);
  SchreierDecoration sd_rest = schreier_decorate_seeded(rest, hash_combine(seed, 1));
  std::vector<char> in_k(g.m(), 0);
  std::vector<int> k_head(g.m(), -1);
  for (int e = 0; e < rest.m(); ++e) {
    if (sd_rest.color[e] != 0) continue;
    in_k[rest_orig[e]] = 1;
    k_head[rest_orig[e]] = sd_rest.orientation.head[e];
  }

  // Everything outside K (the matchings included) is 2d-regular; decorate it anew.
  auto [other, other_orig] = drop_edges(g, in_k);
  SchreierDecoration sd_other = schreier_decorate_seeded(other, hash_combine(seed, 2));

  SchreierDecoration out;
  out.colors = d + 1;
  out.color.assign(g.m(), -1);
  out.orientation.head.assign(g.m(), -1);
  for (int e = 0; e < g.m(); ++e) {
    if (in_k[e]) {
      out.color[e] = d;  // K becomes the new top color class
      out.orientation.head[e] = k_head[e];
    }
  }
  for (int e = 0; e < other.m(); ++e) {
    out.color[other_orig[e]] = sd_other.color[e];
    out.orientation.head[other_orig[e]] = sd_other.orientation.head[e];
  }
  return out;
}

}  // namespace balor
