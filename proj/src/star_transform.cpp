#include "balor/star_transform.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>

namespace balor {

namespace {

long long factorial(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// base must be 2d-regular for the three-way decoration conversions
int star_half_degree(const Graph& g) {
  if (g.n == 0 || g.m() == 0)
    throw Error(Errc::NotEvenRegular, "star conversions: empty base graph");
  int deg = g.degree(0);
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) != deg)
      throw Error(Errc::NotEvenRegular, "star conversions: base graph must be 2d-regular");
  if (deg % 2 != 0)
    throw Error(Errc::NotEvenRegular, "star conversions: base graph must be 2d-regular");
  return deg / 2;
}

int star_edge_between(const StarGraph& sg, int edge_vertex, int copy_vertex) {
  for (auto [u, f] : sg.star.adj[edge_vertex])
    if (u == copy_vertex) return f;
  throw Error(Errc::InvalidInput, "star transform: expected star edge is missing");
}

void check_star_matching(const StarGraph& sg, const Matching& m) {
  if (static_cast<int>(m.partner.size()) != sg.star.n)
    throw Error(Errc::NotPerfect, "star matching: partner size != star vertex count");
  for (int x = 0; x < sg.star.n; ++x) {
    int p = m.partner[x];
    if (p < 0) throw Error(Errc::NotPerfect, "star matching: uncovered vertex");
    if (p >= sg.star.n || m.partner[p] != x)
      throw Error(Errc::NotPerfect, "star matching: partners are not mutual");
    bool adjacent = false;
    for (auto [u, f] : sg.star.adj[x]) {
      (void)f;
      if (u == p) {
        adjacent = true;
        break;
      }
    }
    if (!adjacent) throw Error(Errc::NotPerfect, "star matching: matched pair not adjacent");
  }
}

}  // namespace

StarGraph build_star(const Graph& g) {
  if (!g.all_degrees_even()) throw Error(Errc::OddDegree, "build_star: odd-degree vertex");
  StarGraph sg;
  sg.base = g;
  const int m = g.m();
  sg.edge_vertex.resize(m);
  std::iota(sg.edge_vertex.begin(), sg.edge_vertex.end(), 0);
  sg.copy_offset.resize(g.n);
  int next = m;
  for (int v = 0; v < g.n; ++v) {
    sg.copy_offset[v] = next;
    next += g.degree(v) / 2;
  }
  sg.kind.resize(next);
  for (int e = 0; e < m; ++e) sg.kind[e] = {true, e, -1, -1};
  for (int v = 0; v < g.n; ++v)
    for (int i = 0; i < g.degree(v) / 2; ++i) sg.kind[sg.copy_offset[v] + i] = {false, -1, v, i};

  std::vector<std::pair<int, int>> sedges;
  for (int e = 0; e < m; ++e) {
    auto [u, v] = g.edges[e];
    for (int i = 0; i < g.degree(u) / 2; ++i) sedges.emplace_back(e, sg.copy_vertex(u, i));
    for (int i = 0; i < g.degree(v) / 2; ++i) sedges.emplace_back(e, sg.copy_vertex(v, i));
  }
  sg.star = Graph::from_edges(next, std::move(sedges));
  return sg;
}

Orientation matching_to_orientation(const StarGraph& sg, const Matching& m) {
  check_star_matching(sg, m);
  Orientation o;
  o.head.assign(sg.base.m(), -1);
  for (int e = 0; e < sg.base.m(); ++e) {
    int p = m.partner[sg.edge_vertex[e]];
    o.head[e] = sg.kind[p].v;  // the matched copy's owner becomes the head
  }
  return o;
}

Matching orientation_to_matching(const StarGraph& sg, const Orientation& o,
                                 AssignmentRule rule, std::uint64_t seed) {
  auto violations = verify_balanced(sg.base, o);
  if (!violations.empty())
    throw Error(Errc::NotBalanced,
                "orientation_to_matching: unbalanced at vertex " +
                    std::to_string(violations.front().v));
  Matching m;
  m.partner.assign(sg.star.n, -1);
  for (int v = 0; v < sg.base.n; ++v) {
    std::vector<int> in_edges;
    for (auto [u, e] : sg.base.adj[v]) {
      (void)u;
      if (o.head[e] == v) in_edges.push_back(e);
    }
    std::sort(in_edges.begin(), in_edges.end());
    if (rule == AssignmentRule::kSeededRandom) {
      std::mt19937_64 rng(mix64(hash_combine(seed, static_cast<std::uint64_t>(v))));
      std::shuffle(in_edges.begin(), in_edges.end(), rng);
    }
    for (std::size_t i = 0; i < in_edges.size(); ++i) {
      int a = sg.edge_vertex[in_edges[i]];
      int b = sg.copy_vertex(v, static_cast<int>(i));
      m.partner[a] = b;
      m.partner[b] = a;
    }
  }
  return m;
}

long long count_balanced_orientations(const Graph& g, int edge_cap) {
  if (g.m() > edge_cap)
    throw Error(Errc::TooLarge, "count_balanced_orientations: edge cap exceeded");
  if (!g.all_degrees_even()) return 0;
  std::vector<int> in_left(g.n), out_left(g.n);
  for (int v = 0; v < g.n; ++v) in_left[v] = out_left[v] = g.degree(v) / 2;
  long long count = 0;
  std::vector<int> head(g.m(), -1);
  std::function<void(int)> rec = [&](int e) {
    if (e == g.m()) {
      ++count;
      return;
    }
    auto [u, v] = g.edges[e];
    if (in_left[v] > 0 && out_left[u] > 0) {
      --in_left[v];
      --out_left[u];
      rec(e + 1);
      ++in_left[v];
      ++out_left[u];
    }
    if (in_left[u] > 0 && out_left[v] > 0) {
      --in_left[u];
      --out_left[v];
      rec(e + 1);
      ++in_left[u];
      ++out_left[v];
    }
  };
  rec(0);
  return count;
}

std::vector<Orientation> enumerate_balanced_orientations(const Graph& g, int edge_cap) {
  if (g.m() > edge_cap)
    throw Error(Errc::TooLarge, "enumerate_balanced_orientations: edge cap exceeded");
  std::vector<Orientation> out;
  if (!g.all_degrees_even()) return out;
  std::vector<int> in_left(g.n), out_left(g.n);
  for (int v = 0; v < g.n; ++v) in_left[v] = out_left[v] = g.degree(v) / 2;
  std::vector<int> head(g.m(), -1);
  std::function<void(int)> rec = [&](int e) {
    if (e == g.m()) {
      Orientation o;
      o.head = head;
      out.push_back(std::move(o));
      return;
    }
    auto [u, v] = g.edges[e];
    if (in_left[v] > 0 && out_left[u] > 0) {
      --in_left[v];
      --out_left[u];
      head[e] = v;
      rec(e + 1);
      ++in_left[v];
      ++out_left[u];
    }
    if (in_left[u] > 0 && out_left[v] > 0) {
      --in_left[u];
      --out_left[v];
      head[e] = u;
      rec(e + 1);
      ++in_left[u];
      ++out_left[v];
    }
  };
  rec(0);
  return out;
}

CorrespondenceCount count_correspondence(const Graph& g) {
  if (g.m() > 12) throw Error(Errc::TooLarge, "count_correspondence: more than 12 edges");
  CorrespondenceCount cc;
  cc.balanced_orientations = count_balanced_orientations(g, 12);
  StarGraph sg = build_star(g);
  cc.perfect_matchings = enumerate_perfect_matchings(sg.star, sg.star.m());
  cc.per_orientation_factor = 1;
  for (int v = 0; v < g.n; ++v) cc.per_orientation_factor *= factorial(g.degree(v) / 2);
  cc.identity_holds =
      cc.perfect_matchings == cc.balanced_orientations * cc.per_orientation_factor;
  return cc;
}

Matching star_coloring_to_matching(const StarGraph& sg, const EdgeColoring& col,
                                   int color_class) {
  star_half_degree(sg.base);
  if (!is_proper_edge_coloring(sg.star, col))
    throw Error(Errc::InvalidInput, "star conversion: not a proper edge coloring of the star");
  if (color_class < 0 || color_class >= col.colors)
    throw Error(Errc::InvalidInput, "star conversion: color class out of range");
  Matching m;
  m.partner.assign(sg.star.n, -1);
  for (int f = 0; f < sg.star.m(); ++f) {
    if (col.color[f] != color_class) continue;
    auto [a, b] = sg.star.edges[f];
    m.partner[a] = b;
    m.partner[b] = a;
  }
  // a color class of a proper 2d-coloring of a 2d-regular graph covers everything
  if (!m.covers_all())
    throw Error(Errc::InvalidInput, "star conversion: color class is not a perfect matching");
  return m;
}

Matching star_schreier_to_matching(const StarGraph& sg, const SchreierDecoration& sd,
                                   int color) {
  star_half_degree(sg.base);
  auto issues = verify_schreier(sg.star, sd);
  if (!issues.empty())
    throw Error(Errc::InvalidInput, "star conversion: " + issues.front());
  if (color < 0 || color >= sd.colors)
    throw Error(Errc::InvalidInput, "star conversion: color out of range");
  Matching m;
  m.partner.assign(sg.star.n, -1);
  for (int f = 0; f < sg.star.m(); ++f) {
    if (sd.color[f] != color) continue;
    // keep the copy -> edge-vertex oriented representatives of the class
    if (!sg.kind[sd.orientation.head[f]].is_edge) continue;
    auto [a, b] = sg.star.edges[f];
    m.partner[a] = b;
    m.partner[b] = a;
  }
  if (!m.covers_all())
    throw Error(Errc::InvalidInput, "star conversion: selected class does not cover the star");
  return m;
}

EdgeColoring star_schreier_to_coloring(const StarGraph& sg, const SchreierDecoration& sd) {
  int d = star_half_degree(sg.base);
  auto issues = verify_schreier(sg.star, sd);
  if (!issues.empty())
    throw Error(Errc::InvalidInput, "star conversion: " + issues.front());
  EdgeColoring col;
  col.colors = 2 * d;
  col.color.assign(sg.star.m(), -1);
  for (int f = 0; f < sg.star.m(); ++f) {
    bool into_copy = !sg.kind[sd.orientation.head[f]].is_edge;
    col.color[f] = 2 * sd.color[f] + (into_copy ? 0 : 1);
  }
  return col;
}

SchreierDecoration star_coloring_to_schreier(const StarGraph& sg, const EdgeColoring& col) {
  int d = star_half_degree(sg.base);
  if (col.colors != 2 * d || !is_proper_edge_coloring(sg.star, col))
    throw Error(Errc::InvalidInput, "star conversion: not a proper 2d-coloring of the star");
  SchreierDecoration sd;
  sd.colors = d;
  sd.color.assign(sg.star.m(), -1);
  sd.orientation.head.assign(sg.star.m(), -1);
  for (int f = 0; f < sg.star.m(); ++f) {
    auto [a, b] = sg.star.edges[f];
    int copy_end = sg.kind[a].is_edge ? b : a;
    int edge_end = sg.kind[a].is_edge ? a : b;
    sd.color[f] = col.color[f] / 2;
    sd.orientation.head[f] = (col.color[f] % 2 == 0) ? copy_end : edge_end;
  }
  return sd;
}

SchreierDecoration star_matching_to_schreier(const StarGraph& sg, const Matching& m,
                                             std::uint64_t seed) {
  int d = star_half_degree(sg.base);
  Orientation base_o = matching_to_orientation(sg, m);  // validates perfectness

  // The star splits into one K_{d,d} block per (base vertex, role): the in-edges
  // of v against v's copies, and likewise the out-edges. Blocks of equal role are
  // vertex-disjoint, so coloring each with a random Latin pattern and orienting
  // in-blocks edge->copy, out-blocks copy->edge is Schreier-valid.
  SchreierDecoration sd;
  sd.colors = d;
  sd.color.assign(sg.star.m(), -1);
  sd.orientation.head.assign(sg.star.m(), -1);
  for (int v = 0; v < sg.base.n; ++v) {
    for (int role = 0; role < 2; ++role) {  // 0: in-edges of v, 1: out-edges
      std::vector<int> block_edges;
      for (auto [u, e] : sg.base.adj[v]) {
        (void)u;
        if ((base_o.head[e] == v) == (role == 0)) block_edges.push_back(e);
      }
      std::sort(block_edges.begin(), block_edges.end());
      std::mt19937_64 rng(mix64(hash_combine(hash_combine(seed, static_cast<std::uint64_t>(v)),
                                             static_cast<std::uint64_t>(role))));
      std::vector<int> sigma(d), tau(d);
      std::iota(sigma.begin(), sigma.end(), 0);
      std::iota(tau.begin(), tau.end(), 0);
      std::shuffle(sigma.begin(), sigma.end(), rng);
      std::shuffle(tau.begin(), tau.end(), rng);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          int f = star_edge_between(sg, sg.edge_vertex[block_edges[i]], sg.copy_vertex(v, j));
          sd.color[f] = tau[(sigma[i] + j) % d];
          sd.orientation.head[f] =
              role == 0 ? sg.copy_vertex(v, j) : sg.edge_vertex[block_edges[i]];
        }
      }
    }
  }
  return sd;
}

StarDecorations star_conversions(const StarGraph& sg, const EdgeColoring& in) {
  StarDecorations out;
  out.coloring = in;
  out.schreier = star_coloring_to_schreier(sg, in);
  out.matching = star_coloring_to_matching(sg, in, 0);
  return out;
}

StarDecorations star_conversions(const StarGraph& sg, const Matching& in, std::uint64_t seed) {
  StarDecorations out;
  out.matching = in;
  out.schreier = star_matching_to_schreier(sg, in, seed);
  out.coloring = star_schreier_to_coloring(sg, out.schreier);
  return out;
}

StarDecorations star_conversions(const StarGraph& sg, const SchreierDecoration& in) {
  StarDecorations out;
  out.schreier = in;
  out.coloring = star_schreier_to_coloring(sg, in);
  out.matching = star_schreier_to_matching(sg, in, 0);
  return out;
}

}  // namespace balor
