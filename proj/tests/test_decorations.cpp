#include <algorithm>
#include <set>

#include "doctest.h"

#include "balor/decorations.hpp"
#include "balor/fiid.hpp"
#include "balor/graph.hpp"
#include "balor/lazy_graph.hpp"
#include "balor/matching.hpp"

using namespace balor;

namespace {

Graph bowtie() {
  // two triangles sharing vertex 2; degrees 2,2,4,2,2
  return Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
}

Graph two_triangles() {
  return Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
}

}  // namespace

TEST_CASE("euler orientation balances every even-degree graph") {
  for (const Graph& g : {make_cycle(6), make_complete(5), bowtie(), two_triangles(),
                         make_circulant(8, {1, 2})}) {
    Orientation o = euler_orient(g);
    CHECK(verify_balanced(g, o).empty());
  }
  CHECK_THROWS_AS(euler_orient(make_path(3)), Error);
}

TEST_CASE("verify_balanced reports the offending vertices") {
  Graph c4 = make_cycle(4);
  Orientation bad;
  bad.head = {1, 2, 3, 0};  // rotation: balanced
  CHECK(verify_balanced(c4, bad).empty());
  bad.head = {1, 1, 2, 3};  // vertex 1 has indegree 2
  auto viol = verify_balanced(c4, bad);
  CHECK(!viol.empty());
  bool saw1 = false;
  for (const auto& v : viol) saw1 |= v.v == 1;
  CHECK(saw1);
  Orientation wrong_size;
  wrong_size.head = {0};
  CHECK_THROWS_AS(verify_balanced(c4, wrong_size), Error);
}

TEST_CASE("konig coloring uses max-degree colors on bipartite graphs") {
  for (const Graph& g : {make_complete_bipartite(3, 3), make_cycle(6), make_path(4),
                         Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}})}) {
    EdgeColoring c = konig_edge_coloring(g);
    int delta = 0;
    for (int v = 0; v < g.n; ++v) delta = std::max(delta, g.degree(v));
    CHECK(c.colors == delta);
    CHECK(is_proper_edge_coloring(g, c));
    for (int e = 0; e < g.m(); ++e) {
      CHECK(c.color[e] >= 0);
      CHECK(c.color[e] < c.colors);
    }
  }
  CHECK_THROWS_AS(konig_edge_coloring(make_cycle(5)), Error);
}

TEST_CASE("schreier decoration: one in and one out edge per color per vertex") {
  for (const Graph& g : {make_complete(5), make_cycle(6), make_circulant(8, {1, 2}),
                         make_circulant(7, {1, 2, 3})}) {
    SchreierDecoration sd = schreier_decorate_finite(g);
    CHECK(sd.colors == g.degree(0) / 2);
    CHECK(verify_schreier(g, sd).empty());
    CHECK(verify_balanced(g, forget_colors(sd)).empty());
  }
  CHECK_THROWS_AS(schreier_decorate_finite(make_complete(4)), Error);  // odd regular
  CHECK_THROWS_AS(schreier_decorate_finite(bowtie()), Error);          // not regular
}

TEST_CASE("verify_schreier catches broken decorations") {
  Graph g = make_complete(5);
  SchreierDecoration sd = schreier_decorate_finite(g);
  SchreierDecoration broken = sd;
  broken.color[0] = 1 - broken.color[0];
  CHECK(!verify_schreier(g, broken).empty());
  SchreierDecoration flipped = sd;
  flipped.orientation.head[3] = g.other(3, flipped.orientation.head[3]);
  CHECK(!verify_schreier(g, flipped).empty());
}

TEST_CASE("forget_order merges exactly the last two color classes") {
  Graph g = make_circulant(7, {1, 2, 3});  // 6-regular, d = 3
  SchreierDecoration sd = schreier_decorate_finite(g);
  UnorderedClassDecoration ud = forget_order(sd);
  CHECK(ud.ordered_colors == 1);
  for (int e = 0; e < g.m(); ++e) {
    if (sd.color[e] <= 0)
      CHECK(ud.color[e] == sd.color[e]);
    else
      CHECK(ud.color[e] == 1);  // merged class label = ordered_colors
  }
  // d = 1 has no two classes to merge
  SchreierDecoration tiny = schreier_decorate_finite(make_cycle(6));
  CHECK_THROWS_AS(forget_order(tiny), Error);
}

TEST_CASE("pair_unordered_colors completes a merged decoration") {
  Graph g = make_circulant(5, {1, 2});  // K_5, d = 2: merged class is everything
  SchreierDecoration sd = schreier_decorate_finite(g);
  UnorderedClassDecoration ud = forget_order(sd);
  SchreierDecoration re = pair_unordered_colors(g, ud, 17);
  CHECK(verify_schreier(g, re).empty());
  for (int e = 0; e < g.m(); ++e) CHECK(re.orientation.head[e] == ud.orientation.head[e]);
  // different seeds explore different completions but stay valid
  SchreierDecoration re2 = pair_unordered_colors(g, ud, 18);
  CHECK(verify_schreier(g, re2).empty());

  UnorderedClassDecoration junk = ud;
  junk.color.assign(g.m(), 0);  // merged class empty: degenerate in/out counts
  junk.ordered_colors = 1;
  CHECK_THROWS_AS(pair_unordered_colors(g, junk, 1), Error);
}

TEST_CASE("in/out groups: at most two per vertex, exactly two inside tree balls") {
  for (const Graph& g : {make_complete(5), make_circulant(8, {1, 2}), make_cycle(6)}) {
    Orientation o = euler_orient(g);
    InOutDecomposition dec = in_out_subtree_decomposition(g, o);
    // cycles may merge a vertex's in-star and out-star through remote vertices
    for (int v = 0; v < g.n; ++v) {
      CHECK(dec.components_at_vertex[v] >= 1);
      CHECK(dec.components_at_vertex[v] <= 2);
    }
    for (int e = 0; e < g.m(); ++e) {
      CHECK(dec.component[e] >= 0);
      CHECK(dec.component[e] < dec.component_count);
    }
  }
  // rotation of C_6: one in and one out edge per vertex, so six singleton groups
  InOutDecomposition rot =
      in_out_subtree_decomposition(make_cycle(6), euler_orient(make_cycle(6)));
  CHECK(rot.component_count == 6);
  for (int v = 0; v < 6; ++v) CHECK(rot.components_at_vertex[v] == 2);

  // no cycles to merge through on a tree ball: interior vertices meet exactly
  // their in-subtree and their out-subtree
  Ball ball = extract_ball(make_regular_tree(4), 3);
  Orientation o = sample_mu_bo(ball, 9);
  InOutDecomposition dec = in_out_subtree_decomposition(ball.graph, o);
  for (int v = 0; v < ball.graph.n; ++v)
    if (ball.depth[v] < 3) CHECK(dec.components_at_vertex[v] == 2);
}

TEST_CASE("alternating propagation agrees with a real coloring and spots conflicts") {
  Graph g = make_complete(5);
  SchreierDecoration sd = schreier_decorate_finite(g);
  PropagationResult pr =
      alternating_constraint_propagation(g, sd.orientation, 0, sd.color[0]);
  CHECK(!pr.contradiction);
  CHECK(pr.forced[0] == sd.color[0]);
  int forced_edges = 0;
  for (int e = 0; e < g.m(); ++e)
    if (pr.forced[e] >= 0) {
      CHECK(pr.forced[e] == sd.color[e]);
      ++forced_edges;
    }
  CHECK(forced_edges >= 2);  // the seed forces at least its partners
  // seeding the opposite color at the same edge forces the complement
  PropagationResult flip =
      alternating_constraint_propagation(g, sd.orientation, 0, 1 - sd.color[0]);
  if (!flip.contradiction)
    for (int e = 0; e < g.m(); ++e)
      if (flip.forced[e] >= 0 && pr.forced[e] >= 0) CHECK(flip.forced[e] == 1 - pr.forced[e]);
  CHECK_THROWS_AS(alternating_constraint_propagation(make_cycle(6), euler_orient(make_cycle(6)), 0, 0),
                  Error);  // only 4-regular inputs
}

TEST_CASE("lift_schreier recolors regular bipartite graphs") {
  // 4-regular bipartite (d = 1): two colors after the lift
  Graph k44 = make_complete_bipartite(4, 4);
  SchreierDecoration a = lift_schreier(k44, 5);
  CHECK(a.colors == 2);
  CHECK(verify_schreier(k44, a).empty());
  // 6-regular bipartite (d = 2): three colors
  Graph c12 = make_circulant(12, {1, 3, 5});
  SchreierDecoration b = lift_schreier(c12, 6);
  CHECK(b.colors == 3);
  CHECK(verify_schreier(c12, b).empty());
  // seeds vary the decoration but never its validity
  SchreierDecoration b2 = lift_schreier(c12, 7);
  CHECK(verify_schreier(c12, b2).empty());

  CHECK_THROWS_AS(lift_schreier(make_complete(5), 1), Error);   // odd cycles
  CHECK_THROWS_AS(lift_schreier(make_cycle(6), 1), Error);      // degree < 4
  CHECK_THROWS_AS(lift_schreier(make_path(4), 1), Error);       // irregular
}
