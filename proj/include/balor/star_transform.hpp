#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "balor/decorations.hpp"
#include "balor/graph.hpp"
#include "balor/matching.hpp"

namespace balor {

// Star transform of an even-degree graph: one star vertex x_e per base edge and
// deg(v)/2 copies v_1..v_{deg/2} per base vertex; x_uv is adjacent to every copy
// of u and of v. Perfect matchings of the star correspond to balanced
// orientations of the base (x_e matched to a copy of its head), with exactly
// prod_v (deg(v)/2)! matchings per orientation.
struct StarKind {
  bool is_edge = false;
  int e = -1;       // base edge when is_edge
  int v = -1, i = -1;  // base vertex and copy index otherwise
};

struct StarGraph {
  Graph base;
  Graph star;
  std::vector<StarKind> kind;       // per star vertex
  std::vector<int> edge_vertex;     // base edge -> star vertex id
  std::vector<int> copy_offset;     // base vertex -> first copy's star vertex id
  int copy_vertex(int v, int i) const { return copy_offset[v] + i; }
};

// Deterministic numbering: edge-type vertices first (by edge index), then copies
// in (v, i) lexicographic order. OddDegree if any base degree is odd.
StarGraph build_star(const Graph& g);

// Perfect star matching -> balanced base orientation (NotPerfect otherwise).
Orientation matching_to_orientation(const StarGraph& sg, const Matching& m);

enum class AssignmentRule { kCanonical, kSeededRandom };

// Balanced orientation -> perfect star matching. Canonical rule: incoming edges of v
// in edge-index order match v_1, v_2, ...; the seeded rule shuffles that order per
// vertex. NotBalanced otherwise.
Matching orientation_to_matching(const StarGraph& sg, const Orientation& o,
                                 AssignmentRule rule = AssignmentRule::kCanonical,
                                 std::uint64_t seed = 0);

struct CorrespondenceCount {
  long long balanced_orientations = 0;
  long long perfect_matchings = 0;  // of the star
  long long per_orientation_factor = 1;  // prod_v (deg(v)/2)!
  bool identity_holds = false;      // perfect_matchings == balanced * factor
};

// Brute-force check of the counting identity; m <= 12 (TooLarge).
CorrespondenceCount count_correspondence(const Graph& g);

// Exhaustive balanced-orientation count/enumeration by branch-and-prune on edges.
long long count_balanced_orientations(const Graph& g, int edge_cap = 24);
std::vector<Orientation> enumerate_balanced_orientations(const Graph& g, int edge_cap = 24);

// Conversions between the three equivalent decorations of a 2d-regular base's star:
// proper 2d-edge-colorings of G*, perfect matchings of G*, Schreier decorations of G*.
// Each function implements one proof rule; see the .cpp for the exact direction maps.
Matching star_coloring_to_matching(const StarGraph& sg, const EdgeColoring& col, int color_class = 0);
Matching star_schreier_to_matching(const StarGraph& sg, const SchreierDecoration& sd, int color = 0);
EdgeColoring star_schreier_to_coloring(const StarGraph& sg, const SchreierDecoration& sd);
SchreierDecoration star_coloring_to_schreier(const StarGraph& sg, const EdgeColoring& col);
SchreierDecoration star_matching_to_schreier(const StarGraph& sg, const Matching& m, std::uint64_t seed);

struct StarDecorations {
  EdgeColoring coloring;
  Matching matching;
  SchreierDecoration schreier;
};

// One-stop conversion from any of the three inputs to all three, validating the
// input first (InvalidInput names the violated invariant).
StarDecorations star_conversions(const StarGraph& sg, const EdgeColoring& in);
StarDecorations star_conversions(const StarGraph& sg, const Matching& in, std::uint64_t seed);
StarDecorations star_conversions(const StarGraph& sg, const SchreierDecoration& in);

}  // namespace balor
