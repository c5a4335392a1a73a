#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "balor/decorations.hpp"
#include "balor/graph.hpp"
#include "balor/lazy_graph.hpp"

namespace balor {

// Deterministic iid-uniform labels: label(encoding, channel) is a 53-bit uniform
// in [0,1) keyed by (seed, encoding, channel), so any vertex's label is available
// in O(1) without storing a global assignment. split(tag) derives an independent
// labeling (fresh labels per Monte Carlo sample).
struct Labeling {
  std::uint64_t seed = 0;
  double label(const std::string& encoding, std::uint64_t channel = 0) const;
  Labeling split(std::uint64_t tag) const;
};

// What a local rule gets to see: a rooted ball plus a label oracle. Rules must
// only depend on structure and labels within their declared radius; the harness
// hands them a slightly larger ball precisely so that violations are detectable.
struct FactorInput {
  const Ball* ball = nullptr;
  std::function<double(int vertex, std::uint64_t channel)> label;
};

// A block factor of radius R: per-vertex output computed from the labeled ball
// B(v, R). Output convention: either one value per incident root edge (in
// adjacency order; e.g. +1 = outgoing, -1 = incoming, or a color index) or an
// arbitrary fixed-length vector (e.g. a single real observable).
struct BlockFactor {
  int radius = 0;
  std::function<std::vector<double>(const FactorInput&)> rule;
};

struct LocalityReport {
  int trials = 0;
  int failures = 0;
  bool pass = false;
  std::string first_failure;  // human-readable description of the first mismatch
};

// Re-randomization test: evaluate on a ball of radius R+1, redraw every label
// strictly outside B(root, R), re-evaluate; outputs must match in every trial.
LocalityReport locality_test(const BlockFactor& bf, const LazyGraph& lg,
                             const std::string& root, int trials, std::uint64_t seed);

struct EquivarianceReport {
  int trials = 0;
  int failures = 0;
  bool pass = false;
  std::string first_failure;
};

// sigma must be an automorphism of g (checked; InvalidAutomorphism otherwise).
// For each trial the factor is evaluated at every vertex under labels w and under
// the sigma-translated labels w', w'(v) = w(sigma^{-1} v); outputs must commute
// with sigma, with per-edge components remapped through sigma's edge action.
EquivarianceReport equivariance_test(const BlockFactor& bf, const Graph& g,
                                     const std::vector<int>& sigma, int trials,
                                     std::uint64_t seed);

// Radial samplers for the invariant measures on tree balls: orient (resp.
// Schreier-decorate) the root's edges uniformly over valid local states, then
// extend outward vertex by vertex, uniformly over valid completions. Output is
// balanced (resp. Schreier-valid) at every interior vertex. NotTreeBall if the
// ball is not a tree with consistent even interior degrees.
Orientation sample_mu_bo(const Ball& ball, std::uint64_t seed);
SchreierDecoration sample_mu_sch(const Ball& ball, std::uint64_t seed);

struct DecayReport {
  std::vector<int> ks;                   // 1..k_max
  std::vector<double> estimates;         // <M^k f, f> estimates
  std::vector<double> std_errors;        // per-k standard error (over walks)
  std::vector<double> kth_roots;         // |estimate|^(1/k), NaN when under noise
  double mean = 0.0;                     // global empirical mean subtracted from f
  std::vector<double> orbit_means;       // per-orbit means (diagnostic only)
  double fitted_rate = 0.0;              // log-linear fit of |estimate| over usable k
  double reference_rate = 0.0;           // caller-supplied comparison value (NaN = none)
  long long samples = 0;                 // independent walks
  long long center_samples = 0;
};

// Monte Carlo estimate of <M^k f, f> in the degree-biased inner product. Each
// sample is one stationary walk of length 2*k_max started at a ptilde-sampled
// orbit representative with fresh labels; every position pair at lag k
// contributes an f(w_i) * f(w_{i+k}) product, averaged per walk, so one walk
// yields >= k_max + 1 products for every k. f is centered by its global
// empirical mean (estimated separately on ptilde-sampled roots) before use.
DecayReport correlation_decay(const LazyGraph& lg, const BlockFactor& bf, int k_max,
                              long long samples, std::uint64_t seed,
                              long long center_samples = 100000,
                              double reference_rate = std::numeric_limits<double>::quiet_NaN());

// Ready-made observables for the decay harness.
BlockFactor factor_root_label();          // centered label at the root (radius 0)
BlockFactor factor_neighbor_threshold();  // count of neighbor labels > 1/2 (radius 1)
// Balanced orientation of the root's edges via local matching rounds on the star
// of the ball; the workhorse behind the orientation pipeline. radius = 3 * k_max.
BlockFactor factor_local_orientation(int k_max);

}  // namespace balor
