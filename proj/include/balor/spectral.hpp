#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "balor/graph.hpp"
#include "balor/lazy_graph.hpp"
#include "balor/numerics.hpp"

namespace balor {

// Base vertex weights for isoperimetric quantities; value() gives the measure of a
// vertex under the chosen normalization (plain nu vs degree-biased nu_st).
struct VertexWeights {
  std::vector<double> w;      // positive; empty means uniform
  bool degree_biased = true;  // w_st(v) proportional to deg(v)*w(v)
  double base(int v) const { return w.empty() ? 1.0 : w[v]; }
};

struct SpectralEstimate {
  enum Method { kPowerIteration, kReturnProbability, kExactSmall };
  double rho = 0.0;
  Method method = kPowerIteration;
  long long iterations = 0;
  double residual = 0.0;
};

// The averaging operator (Mf)(v) = (1/w(v)) sum_{u~v} f(u), self-adjoint in
// <f,g> = sum_v w(v) f(v) g(v) for any positive w. Default w = deg makes it the
// usual Markov operator (isolated vertices keep f). Supplying the infinite-graph
// degrees as w on a ball gives the Dirichlet compression of the infinite operator,
// whose top eigenvalue approaches the tree spectral radius from below.
std::vector<double> markov_apply(const Graph& g, const std::vector<double>& f,
                                 const std::vector<double>& weights = {});

struct SpectralOptions {
  std::vector<double> weights;  // effective degrees; empty = degrees of g
  bool force_power = false;     // skip the exact-small fallback (dual-route testing hook)
  long long max_iters = 100000;
  std::uint64_t seed = 0x5eedULL;
};

// Largest |eigenvalue| of M restricted to the complement of the constant vector
// (and of the bipartite sign vector when the flag is set). Power iteration on M^2
// with repeated reprojection; n <= 12 inputs are cross-checked against a dense
// eigensolve of the projected operator and fall back to it if iteration stalls.
SpectralEstimate spectral_radius_meanzero(const Graph& g, bool exclude_bipartite_sign = false,
                                          const SpectralOptions& opts = {});

struct ReturnProbabilityReport {
  std::vector<double> p_hat;  // p_hat[n] for n = 0..n_max (odd n stay 0 on bipartite graphs)
  SpectralEstimate estimate;  // max over even n of p_hat[n]^(1/n); a lower-bound estimator
};

ReturnProbabilityReport return_probability_rho(const LazyGraph& lg, const std::string& root,
                                               int n_max, long long samples, std::uint64_t seed);

struct CheegerResult {
  double value = 0.0;
  std::vector<int> best_set;
  bool exact = false;  // exhaustive (n <= 14) vs eigenvector sweep upper bound
};

// Degree-biased isoperimetric constant: min over 0 < vol(S) <= vol(G)/2 of
// (boundary edge count) / (weighted volume of S).
CheegerResult cheeger_constant(const Graph& g, const VertexWeights& weights = {});

enum class ExpansionMode { kMeanzero, kBipartite };

struct ExpansionReport {
  double rho = 0.0;
  double worst_slack = 0.0;  // min over checked subsets of b' - b/(rho^2(1-b)+b)
  long long subsets_checked = 0;
  bool pass = false;  // worst_slack >= -1e-9
  std::vector<int> worst_set;
};

// Exhaustive verification of the neighborhood-expansion lower bound
// b' >= b/(rho^2(1-b)+b) over every nonempty subset (within one side in
// bipartite mode). n <= 14 only (TooLarge).
ExpansionReport verify_expansion_lemma(const Graph& g, ExpansionMode mode);

struct AuxExpansionReport {
  double phi_st = 0.0;
  double avg_deg = 0.0;
  double epsilon = 0.0;  // min{3/20, phi_st/(4*avg_deg)}
  bool expander = false;  // phi_st > 0
  double worst_slack = 0.0;
  long long subsets_checked = 0;
  bool exhaustive = false;  // all subsets of both star sides (m <= 20), else sampled
  bool pass = false;
};

// Expansion of the star graph under the uniform star measure (each star vertex
// has weight 1/(2m)): checks nu*(N(A)) >= min{(1+eps)nu*(A), 1/4+eps} for subsets
// A of each side. Even degrees required (OddDegree).
AuxExpansionReport aux_expansion_epsilon(const Graph& g);

}  // namespace balor
