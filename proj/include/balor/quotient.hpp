#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "balor/lazy_graph.hpp"
#include "balor/numerics.hpp"

namespace balor {

// Exact arithmetic for the reversibility equations (tiny orbit counts, no overflow risk).
struct Rational {
  long long num = 0, den = 1;
  Rational() = default;
  Rational(long long n, long long d = 1) : num(n), den(d) { reduce(); }
  void reduce() {
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }
  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
  Rational operator/(const Rational& o) const { return Rational(num * o.den, den * o.num); }
  Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Orbit quotient of a quasi-transitive graph: per-orbit degrees, transition counts,
// and the reversible root weights p (unique up to scale) with their degree-biased
// version ptilde. Exact rationals kept alongside the doubles.
struct OrbitStructure {
  int t = 0;
  std::vector<std::string> reps;
  std::vector<int> deg;
  std::vector<std::vector<long long>> counts;  // counts[i][j]: edges from rep of orbit i into orbit j
  std::vector<Rational> p_exact, ptilde_exact;
  std::vector<double> p, ptilde;
  double Delta = 0.0;  // expected degree under p
};

// Enumerates each representative's neighbors, classifies them by orbit, and solves
// p(o_i)·counts[i][j] = p(o_j)·counts[j][i] exactly. InconsistentCounts when no
// reversible solution exists (non-unimodular input) or the orbit graph is disconnected.
OrbitStructure orbit_structure(const LazyGraph& lg);

// rows sum to 1; ptilde is a left fixed vector satisfying detailed balance
Matrix transition_matrix(const OrbitStructure& os);

struct MTSpectrum {
  std::vector<double> lambdas;  // descending, lambda_1 = 1
  double rho_T = 0.0;           // max over {0} and |lambda_i|, i > 1, excluding lambda = -1
  bool is_bipartite = false;    // lambda_t = -1 within tolerance
  std::vector<int> parts;       // orbit -> {1,2} when bipartite, else empty
};

// Eigenvalues of D^{1/2} P D^{-1/2} (D = diag(ptilde)) via the Jacobi solver.
MTSpectrum mt_spectrum(const Matrix& P, const std::vector<double>& ptilde);

struct ConvergenceReport {
  // deviations[i][k] = |<P^k e_i, v> - <ptilde, v>| for k = 0..k_max
  std::vector<std::vector<double>> deviations;
  double limit = 0.0;        // <ptilde, v>
  double fitted_rate = 0.0;  // geometric rate of the worst-orbit deviation envelope
};

// Powers of the chain applied to basis vectors; BipartiteChain when lambda_t = -1.
ConvergenceReport convergence_check(const Matrix& P, const std::vector<double>& ptilde,
                                    const std::vector<double>& v, int k_max);

}  // namespace balor
