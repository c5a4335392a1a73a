#include "balor/quotient.hpp"

#include <cmath>
#include <queue>

namespace balor {

OrbitStructure orbit_structure(const LazyGraph& lg) {
  OrbitStructure os;
  os.t = lg.orbit_count;
  os.reps = lg.orbit_reps;
  if (os.t <= 0 || static_cast<int>(os.reps.size()) != os.t)
    throw Error(Errc::InvalidInput, "lazy graph lacks orbit representatives");
  os.deg.resize(os.t);
  os.counts.assign(os.t, std::vector<long long>(os.t, 0));
  for (int i = 0; i < os.t; ++i) {
    if (lg.orbit(os.reps[i]) != i)
      throw Error(Errc::InvalidInput, "representative " + os.reps[i] + " not in its own orbit");
    auto nb = lg.neighbors(os.reps[i]);
    os.deg[i] = static_cast<int>(nb.size());
    for (const auto& u : nb) {
      int j = lg.orbit(u);
      if (j < 0 || j >= os.t) throw Error(Errc::InvalidInput, "orbit id out of range");
      os.counts[i][j]++;
    }
  }

  // counts must be mutually supported: an i->j edge is a j->i edge from the other side
  for (int i = 0; i < os.t; ++i)
    for (int j = 0; j < os.t; ++j)
      if ((os.counts[i][j] > 0) != (os.counts[j][i] > 0))
        throw Error(Errc::InconsistentCounts, "one-sided edge counts between orbits " +
                                                  std::to_string(i) + " and " + std::to_string(j));

  // propagate p along a spanning tree of the orbit graph, then verify all equations
  std::vector<Rational> r(os.t);
  std::vector<char> seen(os.t, 0);
  r[0] = Rational(1);
  seen[0] = 1;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int i = q.front();
    q.pop();
    for (int j = 0; j < os.t; ++j) {
      if (seen[j] || os.counts[i][j] == 0) continue;
      r[j] = r[i] * Rational(os.counts[i][j], os.counts[j][i]);
      seen[j] = 1;
      q.push(j);
    }
  }
  for (int i = 0; i < os.t; ++i)
    if (!seen[i]) throw Error(Errc::InconsistentCounts, "orbit graph is disconnected");
  for (int i = 0; i < os.t; ++i)
    for (int j = 0; j < os.t; ++j)
      if (os.counts[i][j] > 0 && !(r[i] * Rational(os.counts[i][j]) == r[j] * Rational(os.counts[j][i])))
        throw Error(Errc::InconsistentCounts, "no reversible weight exists (non-unimodular counts)");

  Rational sum(0);
  for (const auto& x : r) sum = sum + x;
  os.p_exact.resize(os.t);
  os.ptilde_exact.resize(os.t);
  Rational delta(0);
  for (int i = 0; i < os.t; ++i) {
    os.p_exact[i] = r[i] / sum;
    delta = delta + os.p_exact[i] * Rational(os.deg[i]);
  }
  for (int i = 0; i < os.t; ++i)
    os.ptilde_exact[i] = os.p_exact[i] * Rational(os.deg[i]) / delta;
  os.p.resize(os.t);
  os.ptilde.resize(os.t);
  for (int i = 0; i < os.t; ++i) {
    os.p[i] = os.p_exact[i].value();
    os.ptilde[i] = os.ptilde_exact[i].value();
  }
  os.Delta = delta.value();
  return os;
}

Matrix transition_matrix(const OrbitStructure& os) {
  Matrix P(os.t, std::vector<double>(os.t, 0.0));
  for (int i = 0; i < os.t; ++i)
    for (int j = 0; j < os.t; ++j)
      P[i][j] = static_cast<double>(os.counts[i][j]) / static_cast<double>(os.deg[i]);
  return P;
}

MTSpectrum mt_spectrum(const Matrix& P, const std::vector<double>& ptilde) {
  const int t = static_cast<int>(P.size());
  if (static_cast<int>(ptilde.size()) != t) throw Error(Errc::InvalidInput, "ptilde size mismatch");
  for (double w : ptilde)
    if (!(w > 0.0)) throw Error(Errc::InvalidInput, "ptilde entries must be positive");
  Matrix S(t, std::vector<double>(t, 0.0));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      S[i][j] = std::sqrt(ptilde[i] / ptilde[j]) * P[i][j];
  // enforce exact symmetry against roundoff before handing to Jacobi
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j) {
      double avg = 0.5 * (S[i][j] + S[j][i]);
      S[i][j] = S[j][i] = avg;
    }
  EigenResult eig = jacobi_eigen(S);

  MTSpectrum out;
  out.lambdas = eig.values;
  constexpr double kBipTol = 1e-9;
  out.is_bipartite = t >= 2 && std::fabs(eig.values.back() + 1.0) < kBipTol;
  out.rho_T = 0.0;
  for (int i = 1; i < t; ++i)
    if (eig.values[i] > -1.0 + kBipTol)
      out.rho_T = std::max(out.rho_T, std::fabs(eig.values[i]));
  if (out.is_bipartite) {
    out.parts.resize(t);
    const auto& vec = eig.vectors.back();
    for (int i = 0; i < t; ++i) out.parts[i] = vec[i] >= 0.0 ? 1 : 2;
  }
  return out;
}

ConvergenceReport convergence_check(const Matrix& P, const std::vector<double>& ptilde,
                                    const std::vector<double>& v, int k_max) {
  const int t = static_cast<int>(P.size());
  if (static_cast<int>(v.size()) != t) throw Error(Errc::InvalidInput, "test vector size mismatch");
  MTSpectrum sp = mt_spectrum(P, ptilde);
  if (sp.is_bipartite)
    throw Error(Errc::BipartiteChain, "chain is bipartite (lambda_t = -1); powers do not converge");

  ConvergenceReport rep;
  rep.limit = 0.0;
  for (int j = 0; j < t; ++j) rep.limit += ptilde[j] * v[j];
  rep.deviations.assign(t, std::vector<double>(k_max + 1, 0.0));

  // rows of P^k, advanced one multiplication at a time
  Matrix pk(t, std::vector<double>(t, 0.0));
  for (int i = 0; i < t; ++i) pk[i][i] = 1.0;
  std::vector<double> envelope(k_max + 1, 0.0);
  for (int k = 0; k <= k_max; ++k) {
    for (int i = 0; i < t; ++i) {
      double dot = 0.0;
      for (int j = 0; j < t; ++j) dot += pk[i][j] * v[j];
      rep.deviations[i][k] = std::fabs(dot - rep.limit);
      envelope[k] = std::max(envelope[k], rep.deviations[i][k]);
    }
    if (k == k_max) break;
    Matrix next(t, std::vector<double>(t, 0.0));
    for (int i = 0; i < t; ++i)
      for (int l = 0; l < t; ++l) {
        if (pk[i][l] == 0.0) continue;
        for (int j = 0; j < t; ++j) next[i][j] += pk[i][l] * P[l][j];
      }
    pk = std::move(next);
  }

  // least-squares fit of log(envelope) vs k, skipping noise-floor points
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int k = 1; k <= k_max; ++k) {
    if (envelope[k] < 1e-14) continue;
    double x = k, y = std::log(envelope[k]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) {
    double denom = cnt * sxx - sx * sx;
    if (denom > 0) rep.fitted_rate = std::exp((cnt * sxy - sx * sy) / denom);
  }
  return rep;
}

}  // namespace balor
