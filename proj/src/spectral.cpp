#include "balor/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "balor/star_transform.hpp"

namespace balor {

namespace {

double dot_w(const std::vector<double>& a, const std::vector<double>& b,
             const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

double norm_w(const std::vector<double>& a, const std::vector<double>& w) {
  return std::sqrt(std::max(0.0, dot_w(a, a, w)));
}

// subtract the span of a w-orthonormal basis
void project_off(std::vector<double>& f, const std::vector<std::vector<double>>& basis,
                 const std::vector<double>& w) {
  for (const auto& b : basis) {
    double c = dot_w(f, b, w);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= c * b[i];
  }
}

// Exact spectral radius of M on the complement of the excluded span: eigensolve of
// P S P where S = D^{1/2} M D^{-1/2} (symmetric) and P projects off the excluded
// directions in the standard inner product.
double dense_projected_rho(const Graph& g, const std::vector<double>& wvec,
                           const std::vector<double>& mweights,
                           const std::vector<std::vector<double>>& basis) {
  int n = g.n;
  Matrix s(n, std::vector<double>(n, 0.0));
  for (int v = 0; v < n; ++v) {
    if (mweights.empty() && g.degree(v) == 0) {
      s[v][v] = 1.0;  // lazy at isolated vertices, matching markov_apply
      continue;
    }
    double wv = mweights.empty() ? static_cast<double>(g.degree(v)) : mweights[v];
    for (auto [u, e] : g.adj[v]) {
      (void)e;
      double wu = mweights.empty() ? static_cast<double>(g.degree(u)) : mweights[u];
      s[v][u] += 1.0 / std::sqrt(wv * wu);
    }
  }
  // q_k = D^{1/2} b_k are standard-orthonormal because the b_k are w-orthonormal
  std::vector<std::vector<double>> q;
  for (const auto& b : basis) {
    std::vector<double> qk(n);
    for (int v = 0; v < n; ++v) qk[v] = std::sqrt(wvec[v]) * b[v];
    q.push_back(std::move(qk));
  }
  auto apply_p = [&](Matrix& a, bool rows) {
    for (const auto& qk : q) {
      for (int i = 0; i < n; ++i) {
        double c = 0.0;
        for (int j = 0; j < n; ++j) c += qk[j] * (rows ? a[j][i] : a[i][j]);
        for (int j = 0; j < n; ++j) (rows ? a[j][i] : a[i][j]) -= c * qk[j];
      }
    }
  };
  apply_p(s, false);
  apply_p(s, true);
  // enforce exact symmetry before the Jacobi sweep
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double avg = 0.5 * (s[i][j] + s[j][i]);
      s[i][j] = s[j][i] = avg;
    }
  auto eig = jacobi_eigen(s);
  double rho = 0.0;
  for (double lam : eig.values) rho = std::max(rho, std::abs(lam));
  return rho;
}

}  // namespace

std::vector<double> markov_apply(const Graph& g, const std::vector<double>& f,
                                 const std::vector<double>& weights) {
  if (static_cast<int>(f.size()) != g.n)
    throw Error(Errc::InvalidInput, "markov_apply: function size != vertex count");
  if (!weights.empty() && static_cast<int>(weights.size()) != g.n)
    throw Error(Errc::InvalidInput, "markov_apply: weight size != vertex count");
  std::vector<double> out(g.n, 0.0);
  for (int v = 0; v < g.n; ++v) {
    if (weights.empty() && g.degree(v) == 0) {
      out[v] = f[v];
      continue;
    }
    double w = weights.empty() ? static_cast<double>(g.degree(v)) : weights[v];
    if (!(w > 0.0)) throw Error(Errc::InvalidInput, "markov_apply: weights must be positive");
    double s = 0.0;
    for (auto [u, e] : g.adj[v]) {
      (void)e;
      s += f[u];
    }
    out[v] = s / w;
  }
  return out;
}

SpectralEstimate spectral_radius_meanzero(const Graph& g, bool exclude_bipartite_sign,
                                          const SpectralOptions& opts) {
  if (g.n <= 0) throw Error(Errc::InvalidInput, "spectral_radius_meanzero: empty graph");
  const int n = g.n;
  if (!opts.weights.empty() && static_cast<int>(opts.weights.size()) != n)
    throw Error(Errc::InvalidInput, "spectral_radius_meanzero: weight size != vertex count");
  std::vector<double> wvec(n);
  for (int v = 0; v < n; ++v) {
    wvec[v] = opts.weights.empty() ? static_cast<double>(std::max(1, g.degree(v)))
                                   : opts.weights[v];
    if (!(wvec[v] > 0.0))
      throw Error(Errc::InvalidInput, "spectral_radius_meanzero: weights must be positive");
  }

  std::vector<std::vector<double>> basis;
  {
    std::vector<double> ones(n, 1.0);
    double nn = norm_w(ones, wvec);
    for (double& x : ones) x /= nn;
    basis.push_back(std::move(ones));
  }
  if (exclude_bipartite_sign) {
    if (!is_connected(g))
      throw Error(Errc::NotBipartite,
                  "spectral_radius_meanzero: sign vector needs a connected bipartite graph");
    auto bw = bipartition(g);
    if (!bw.side)
      throw Error(Errc::NotBipartite, "spectral_radius_meanzero: graph has an odd cycle");
    std::vector<double> sigma(n);
    for (int v = 0; v < n; ++v) sigma[v] = (*bw.side)[v] == 1 ? 1.0 : -1.0;
    project_off(sigma, basis, wvec);
    double nn = norm_w(sigma, wvec);
    if (nn > 1e-12) {
      for (double& x : sigma) x /= nn;
      basis.push_back(std::move(sigma));
    }
  }

  SpectralEstimate est;
  if (n - static_cast<int>(basis.size()) <= 0) {
    est.rho = 0.0;
    est.method = SpectralEstimate::kExactSmall;
    return est;
  }

  std::mt19937_64 rng(mix64(opts.seed));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> v(n);
  double nv = 0.0;
  for (int tries = 0; tries < 16 && nv < 1e-12; ++tries) {
    for (double& x : v) x = unif(rng);
    project_off(v, basis, wvec);
    nv = norm_w(v, wvec);
  }
  if (nv < 1e-12) {
    est.rho = 0.0;
    est.method = SpectralEstimate::kExactSmall;
    return est;
  }
  for (double& x : v) x /= nv;

  double lam2 = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  long long it = 0;
  double best_residual = residual;
  int no_improve = 0;
  bool stalled = false;
  for (it = 1; it <= opts.max_iters; ++it) {
    auto u = markov_apply(g, markov_apply(g, v, opts.weights), opts.weights);
    project_off(u, basis, wvec);
    lam2 = dot_w(v, u, wvec);
    std::vector<double> r = u;
    for (int i = 0; i < n; ++i) r[i] -= lam2 * v[i];
    residual = norm_w(r, wvec);
    double nu = norm_w(u, wvec);
    if (nu < 1e-300) {  // complement annihilated by M^2: spectral radius 0
      lam2 = 0.0;
      residual = 0.0;
      break;
    }
    for (int i = 0; i < n; ++i) v[i] = u[i] / nu;
    if (residual < 1e-12) break;
    if (residual < 0.999 * best_residual) {
      best_residual = residual;
      no_improve = 0;
    } else if (++no_improve >= 512) {
      stalled = true;
      break;
    }
  }
  est.rho = std::sqrt(std::max(0.0, lam2));
  est.method = SpectralEstimate::kPowerIteration;
  est.iterations = std::min(it, opts.max_iters);
  est.residual = residual;

  if (n <= 12 && !opts.force_power) {
    double exact = dense_projected_rho(g, wvec, opts.weights, basis);
    if (stalled || std::abs(exact - est.rho) > 1e-8) {
      est.rho = exact;
      est.method = SpectralEstimate::kExactSmall;
    }
  }
  return est;
}

ReturnProbabilityReport return_probability_rho(const LazyGraph& lg, const std::string& root,
                                               int n_max, long long samples,
                                               std::uint64_t seed) {
  if (n_max < 1 || samples < 1)
    throw Error(Errc::InvalidInput, "return_probability_rho: n_max and samples must be positive");
  std::vector<long long> hits(n_max + 1, 0);
  std::mt19937_64 rng(mix64(seed));
  for (long long s = 0; s < samples; ++s) {
    std::string pos = root;
    for (int step = 1; step <= n_max; ++step) {
      auto nb = lg.neighbors(pos);
      if (nb.empty()) throw Error(Errc::InvalidInput, "return_probability_rho: dead-end vertex");
      std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
      pos = nb[pick(rng)];
      if (pos == root) ++hits[step];
    }
  }
  ReturnProbabilityReport rep;
  rep.p_hat.assign(n_max + 1, 0.0);
  rep.p_hat[0] = 1.0;
  for (int k = 1; k <= n_max; ++k)
    rep.p_hat[k] = static_cast<double>(hits[k]) / static_cast<double>(samples);
  double rho = 0.0;
  for (int k = 1; k <= n_max; ++k)
    if (rep.p_hat[k] > 0.0) rho = std::max(rho, std::pow(rep.p_hat[k], 1.0 / k));
  rep.estimate.rho = rho;
  rep.estimate.method = SpectralEstimate::kReturnProbability;
  rep.estimate.iterations = samples;
  rep.estimate.residual = 0.0;
  return rep;
}

CheegerResult cheeger_constant(const Graph& g, const VertexWeights& weights) {
  CheegerResult res;
  if (!weights.w.empty() && static_cast<int>(weights.w.size()) != g.n)
    throw Error(Errc::InvalidInput, "cheeger_constant: weight size != vertex count");
  if (g.n < 2 || g.m() == 0) {
    res.exact = true;
    return res;  // no admissible cut
  }
  auto vol_of = [&](int v) {
    double base = weights.base(v);
    return weights.degree_biased ? base * g.degree(v) : base;
  };
  double total = 0.0;
  for (int v = 0; v < g.n; ++v) total += vol_of(v);

  auto eval_set = [&](const std::vector<char>& in) -> std::pair<double, double> {
    double vol = 0.0;
    for (int v = 0; v < g.n; ++v)
      if (in[v]) vol += vol_of(v);
    double cut = 0.0;
    for (const auto& [a, b] : g.edges)
      if (in[a] != in[b]) cut += 1.0;
    return {cut, vol};
  };

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_set;
  if (g.n <= 14) {
    std::vector<char> in(g.n, 0);
    for (unsigned mask = 1; mask + 1 < (1u << g.n); ++mask) {
      for (int v = 0; v < g.n; ++v) in[v] = (mask >> v) & 1u;
      auto [cut, vol] = eval_set(in);
      if (vol <= 0.0 || vol > total / 2.0 + 1e-12) continue;
      double ratio = cut / vol;
      if (ratio < best) {
        best = ratio;
        best_set.clear();
        for (int v = 0; v < g.n; ++v)
          if (in[v]) best_set.push_back(v);
      }
    }
    res.exact = true;
  } else {
    // sweep cut along an approximate second eigenvector of (I + M)/2
    std::vector<double> wdeg(g.n);
    for (int v = 0; v < g.n; ++v) wdeg[v] = std::max(1, g.degree(v));
    std::vector<std::vector<double>> basis;
    std::vector<double> ones(g.n, 1.0);
    double nn = norm_w(ones, wdeg);
    for (double& x : ones) x /= nn;
    basis.push_back(std::move(ones));
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> f(g.n);
    for (double& x : f) x = unif(rng);
    project_off(f, basis, wdeg);
    for (int iter = 0; iter < 300; ++iter) {
      auto mf = markov_apply(g, f);
      for (int v = 0; v < g.n; ++v) f[v] = 0.5 * (f[v] + mf[v]);
      project_off(f, basis, wdeg);
      double nf = norm_w(f, wdeg);
      if (nf < 1e-300) break;
      for (double& x : f) x /= nf;
    }
    std::vector<int> order(g.n);
    for (int v = 0; v < g.n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
    std::vector<char> in(g.n, 0);
    double vol = 0.0, cut = 0.0;
    std::vector<int> cur;
    for (int k = 0; k + 1 < g.n; ++k) {
      int v = order[k];
      for (auto [u, e] : g.adj[v]) {
        (void)e;
        cut += in[u] ? -1.0 : 1.0;
      }
      in[v] = 1;
      vol += vol_of(v);
      cur.push_back(v);
      if (vol <= 0.0 || vol > total / 2.0 + 1e-12) continue;
      double ratio = cut / vol;
      if (ratio < best) {
        best = ratio;
        best_set = cur;
      }
    }
    res.exact = false;
  }
  if (std::isfinite(best)) {
    res.value = best;
    res.best_set = std::move(best_set);
  }
  return res;
}

ExpansionReport verify_expansion_lemma(const Graph& g, ExpansionMode mode) {
  if (g.n > 14) throw Error(Errc::TooLarge, "verify_expansion_lemma: exhaustive check is n <= 14");
  if (g.n < 1 || g.m() == 0)
    throw Error(Errc::InvalidInput, "verify_expansion_lemma: needs at least one edge");

  ExpansionReport rep;
  auto run_masks = [&](const std::vector<int>& universe, double denom, double rho) {
    int k = static_cast<int>(universe.size());
    std::vector<char> in_b(g.n, 0);
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::fill(in_b.begin(), in_b.end(), 0);
      double volb = 0.0;
      for (int i = 0; i < k; ++i)
        if ((mask >> i) & 1u) {
          in_b[universe[i]] = 1;
          volb += g.degree(universe[i]);
        }
      double voln = 0.0;
      for (int v = 0; v < g.n; ++v) {
        bool nb = false;
        for (auto [u, e] : g.adj[v]) {
          (void)e;
          if (in_b[u]) {
            nb = true;
            break;
          }
        }
        if (nb) voln += g.degree(v);
      }
      double b = volb / denom;
      double bp = voln / denom;
      double bound = b / (rho * rho * (1.0 - b) + b);
      double slack = bp - bound;
      ++rep.subsets_checked;
      if (rep.subsets_checked == 1 || slack < rep.worst_slack) {
        rep.worst_slack = slack;
        rep.worst_set.clear();
        for (int i = 0; i < k; ++i)
          if ((mask >> i) & 1u) rep.worst_set.push_back(universe[i]);
      }
    }
  };

  if (mode == ExpansionMode::kMeanzero) {
    rep.rho = spectral_radius_meanzero(g, false).rho;
    std::vector<int> all(g.n);
    for (int v = 0; v < g.n; ++v) all[v] = v;
    run_masks(all, static_cast<double>(g.volume()), rep.rho);
  } else {
    auto bw = bipartition(g);
    if (!bw.side)
      throw Error(Errc::NotBipartite, "verify_expansion_lemma: bipartite mode needs a bipartition");
    rep.rho = spectral_radius_meanzero(g, true).rho;
    for (int side = 1; side <= 2; ++side) {
      std::vector<int> part;
      for (int v = 0; v < g.n; ++v)
        if ((*bw.side)[v] == side) part.push_back(v);
      run_masks(part, static_cast<double>(g.m()), rep.rho);
    }
  }
  rep.pass = rep.worst_slack >= -1e-9;
  return rep;
}

AuxExpansionReport aux_expansion_epsilon(const Graph& g) {
  if (!g.all_degrees_even())
    throw Error(Errc::OddDegree, "aux_expansion_epsilon: all degrees must be even");
  if (g.m() == 0) throw Error(Errc::InvalidInput, "aux_expansion_epsilon: needs at least one edge");

  StarGraph sg = build_star(g);
  const int m = g.m();
  const double nu = 1.0 / (2.0 * m);  // uniform measure on the 2m star vertices

  AuxExpansionReport rep;
  rep.phi_st = cheeger_constant(g).value;
  rep.avg_deg = static_cast<double>(g.volume()) / g.n;
  rep.epsilon = std::min(3.0 / 20.0, rep.phi_st / (4.0 * rep.avg_deg));
  rep.expander = rep.phi_st > 0.0;

  // side 0: edge vertices (star ids 0..m-1); side 1: copies (ids m..2m-1)
  auto check_subset = [&](const std::vector<int>& members) {
    std::vector<char> hit(sg.star.n, 0);
    double na = 0.0;
    for (int v : members)
      for (auto [u, e] : sg.star.adj[v]) {
        (void)e;
        if (!hit[u]) {
          hit[u] = 1;
          na += 1.0;
        }
      }
    double a = nu * static_cast<double>(members.size());
    double expand = nu * na;
    double required = std::min((1.0 + rep.epsilon) * a, 0.25 + rep.epsilon);
    double slack = expand - required;
    ++rep.subsets_checked;
    if (rep.subsets_checked == 1 || slack < rep.worst_slack) rep.worst_slack = slack;
  };

  rep.exhaustive = m <= 20;
  if (rep.exhaustive) {
    for (int side = 0; side < 2; ++side) {
      int base = side * m;
      std::vector<int> members;
      for (std::uint64_t mask = 1; mask < (1ull << m); ++mask) {
        members.clear();
        for (int i = 0; i < m; ++i)
          if ((mask >> i) & 1ull) members.push_back(base + i);
        check_subset(members);
      }
    }
  } else {
    // singletons, prefixes, and deterministic pseudo-random subsets per side
    std::mt19937_64 rng(0x5eedULL);
    for (int side = 0; side < 2; ++side) {
      int base = side * m;
      std::vector<int> members;
      for (int i = 0; i < m; ++i) check_subset({base + i});
      members.clear();
      for (int i = 0; i < m; ++i) {
        members.push_back(base + i);
        check_subset(members);
      }
      for (int trial = 0; trial < 20000; ++trial) {
        members.clear();
        for (int i = 0; i < m; ++i)
          if (rng() & 1ull) members.push_back(base + i);
        if (!members.empty()) check_subset(members);
      }
    }
  }
  rep.pass = rep.worst_slack >= -1e-12;
  return rep;
}

}  // namespace balor
