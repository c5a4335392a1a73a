#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

// Stable vertex partition by iterated neighborhood color refinement (1-WL).
// Color ids are assigned by sorted signature, so they are isomorphism-invariant.
std::vector<int> wl_colors(const balor::Graph& g) {
  std::vector<int> col(g.n, 0);
  for (int v = 0; v < g.n; ++v) col[v] = g.degree(v);
  {
    std::vector<int> sorted = col;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < g.n; ++v)
      col[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), col[v]) -
                                sorted.begin());
  }
  for (int round = 0; round < g.n; ++round) {
    std::vector<std::pair<std::vector<int>, int>> sig(g.n);
    for (int v = 0; v < g.n; ++v) {
      std::vector<int> s;
      s.push_back(col[v]);
      for (auto [u, e] : g.adj[v]) {
        (void)e;
        s.push_back(col[u]);
      }
      std::sort(s.begin() + 1, s.end());
      sig[v] = {std::move(s), v};
    }
    std::vector<std::vector<int>> keys;
    for (const auto& [s, v] : sig) keys.push_back(s);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<int> next(g.n);
    for (const auto& [s, v] : sig)
      next[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), s) - keys.begin());
    if (next == col) break;
    col = std::move(next);
  }
  return col;
}

struct CanonSearch {
  const balor::Graph& g;
  std::vector<std::vector<char>> adj;  // dense adjacency
  std::vector<int> cls;                // stable WL color per vertex
  std::vector<int> pos_class;          // required class of each position
  std::vector<int> perm;               // position -> original vertex
  std::vector<char> used;
  std::vector<char> bits;  // upper triangle, row-major, filled as positions are fixed
  std::uint64_t best = ~0ULL;
  bool have = false;

  explicit CanonSearch(const balor::Graph& graph) : g(graph) {
    adj.assign(g.n, std::vector<char>(g.n, 0));
    for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = 1;
    cls = wl_colors(g);
    // class of position i: the multiset of stable colors, sorted ascending
    std::vector<int> sorted_cls = cls;
    std::sort(sorted_cls.begin(), sorted_cls.end());
    pos_class = sorted_cls;
    perm.assign(g.n, -1);
    used.assign(g.n, 0);
  }

  std::uint64_t pack() const {
    std::uint64_t x = 0;
    for (char b : bits) x = (x << 1) | static_cast<std::uint64_t>(b);
    return x;
  }

  // Greedy-with-ties search: at each position only the candidates whose new
  // adjacency row (against the already placed prefix) is lexicographically
  // minimal can start the overall minimum, so recurse exactly on those.
  void dfs(int pos) {
    if (pos == g.n) {
      std::uint64_t x = pack();
      if (!have || x < best) {
        best = x;
        have = true;
      }
      return;
    }
    std::vector<int> cand;
    for (int v = 0; v < g.n; ++v)
      if (!used[v] && cls[v] == pos_class[pos]) cand.push_back(v);
    std::vector<char> min_row;
    std::vector<int> keep;
    for (int v : cand) {
      std::vector<char> row(pos);
      for (int j = 0; j < pos; ++j) row[j] = adj[perm[j]][v];
      if (keep.empty() || row < min_row) {
        min_row = row;
        keep = {v};
      } else if (row == min_row) {
        keep.push_back(v);
      }
    }
    for (int v : keep) {
      perm[pos] = v;
      used[v] = 1;
      for (int j = 0; j < pos; ++j) bits.push_back(adj[perm[j]][v]);
      dfs(pos + 1);
      bits.resize(bits.size() - pos);
      used[v] = 0;
      perm[pos] = -1;
    }
  }
};

bool mask_connected(int n, std::uint64_t mask, const std::vector<std::pair<int, int>>& pairs) {
  if (n <= 1) return true;
  std::vector<std::vector<int>> adj(n);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (mask >> i & 1) {
      adj[pairs[i].first].push_back(pairs[i].second);
      adj[pairs[i].second].push_back(pairs[i].first);
    }
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int cnt = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++cnt;
        stack.push_back(u);
      }
  }
  return cnt == n;
}

balor::Graph mask_graph(int n, std::uint64_t mask, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::pair<int, int>> e;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (mask >> i & 1) e.push_back(pairs[i]);
  return balor::Graph::from_edges(n, e);
}

std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
  return pairs;
}

}  // namespace

std::uint64_t canonical_key(const balor::Graph& g) {
  if (g.n * (g.n - 1) / 2 > 64) throw std::invalid_argument("canonical_key: n too large");
  CanonSearch s(g);
  s.dfs(0);
  // fold in n so graphs of different order never collide
  return s.best ^ (static_cast<std::uint64_t>(g.n) << 58);
}

std::vector<balor::Graph> connected_classes(int n) {
  if (n > 7) throw std::invalid_argument("connected_classes: n > 7 not supported");
  auto pairs = all_pairs(n);
  std::set<std::uint64_t> seen;
  std::vector<balor::Graph> out;
  for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
    if (!mask_connected(n, mask, pairs)) continue;
    balor::Graph g = mask_graph(n, mask, pairs);
    std::uint64_t key = canonical_key(g);
    if (seen.insert(key).second) out.push_back(std::move(g));
  }
  return out;
}

namespace {

// All labeled graphs realizing an exact degree target, by deciding the
// lexicographic pair list with remaining-degree bookkeeping. Pairs touching u
// are exhausted once (u, n-1) is decided, so blocks finish vertices left to
// right; rem[u] == #undecided pairs of the block forces takes, rem[u] >
// #undecided kills the branch, and a decided component made solely of finished
// vertices can never reconnect. Isomorphic duplicates collapse via seen.
void degree_dfs(int n, std::size_t idx, const std::vector<std::pair<int, int>>& pairs,
                std::vector<int>& rem, std::uint64_t mask, std::set<std::uint64_t>& seen,
                std::vector<balor::Graph>& out) {
  if (idx == pairs.size()) {
    for (int v = 0; v < n; ++v)
      if (rem[v] != 0) return;
    // Skip labelings that swapping two consecutive equal-degree labels makes
    // lexicographically larger: the labeling maximizing the packed adjacency
    // bits within a class fails no such test, so every class still reaches the
    // canonical dedup at least once while most labeled duplicates die here.
    {
      std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
      for (std::size_t j = 0; j < pairs.size(); ++j)
        if (mask >> j & 1) adj[pairs[j].first][pairs[j].second] =
            adj[pairs[j].second][pairs[j].first] = 1;
      std::vector<int> deg(n, 0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) deg[a] += adj[a][b];
      std::vector<char> base, swapped;
      base.reserve(pairs.size());
      for (auto [a, b] : pairs) base.push_back(adj[a][b]);
      for (int i = 0; i + 1 < n; ++i) {
        if (deg[i] != deg[i + 1]) continue;
        swapped.clear();
        for (auto [a, b] : pairs) {
          int a2 = a == i ? i + 1 : (a == i + 1 ? i : a);
          int b2 = b == i ? i + 1 : (b == i + 1 ? i : b);
          swapped.push_back(adj[std::min(a2, b2)][std::max(a2, b2)]);
        }
        if (base < swapped) return;
      }
    }
    if (!mask_connected(n, mask, pairs)) return;
    balor::Graph g = mask_graph(n, mask, pairs);
    std::uint64_t key = canonical_key(g);
    if (seen.insert(key).second) out.push_back(std::move(g));
    return;
  }
  auto [u, v] = pairs[idx];
  if (v == u + 1) {  // block boundary: vertex u-1 is now final
    if (u > 0 && rem[u - 1] != 0) return;
    // every vertex must still fit its remaining degree into undecided pairs:
    // w >= u touches (x, w) for u <= x < w and (w, y) for w < y < n
    for (int w = u; w < n; ++w)
      if (rem[w] > (w - u) + (n - 1 - w)) return;
    if (u > 0) {
      std::vector<int> parent(n);
      for (int w = 0; w < n; ++w) parent[w] = w;
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (std::size_t j = 0; j < idx; ++j)
        if (mask >> j & 1) parent[find(pairs[j].first)] = find(pairs[j].second);
      std::vector<char> open(n, 0);  // component roots that still touch {u..n-1}
      for (int w = u; w < n; ++w) open[find(w)] = 1;
      for (int w = 0; w < u; ++w)
        if (!open[find(w)]) return;
    }
  }
  int undecided_in_block = n - v;  // (u,v), (u,v+1), ..., (u,n-1)
  if (rem[u] > undecided_in_block) return;
  bool must_take = rem[u] == undecided_in_block;
  if (!must_take) degree_dfs(n, idx + 1, pairs, rem, mask, seen, out);
  if (rem[u] > 0 && rem[v] > 0) {
    --rem[u];
    --rem[v];
    degree_dfs(n, idx + 1, pairs, rem, mask | (1ULL << idx), seen, out);
    ++rem[u];
    ++rem[v];
  }
}

// non-increasing even degree targets with entries in [2, n-1] and sum <= 2*cap
void degree_sequences(int n, int pos, int prev, int sum_left, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  int rest = n - pos - 1;
  for (int d = std::min(prev, (n - 1) & ~1); d >= 2; d -= 2) {
    if (d + 2 * rest > sum_left) continue;
    cur[pos] = d;
    degree_sequences(n, pos + 1, d, sum_left - d, cur, out);
  }
}

}  // namespace

std::vector<balor::Graph> even_connected_corpus(int edge_cap) {
  std::set<std::uint64_t> seen;
  std::vector<balor::Graph> out;
  // connected + all degrees even and >= 2 forces m >= n, so n <= edge_cap.
  // Every isomorphism class has a labeling with non-increasing degrees, so
  // sweeping exact non-increasing targets reaches every class at least once.
  for (int n = 3; n <= edge_cap && n <= 11; ++n) {
    auto pairs = all_pairs(n);
    std::vector<std::vector<int>> targets;
    std::vector<int> cur(n);
    degree_sequences(n, 0, n - 1, 2 * edge_cap, cur, targets);
    for (auto& target : targets)
      degree_dfs(n, 0, pairs, target, 0, seen, out);
  }
  return out;
}

long long brute_balanced_orientations(const balor::Graph& g) {
  if (g.m() > 24) throw std::invalid_argument("brute_balanced_orientations: m > 24");
  long long count = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << g.m()); ++mask) {
    std::vector<int> out_deg(g.n, 0);
    for (int e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edges[e];
      ++out_deg[(mask >> e & 1) ? u : v];
    }
    bool ok = true;
    for (int v = 0; v < g.n && ok; ++v) ok = 2 * out_deg[v] == g.degree(v);
    if (ok) ++count;
  }
  return count;
}

std::vector<double> char_poly(const balor::Matrix& a) {
  int t = static_cast<int>(a.size());
  balor::Matrix m(t, std::vector<double>(t, 0.0));  // running A * M_k
  std::vector<double> c(t + 1, 0.0);
  c[0] = 1.0;
  // M_1 = I; c_k = -tr(A M_k)/k; M_{k+1} = A M_k + c_k I
  balor::Matrix mk(t, std::vector<double>(t, 0.0));
  for (int i = 0; i < t; ++i) mk[i][i] = 1.0;
  for (int k = 1; k <= t; ++k) {
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) {
        double s = 0.0;
        for (int l = 0; l < t; ++l) s += a[i][l] * mk[l][j];
        m[i][j] = s;
      }
    double tr = 0.0;
    for (int i = 0; i < t; ++i) tr += m[i][i];
    c[k] = -tr / k;
    mk = m;
    for (int i = 0; i < t; ++i) mk[i][i] += c[k];
  }
  return c;
}

std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg <= 0) return {};
  std::vector<std::complex<double>> z(deg);
  // standard distinct starting points off the real axis
  for (int i = 0; i < deg; ++i)
    z[i] = std::polar(0.4 + 0.9 * i / std::max(1, deg), 0.9 + 2.0 * i);
  auto eval = [&](std::complex<double> x) {
    std::complex<double> p = 0.0;
    for (double c : coeffs) p = p * x + c;
    return p;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0.0;
    for (int i = 0; i < deg; ++i) {
      std::complex<double> denom = coeffs[0];
      for (int j = 0; j < deg; ++j)
        if (j != i) denom *= z[i] - z[j];
      std::complex<double> delta = eval(z[i]) / denom;
      z[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

namespace {

// Regularized incomplete gamma: series for P(a,x) (x < a+1), Lentz continued
// fraction for Q(a,x) otherwise.
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, term = sum, ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double chi_square_sf(double x, int k) {
  if (x <= 0.0) return 1.0;
  double a = 0.5 * k, hx = 0.5 * x;
  if (hx < a + 1.0) return 1.0 - gamma_p_series(a, hx);
  return gamma_q_cf(a, hx);
}

std::vector<double> sym_eigenvalues(const balor::Matrix& a_in) {
  const int n = static_cast<int>(a_in.size());
  if (n == 0) return {};
  // Householder reduction to tridiagonal form: diagonal d, subdiagonal e
  // (e[i] couples rows i-1 and i; e[0] unused). Textbook in-place scheme, the
  // scratch vector for A.u lives in e[0..l] during each elimination step.
  balor::Matrix a = a_in;
  std::vector<double> d(n, 0.0), e(n, 0.0);
  for (int i = n - 1; i >= 1; --i) {
    int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::fabs(a[i][k]);
      if (scale == 0.0) {
        e[i] = a[i][l];
      } else {
        for (int k = 0; k <= l; ++k) {
          a[i][k] /= scale;
          h += a[i][k] * a[i][k];
        }
        double f = a[i][l];
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[i][l] = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += a[j][k] * a[i][k];
          for (int k = j + 1; k <= l; ++k) g += a[k][j] * a[i][k];
          e[j] = g / h;
          f += e[j] * a[i][j];
        }
        double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = a[i][j];
          double gj = e[j] - hh * f;
          e[j] = gj;
          for (int k = 0; k <= j; ++k) a[j][k] -= f * e[k] + gj * a[i][k];
        }
      }
    } else {
      e[i] = a[i][l];
    }
  }
  for (int i = 0; i < n; ++i) d[i] = a[i][i];

  double lo = d[0], hi = d[0];
  for (int i = 0; i < n; ++i) {
    double r = (i > 0 ? std::fabs(e[i]) : 0.0) + (i + 1 < n ? std::fabs(e[i + 1]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  double span = std::max(hi - lo, 1e-30);
  // Sturm count: eigenvalues of the tridiagonal matrix below x. A pivot that
  // lands on zero (x exactly at an eigenvalue of a leading minor) is pushed to
  // a tiny negative value and counted, so exact hits resolve as <= rather than
  // silently dropping eigenvalues.
  const double pivmin = std::max(1e-290, 1e-18 * span);
  auto count_below = [&](double x) {
    int cnt = 0;
    double q = d[0] - x;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++cnt;
    for (int i = 1; i < n; ++i) {
      q = d[i] - x - e[i] * e[i] / q;
      if (std::fabs(q) < pivmin) q = -pivmin;
      if (q < 0.0) ++cnt;
    }
    return cnt;
  };
  std::vector<double> vals(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double a_ = lo - 1e-12 * span, b_ = hi + 1e-12 * span;
    while (b_ - a_ > 1e-14 * span) {
      double mid = 0.5 * (a_ + b_);
      if (count_below(mid) <= k)
        a_ = mid;
      else
        b_ = mid;
    }
    vals[k] = 0.5 * (a_ + b_);
  }
  return vals;
}

std::vector<double> tree_return_probabilities(int d, int k_max) {
  // distance-from-origin chain: 0 -> 1 w.p. 1; r>=1 -> r-1 w.p. 1/d, r+1 w.p. (d-1)/d
  std::vector<double> cur(k_max + 2, 0.0), nxt(k_max + 2, 0.0);
  cur[0] = 1.0;
  std::vector<double> ret(k_max + 1, 0.0);
  ret[0] = 1.0;
  for (int step = 1; step <= k_max; ++step) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (int r = 0; r <= k_max; ++r) {
      if (cur[r] == 0.0) continue;
      if (r == 0) {
        nxt[1] += cur[0];
      } else {
        nxt[r - 1] += cur[r] / d;
        if (r + 1 <= k_max + 1) nxt[r + 1] += cur[r] * (d - 1) / d;
      }
    }
    std::swap(cur, nxt);
    ret[step] = cur[0];
  }
  return ret;
}

}  // namespace oracle
