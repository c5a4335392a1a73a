#include "balor/fiid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "balor/matching.hpp"
#include "balor/quotient.hpp"

namespace balor {

double Labeling::label(const std::string& encoding, std::uint64_t channel) const {
  std::uint64_t h = hash_str(mix64(seed ^ 0x6c61626c65ULL), encoding);
  h = hash_combine(h, channel);
  return to_unit(mix64(h));
}

Labeling Labeling::split(std::uint64_t tag) const {
  return Labeling{mix64(hash_combine(seed, tag ^ 0x73706c6974ULL))};
}

LocalityReport locality_test(const BlockFactor& bf, const LazyGraph& lg,
                             const std::string& root, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::InvalidInput, "locality_test: trials must be positive");
  LocalityReport rep;
  rep.trials = trials;
  // hand the rule one extra shell so reading beyond the declared radius is possible
  Ball ball = extract_ball(lg, root, bf.radius + 1);
  for (int t = 0; t < trials; ++t) {
    Labeling base = Labeling{seed}.split(static_cast<std::uint64_t>(t));
    Labeling redraw = base.split(0x07ca11ULL);
    FactorInput in1;
    in1.ball = &ball;
    in1.label = [&](int v, std::uint64_t ch) { return base.label(ball.encoding[v], ch); };
    auto out1 = bf.rule(in1);
    FactorInput in2;
    in2.ball = &ball;
    in2.label = [&](int v, std::uint64_t ch) {
      return ball.depth[v] > bf.radius ? redraw.label(ball.encoding[v], ch)
                                       : base.label(ball.encoding[v], ch);
    };
    auto out2 = bf.rule(in2);
    if (out1 != out2) {
      ++rep.failures;
      if (rep.first_failure.empty())
        rep.first_failure = "trial " + std::to_string(t) +
                            ": output changed after redrawing labels beyond radius " +
                            std::to_string(bf.radius);
    }
  }
  rep.pass = rep.failures == 0;
  return rep;
}

namespace {

struct FiniteEval {
  const Graph* g = nullptr;
  std::vector<Ball> balls;            // per vertex, radius = factor radius
  std::vector<std::vector<int>> ids;  // ball-local -> global vertex id
};

FiniteEval prepare_finite_eval(const Graph& g, int radius) {
  FiniteEval fe;
  fe.g = &g;
  LazyGraph lazy = wrap_finite(g);
  fe.balls.reserve(g.n);
  fe.ids.resize(g.n);
  for (int v = 0; v < g.n; ++v) {
    fe.balls.push_back(extract_ball(lazy, std::to_string(v), radius));
    const Ball& b = fe.balls.back();
    fe.ids[v].resize(b.graph.n);
    for (int i = 0; i < b.graph.n; ++i) fe.ids[v][i] = std::stoi(b.encoding[i]);
  }
  return fe;
}

std::vector<double> eval_at(const FiniteEval& fe, const BlockFactor& bf, int v,
                            const std::function<double(int, std::uint64_t)>& global_label) {
  FactorInput in;
  in.ball = &fe.balls[v];
  in.label = [&](int local, std::uint64_t ch) { return global_label(fe.ids[v][local], ch); };
  return bf.rule(in);
}

}  // namespace

EquivarianceReport equivariance_test(const BlockFactor& bf, const Graph& g,
                                     const std::vector<int>& sigma, int trials,
                                     std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::InvalidInput, "equivariance_test: trials must be positive");
  if (static_cast<int>(sigma.size()) != g.n)
    throw Error(Errc::InvalidAutomorphism, "equivariance_test: sigma size != vertex count");
  std::vector<int> inv(g.n, -1);
  for (int v = 0; v < g.n; ++v) {
    if (sigma[v] < 0 || sigma[v] >= g.n || inv[sigma[v]] != -1)
      throw Error(Errc::InvalidAutomorphism, "equivariance_test: sigma is not a bijection");
    inv[sigma[v]] = v;
  }
  std::vector<std::unordered_map<int, int>> pos(g.n);
  for (int v = 0; v < g.n; ++v)
    for (std::size_t j = 0; j < g.adj[v].size(); ++j) pos[v][g.adj[v][j].first] = static_cast<int>(j);
  for (const auto& [u, v] : g.edges)
    if (!pos[sigma[u]].count(sigma[v]))
      throw Error(Errc::InvalidAutomorphism, "equivariance_test: sigma does not preserve edges");

  FiniteEval fe = prepare_finite_eval(g, bf.radius);
  EquivarianceReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t key = mix64(hash_combine(mix64(seed), static_cast<std::uint64_t>(t)));
    auto base = [&](int v, std::uint64_t ch) {
      return to_unit(mix64(hash_combine(hash_combine(key, static_cast<std::uint64_t>(v)), ch)));
    };
    // sigma-translated labels: vertex x carries the label that sigma^{-1}(x) had
    auto moved = [&](int v, std::uint64_t ch) { return base(inv[v], ch); };
    bool trial_ok = true;
    for (int v = 0; v < g.n && trial_ok; ++v) {
      auto out = eval_at(fe, bf, v, base);
      auto out_moved = eval_at(fe, bf, sigma[v], moved);
      if (out.size() != out_moved.size()) {
        trial_ok = false;
        break;
      }
      if (static_cast<int>(out.size()) == g.degree(v)) {
        // per-edge outputs: entry j speaks about neighbor adj[v][j]
        for (std::size_t j = 0; j < out.size() && trial_ok; ++j) {
          int u = g.adj[v][j].first;
          int jj = pos[sigma[v]].at(sigma[u]);
          if (out[j] != out_moved[jj]) trial_ok = false;
        }
      } else if (out != out_moved) {
        trial_ok = false;
      }
      if (!trial_ok && rep.first_failure.empty())
        rep.first_failure = "trial " + std::to_string(t) + ": output at vertex " +
                            std::to_string(v) + " does not commute with sigma";
    }
    if (!trial_ok) ++rep.failures;
  }
  rep.pass = rep.failures == 0;
  return rep;
}

namespace {

struct TreeBallShape {
  std::vector<int> order;        // vertices by (depth, id)
  std::vector<int> parent_edge;  // -1 at the center
  int reg_degree = 0;            // common interior degree
};

TreeBallShape validate_tree_ball(const Ball& ball) {
  const Graph& g = ball.graph;
  if (g.n == 0 || static_cast<int>(ball.depth.size()) != g.n)
    throw Error(Errc::NotTreeBall, "tree ball: empty or inconsistent depth map");
  if (g.m() != g.n - 1 || !is_connected(g))
    throw Error(Errc::NotTreeBall, "tree ball: graph is not a tree");
  if (ball.depth[ball.center] != 0)
    throw Error(Errc::NotTreeBall, "tree ball: center depth must be 0");
  TreeBallShape shape;
  shape.parent_edge.assign(g.n, -1);
  for (int v = 0; v < g.n; ++v) {
    if (v == ball.center) continue;
    int parents = 0;
    for (auto [u, e] : g.adj[v]) {
      if (ball.depth[u] == ball.depth[v] - 1) {
        ++parents;
        shape.parent_edge[v] = e;
      } else if (ball.depth[u] != ball.depth[v] + 1) {
        throw Error(Errc::NotTreeBall, "tree ball: non-radial edge");
      }
    }
    if (parents != 1) throw Error(Errc::NotTreeBall, "tree ball: vertex without unique parent");
  }
  shape.reg_degree = g.degree(ball.center);
  for (int v = 0; v < g.n; ++v) {
    if (ball.depth[v] >= ball.radius) continue;
    if (g.degree(v) != shape.reg_degree)
      throw Error(Errc::NotTreeBall, "tree ball: interior degrees differ from the root's");
  }
  if (ball.radius > 0 && shape.reg_degree % 2 != 0)
    throw Error(Errc::NotTreeBall, "tree ball: interior degree must be even");
  shape.order.resize(g.n);
  std::iota(shape.order.begin(), shape.order.end(), 0);
  std::sort(shape.order.begin(), shape.order.end(), [&](int a, int b) {
    if (ball.depth[a] != ball.depth[b]) return ball.depth[a] < ball.depth[b];
    return a < b;
  });
  return shape;
}

}  // namespace

Orientation sample_mu_bo(const Ball& ball, std::uint64_t seed) {
  TreeBallShape shape = validate_tree_ball(ball);
  const Graph& g = ball.graph;
  Orientation o;
  o.head.assign(g.m(), -1);
  std::mt19937_64 rng(mix64(hash_combine(seed, 0xb0ULL)));
  const int half = shape.reg_degree / 2;
  for (int v : shape.order) {
    if (ball.depth[v] >= ball.radius) continue;
    std::vector<std::pair<int, int>> children;  // (child, edge)
    for (auto [u, e] : g.adj[v])
      if (ball.depth[u] == ball.depth[v] + 1) children.emplace_back(u, e);
    int need_out = half;
    if (v != ball.center && o.head[shape.parent_edge[v]] != v) --need_out;
    std::shuffle(children.begin(), children.end(), rng);
    for (std::size_t i = 0; i < children.size(); ++i)
      o.head[children[i].second] = static_cast<int>(i) < need_out ? children[i].first : v;
  }
  return o;
}

SchreierDecoration sample_mu_sch(const Ball& ball, std::uint64_t seed) {
  TreeBallShape shape = validate_tree_ball(ball);
  const Graph& g = ball.graph;
  const int d = shape.reg_degree / 2;
  SchreierDecoration sd;
  sd.colors = d;
  sd.color.assign(g.m(), -1);
  sd.orientation.head.assign(g.m(), -1);
  std::mt19937_64 rng(mix64(hash_combine(seed, 0x5cULL)));
  for (int v : shape.order) {
    if (ball.depth[v] >= ball.radius) continue;
    std::vector<std::pair<int, int>> slots;  // (color, 1 = outgoing from v)
    for (int c = 0; c < d; ++c) {
      slots.emplace_back(c, 0);
      slots.emplace_back(c, 1);
    }
    if (v != ball.center) {
      int pe = shape.parent_edge[v];
      std::pair<int, int> taken{sd.color[pe], sd.orientation.head[pe] != v ? 1 : 0};
      slots.erase(std::find(slots.begin(), slots.end(), taken));
    }
    std::vector<std::pair<int, int>> children;
    for (auto [u, e] : g.adj[v])
      if (ball.depth[u] == ball.depth[v] + 1) children.emplace_back(u, e);
    std::shuffle(slots.begin(), slots.end(), rng);
    for (std::size_t i = 0; i < children.size(); ++i) {
      auto [c, out] = slots[i];
      sd.color[children[i].second] = c;
      sd.orientation.head[children[i].second] = out ? children[i].first : v;
    }
  }
  return sd;
}

DecayReport correlation_decay(const LazyGraph& lg, const BlockFactor& bf, int k_max,
                              long long samples, std::uint64_t seed,
                              long long center_samples, double reference_rate) {
  if (k_max < 1 || samples < 1 || center_samples < 1)
    throw Error(Errc::InvalidInput, "correlation_decay: counts must be positive");
  OrbitStructure os = orbit_structure(lg);

  std::mt19937_64 rng(mix64(hash_combine(seed, 0xdecaULL)));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto draw_orbit = [&]() {
    double x = unif(rng), acc = 0.0;
    for (int i = 0; i < os.t; ++i) {
      acc += os.ptilde[i];
      if (x < acc) return i;
    }
    return os.t - 1;
  };

  Labeling master{seed};
  auto eval_f = [&](const std::string& enc, const Labeling& lab) {
    Ball ball = extract_ball(lg, enc, bf.radius);
    FactorInput in;
    in.ball = &ball;
    in.label = [&](int v, std::uint64_t ch) { return lab.label(ball.encoding[v], ch); };
    auto out = bf.rule(in);
    if (out.size() != 1)
      throw Error(Errc::InvalidInput, "correlation_decay: factor must output a single real");
    return out[0];
  };

  DecayReport rep;
  rep.samples = samples;
  rep.center_samples = center_samples;
  rep.reference_rate = reference_rate;

  std::vector<double> osum(os.t, 0.0);
  std::vector<long long> ocnt(os.t, 0);
  double msum = 0.0;
  for (long long s = 0; s < center_samples; ++s) {
    int i = draw_orbit();
    Labeling lab = master.split(hash_combine(0xC347ULL, static_cast<std::uint64_t>(s)));
    double f = eval_f(os.reps[i], lab);
    msum += f;
    osum[i] += f;
    ++ocnt[i];
  }
  rep.mean = msum / static_cast<double>(center_samples);
  rep.orbit_means.assign(os.t, 0.0);
  for (int i = 0; i < os.t; ++i)
    if (ocnt[i] > 0) rep.orbit_means[i] = osum[i] / static_cast<double>(ocnt[i]);

  const int walk_len = 2 * k_max;
  std::vector<double> sum(k_max + 1, 0.0), sumsq(k_max + 1, 0.0);
  std::vector<std::string> pos(walk_len + 1);
  std::vector<double> fval(walk_len + 1);
  for (long long s = 0; s < samples; ++s) {
    int i = draw_orbit();
    Labeling lab = master.split(hash_combine(0xDA7AULL, static_cast<std::uint64_t>(s)));
    pos[0] = os.reps[i];
    for (int step = 1; step <= walk_len; ++step) {
      auto nb = lg.neighbors(pos[step - 1]);
      if (nb.empty()) throw Error(Errc::InvalidInput, "correlation_decay: dead-end vertex");
      std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
      pos[step] = nb[pick(rng)];
    }
    for (int j = 0; j <= walk_len; ++j) fval[j] = eval_f(pos[j], lab) - rep.mean;
    for (int k = 1; k <= k_max; ++k) {
      double acc = 0.0;
      int cnt = 0;
      for (int j = 0; j + k <= walk_len; ++j) {
        acc += fval[j] * fval[j + k];
        ++cnt;
      }
      double obs = acc / cnt;
      sum[k] += obs;
      sumsq[k] += obs * obs;
    }
  }

  rep.ks.resize(k_max);
  rep.estimates.resize(k_max);
  rep.std_errors.resize(k_max);
  rep.kth_roots.resize(k_max);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int usable = 0;
  for (int k = 1; k <= k_max; ++k) {
    double est = sum[k] / static_cast<double>(samples);
    double var = std::max(0.0, sumsq[k] / static_cast<double>(samples) - est * est);
    double se = std::sqrt(var / static_cast<double>(samples));
    rep.ks[k - 1] = k;
    rep.estimates[k - 1] = est;
    rep.std_errors[k - 1] = se;
    bool significant = std::abs(est) > 3.0 * se && est != 0.0;
    rep.kth_roots[k - 1] =
        significant ? std::pow(std::abs(est), 1.0 / k) : std::numeric_limits<double>::quiet_NaN();
    if (significant) {
      double x = k, y = std::log(std::abs(est));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++usable;
    }
  }
  if (usable >= 2) {
    double denom = usable * sxx - sx * sx;
    if (denom > 0.0) rep.fitted_rate = std::exp((usable * sxy - sx * sy) / denom);
  }
  return rep;
}

BlockFactor factor_root_label() {
  BlockFactor bf;
  bf.radius = 0;
  bf.rule = [](const FactorInput& in) {
    return std::vector<double>{in.label(in.ball->center, 0)};
  };
  return bf;
}

BlockFactor factor_neighbor_threshold() {
  BlockFactor bf;
  bf.radius = 1;
  bf.rule = [](const FactorInput& in) {
    const Graph& g = in.ball->graph;
    double count = 0.0;
    for (auto [u, e] : g.adj[in.ball->center]) {
      (void)e;
      if (in.label(u, 0) > 0.5) count += 1.0;
    }
    return std::vector<double>{count};
  };
  return bf;
}

BlockFactor factor_local_orientation(int k_max) {
  if (k_max < 1) throw Error(Errc::InvalidInput, "factor_local_orientation: k_max must be >= 1");
  BlockFactor bf;
  bf.radius = 3 * k_max;
  bf.rule = [k_max](const FactorInput& in) {
    const Graph& g = in.ball->graph;
    const int m = g.m();
    // star of the visible ball, with ceil(deg/2) copies so odd boundary degrees
    // are tolerated; interior structure matches the true star transform
    std::vector<int> offset(g.n);
    int next = m;
    for (int v = 0; v < g.n; ++v) {
      offset[v] = next;
      next += (g.degree(v) + 1) / 2;
    }
    std::vector<std::pair<int, int>> sedges;
    for (int e = 0; e < m; ++e) {
      auto [u, v] = g.edges[e];
      for (int i = 0; i < (g.degree(u) + 1) / 2; ++i) sedges.emplace_back(e, offset[u] + i);
      for (int i = 0; i < (g.degree(v) + 1) / 2; ++i) sedges.emplace_back(e, offset[v] + i);
    }
    Graph star = Graph::from_edges(next, std::move(sedges));

    // star labels from ball labels, without touching vertex ids: an edge vertex
    // mixes its endpoints' labels symmetrically, a copy uses an indexed channel
    std::vector<double> labels(star.n, 0.0);
    for (int e = 0; e < m; ++e) {
      auto [u, v] = g.edges[e];
      double x = in.label(u, 7) + in.label(v, 7);
      labels[e] = x - std::floor(x);
    }
    for (int v = 0; v < g.n; ++v)
      for (int i = 0; i < (g.degree(v) + 1) / 2; ++i)
        labels[offset[v] + i] = in.label(v, 8 + static_cast<std::uint64_t>(i));

    auto [matching, stats] = local_matching_rounds(star, labels, k_max, 0);
    (void)stats;
    const int c = in.ball->center;
    std::vector<double> out;
    out.reserve(g.adj[c].size());
    for (auto [u, e] : g.adj[c]) {
      int p = matching.partner[e];
      double dir = 0.0;  // unmatched edge vertex: leave the edge undecided
      if (p >= offset[c] && p < offset[c] + (g.degree(c) + 1) / 2)
        dir = -1.0;  // matched to a copy of the center: points into the center
      else if (p >= 0)
        dir = 1.0;  // matched to a copy of the other endpoint: points out
      (void)u;
      out.push_back(dir);
    }
    return out;
  };
  return bf;
}

}  // namespace balor
