#include "balor/lazy_graph.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <unordered_map>

namespace balor {

namespace {

std::vector<std::string> tree_neighbors(const std::string& v, int k) {
  std::vector<std::string> out;
  if (v.empty()) {
    for (int i = 0; i < k; ++i) out.push_back(std::string(1, '0' + i));
  } else {
    out.push_back(v.substr(0, v.size() - 1));
    for (int i = 0; i < k - 1; ++i) out.push_back(v + std::string(1, '0' + i));
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s, char sep) {
  std::vector<int> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    if (cur.empty()) throw Error(Errc::UnsupportedParams, "empty numeric field in spec");
    out.push_back(std::stoi(cur));
  }
  return out;
}

}  // namespace

LazyGraph make_regular_tree(int k) {
  if (k < 2 || k > 10) throw Error(Errc::UnsupportedParams, "regular tree needs 2 <= k <= 10");
  LazyGraph lg;
  lg.name = "tree:" + std::to_string(k);
  lg.degree_bound = k;
  lg.root = "";
  lg.orbit_count = 1;
  lg.orbit_reps = {""};
  lg.neighbors = [k](const std::string& v) { return tree_neighbors(v, k); };
  lg.orbit = [](const std::string&) { return 0; };
  return lg;
}

LazyGraph make_biregular_tree(int a, int b) {
  if (a < 2 || b < 2 || a > 10 || b > 10)
    throw Error(Errc::UnsupportedParams, "biregular tree needs 2 <= a,b <= 10");
  LazyGraph lg;
  lg.name = "biregular:" + std::to_string(a) + ":" + std::to_string(b);
  lg.degree_bound = std::max(a, b);
  lg.root = "";
  lg.orbit_count = 2;
  lg.orbit_reps = {"", "0"};
  lg.neighbors = [a, b](const std::string& v) {
    int deg = (v.size() % 2 == 0) ? a : b;
    return tree_neighbors(v, deg);
  };
  lg.orbit = [](const std::string& v) { return static_cast<int>(v.size() % 2); };
  return lg;
}

LazyGraph make_pendant_clique(int d) {
  if (d < 1 || d > 3) throw Error(Errc::UnsupportedParams, "pendant-clique family needs 1 <= d <= 3");
  const int k = 2 * d;          // base tree degree
  const int members = 2 * d + 5;  // clique size
  LazyGraph lg;
  lg.name = "pendant:" + std::to_string(d);
  lg.degree_bound = 2 * d + 4;
  lg.root = "";
  lg.orbit_count = 3;
  lg.orbit_reps = {"", "#0:0", "#0:2"};
  auto clique_code = [](const std::string& w, int c, int i) {
    return w + "#" + std::to_string(c) + ":" + std::to_string(i);
  };
  lg.neighbors = [k, members, clique_code](const std::string& v) -> std::vector<std::string> {
    auto hash_pos = v.find('#');
    if (hash_pos == std::string::npos) {
      std::vector<std::string> out = tree_neighbors(v, k);
      for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 2; ++i) out.push_back(clique_code(v, c, i));
      return out;
    }
    std::string w = v.substr(0, hash_pos);
    auto colon = v.find(':', hash_pos);
    int c = std::stoi(v.substr(hash_pos + 1, colon - hash_pos - 1));
    int i = std::stoi(v.substr(colon + 1));
    std::vector<std::string> out;
    if (i <= 1) {
      out.push_back(w);  // attachment vertex
      for (int j = 2; j < members; ++j) out.push_back(clique_code(w, c, j));
    } else {
      out.push_back(clique_code(w, c, 0));
      out.push_back(clique_code(w, c, 1));
      for (int j = 2; j < members; ++j)
        if (j != i) out.push_back(clique_code(w, c, j));
    }
    return out;
  };
  lg.orbit = [](const std::string& v) {
    auto hash_pos = v.find('#');
    if (hash_pos == std::string::npos) return 0;
    int i = std::stoi(v.substr(v.find(':', hash_pos) + 1));
    return i <= 1 ? 1 : 2;
  };
  return lg;
}

namespace {

LazyGraph wrap_graph(const Graph& g, const std::string& name, bool transitive) {
  if (g.n == 0) throw Error(Errc::UnsupportedParams, "cannot wrap an empty graph");
  LazyGraph lg;
  lg.name = name;
  lg.degree_bound = 0;
  for (int v = 0; v < g.n; ++v) lg.degree_bound = std::max(lg.degree_bound, g.degree(v));
  lg.root = "0";
  auto adj = std::make_shared<std::vector<std::vector<int>>>();
  adj->assign(g.n, {});
  for (int v = 0; v < g.n; ++v)
    for (auto [u, e] : g.adj[v]) (*adj)[v].push_back(u);
  int n = g.n;
  lg.neighbors = [adj, n](const std::string& v) {
    int id = std::stoi(v);
    if (id < 0 || id >= n) throw Error(Errc::InvalidInput, "vertex id out of range");
    std::vector<std::string> out;
    for (int u : (*adj)[id]) out.push_back(std::to_string(u));
    return out;
  };
  if (transitive) {
    lg.orbit_count = 1;
    lg.orbit_reps = {"0"};
    lg.orbit = [](const std::string&) { return 0; };
  } else {
    lg.orbit_count = g.n;
    for (int v = 0; v < g.n; ++v) lg.orbit_reps.push_back(std::to_string(v));
    lg.orbit = [](const std::string& v) { return std::stoi(v); };
  }
  return lg;
}

}  // namespace

LazyGraph wrap_finite(const Graph& g, const std::string& name) { return wrap_graph(g, name, false); }
LazyGraph wrap_transitive(const Graph& g, const std::string& name) { return wrap_graph(g, name, true); }

Ball extract_ball(const LazyGraph& lg, const std::string& root, int radius, std::size_t vertex_cap) {
  if (radius < 0) throw Error(Errc::UnsupportedParams, "radius must be >= 0");
  Ball ball;
  ball.radius = radius;
  std::unordered_map<std::string, int> id;
  id[root] = 0;
  ball.encoding.push_back(root);
  ball.depth.push_back(0);
  ball.center = 0;
  std::vector<std::pair<int, int>> edges;
  for (std::size_t head = 0; head < ball.encoding.size(); ++head) {
    // note: encoding grows during the loop; index access stays valid
    std::string v = ball.encoding[head];
    int dv = ball.depth[head];
    for (const std::string& u : lg.neighbors(v)) {
      auto it = id.find(u);
      if (it != id.end()) {
        if (it->second < static_cast<int>(head)) edges.push_back({it->second, static_cast<int>(head)});
      } else if (dv < radius) {
        if (ball.encoding.size() >= vertex_cap)
          throw Error(Errc::BallTooLarge, "ball exceeds vertex cap of " + std::to_string(vertex_cap));
        int nid = static_cast<int>(ball.encoding.size());
        id[u] = nid;
        ball.encoding.push_back(u);
        ball.depth.push_back(dv + 1);
      }
    }
  }
  ball.graph = Graph::from_edges(static_cast<int>(ball.encoding.size()), edges);
  return ball;
}

Ball extract_ball(const LazyGraph& lg, int radius) { return extract_ball(lg, lg.root, radius); }

LazyGraph builtin_lazy(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "tree") return make_regular_tree(std::stoi(rest));
  if (kind == "biregular") {
    auto v = parse_ints(rest, ':');
    if (v.size() != 2) throw Error(Errc::UnsupportedParams, "biregular spec: biregular:a:b");
    return make_biregular_tree(v[0], v[1]);
  }
  if (kind == "pendant") return make_pendant_clique(std::stoi(rest));
  if (kind == "circulant") return wrap_transitive(builtin_finite(spec), spec);
  throw Error(Errc::UnsupportedParams, "unknown builtin spec: " + spec);
}

Graph builtin_finite(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  if (kind != "circulant" || colon == std::string::npos)
    throw Error(Errc::UnsupportedParams, "finite builtin specs: circulant:n:s1,s2,...");
  std::string rest = spec.substr(colon + 1);
  auto colon2 = rest.find(':');
  if (colon2 == std::string::npos) throw Error(Errc::UnsupportedParams, "circulant spec: circulant:n:s1,s2");
  int n = std::stoi(rest.substr(0, colon2));
  auto shifts = parse_ints(rest.substr(colon2 + 1), ',');
  return make_circulant(n, shifts);
}

}  // namespace balor
