#include "balor/random_graphs.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace balor {

Graph random_regular_bipartite(int n, int k, std::uint64_t seed, int retry_cap) {
  if (n < 1 || k < 1 || k > n) throw Error(Errc::GenerationFailed, "need 1 <= k <= n");
  std::mt19937_64 rng(seed);
  std::vector<int> stubs(static_cast<std::size_t>(n) * k);
  for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<int>(i / k);
  for (int attempt = 0; attempt < retry_cap; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    // left stub i belongs to vertex i/k; its partner is stubs[i] on the right side
    std::vector<std::set<int>> seen(n);
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; ++i)
      simple = seen[i / k].insert(stubs[i]).second;
    if (!simple) continue;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(stubs.size());
    for (std::size_t i = 0; i < stubs.size(); ++i)
      edges.push_back({static_cast<int>(i / k), n + stubs[i]});
    return Graph::from_edges(2 * n, edges);
  }
  throw Error(Errc::GenerationFailed,
              "no simple pairing found in " + std::to_string(retry_cap) + " attempts");
}

Graph random_connected_graph(int n, double p, std::uint64_t seed, int retry_cap) {
  if (n < 1 || p <= 0.0 || p > 1.0) throw Error(Errc::GenerationFailed, "need n >= 1, 0 < p <= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  for (int attempt = 0; attempt < retry_cap; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng)) edges.push_back({u, v});
    Graph g = Graph::from_edges(n, edges);
    if (is_connected(g)) return g;
  }
  throw Error(Errc::GenerationFailed, "no connected sample within retry cap");
}

}  // namespace balor
