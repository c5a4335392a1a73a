#include <cmath>
#include <set>

#include "doctest.h"

#include "balor/graph.hpp"
#include "balor/lazy_graph.hpp"
#include "balor/random_graphs.hpp"
#include "balor/spectral.hpp"
#include "support/oracles.hpp"

using namespace balor;

namespace {

Graph petersen() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({i, 5 + i});
    e.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return Graph::from_edges(10, e);
}

}  // namespace

TEST_CASE("markov_apply averages over neighbors") {
  Graph c4 = make_cycle(4);
  auto zero = markov_apply(c4, {1.0, 0.0, -1.0, 0.0});
  for (double x : zero) CHECK(x == doctest::Approx(0.0));
  auto sign = markov_apply(c4, {1.0, -1.0, 1.0, -1.0});
  CHECK(sign[0] == doctest::Approx(-1.0));
  // explicit weights rescale: with w = 4 on a 2-regular graph, Mf halves
  auto half = markov_apply(c4, {1.0, -1.0, 1.0, -1.0}, {4.0, 4.0, 4.0, 4.0});
  CHECK(half[0] == doctest::Approx(-0.5));
  CHECK_THROWS_AS(markov_apply(c4, {1.0}), Error);
  CHECK_THROWS_AS(markov_apply(c4, {1, 1, 1, 1}, {0.0, 1, 1, 1}), Error);
}

TEST_CASE("markov_apply keeps isolated vertices fixed") {
  Graph g = Graph::from_edges(3, {{0, 1}});
  auto out = markov_apply(g, {2.0, 4.0, 7.0});
  CHECK(out[0] == doctest::Approx(4.0));
  CHECK(out[1] == doctest::Approx(2.0));
  CHECK(out[2] == doctest::Approx(7.0));
}

TEST_CASE("mean-zero spectral radius matches closed forms") {
  CHECK(spectral_radius_meanzero(make_complete(4)).rho == doctest::Approx(1.0 / 3.0));
  CHECK(spectral_radius_meanzero(make_complete(5)).rho == doctest::Approx(0.25));
  // bipartite graphs keep the sign eigenvalue -1 unless excluded
  CHECK(spectral_radius_meanzero(make_cycle(6)).rho == doctest::Approx(1.0));
  CHECK(spectral_radius_meanzero(make_cycle(6), true).rho == doctest::Approx(0.5));
  CHECK(spectral_radius_meanzero(make_cycle(4), true).rho == doctest::Approx(0.0));
  CHECK(spectral_radius_meanzero(make_complete_bipartite(3, 3), true).rho ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(spectral_radius_meanzero(petersen()).rho == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("sign exclusion requires a connected bipartite graph") {
  CHECK_THROWS_AS(spectral_radius_meanzero(make_cycle(5), true), Error);
  CHECK_THROWS_AS(spectral_radius_meanzero(Graph::from_edges(4, {{0, 1}, {2, 3}}), true), Error);
}

TEST_CASE("forced power iteration agrees with the dense route") {
  Graph p = petersen();
  SpectralOptions opts;
  opts.force_power = true;
  auto power = spectral_radius_meanzero(p, false, opts);
  auto dense = spectral_radius_meanzero(p);
  CHECK(power.rho == doctest::Approx(dense.rho).epsilon(1e-8));
  CHECK(power.iterations > 0);
}

TEST_CASE("Dirichlet weights on tree balls increase toward the tree spectral radius") {
  LazyGraph t4 = make_regular_tree(4);
  const double rho_tree = std::sqrt(3.0) / 2.0;
  double prev = 0.0;
  for (int r = 2; r <= 4; ++r) {
    Ball b = extract_ball(t4, r);
    SpectralOptions opts;
    opts.weights.assign(b.graph.n, 4.0);
    double rho = spectral_radius_meanzero(b.graph, false, opts).rho;
    CHECK(rho > prev);
    CHECK(rho < rho_tree);
    prev = rho;
  }
  CHECK(prev > 0.72);  // r=4 is already within striking distance
}

TEST_CASE("return probabilities on the tree match the radial chain oracle") {
  LazyGraph t4 = make_regular_tree(4);
  const long long samples = 200000;
  auto rep = return_probability_rho(t4, t4.root, 12, samples, 99);
  auto exact = oracle::tree_return_probabilities(4, 12);
  for (int k = 0; k <= 12; ++k) {
    double se = std::sqrt(exact[k] * (1.0 - exact[k]) / samples);
    CHECK(std::abs(rep.p_hat[k] - exact[k]) < 5.0 * se + 1e-9);
  }
  CHECK(rep.estimate.method == SpectralEstimate::kReturnProbability);
  // lower-bound estimator: below the true value, above the k=2 floor
  CHECK(rep.estimate.rho >= 0.49);
  CHECK(rep.estimate.rho < std::sqrt(3.0) / 2.0 + 0.02);
}

TEST_CASE("return probability sampling is deterministic per seed") {
  LazyGraph t3 = make_regular_tree(3);
  auto a = return_probability_rho(t3, t3.root, 8, 20000, 7);
  auto b = return_probability_rho(t3, t3.root, 8, 20000, 7);
  auto c = return_probability_rho(t3, t3.root, 8, 20000, 8);
  CHECK(a.p_hat == b.p_hat);
  CHECK(a.p_hat != c.p_hat);
}

TEST_CASE("cheeger constant on small graphs") {
  auto k5 = cheeger_constant(make_complete(5));
  CHECK(k5.value == doctest::Approx(0.75));
  CHECK(k5.exact);
  CHECK(k5.best_set.size() == 2);  // vol(S)=8 <= 10, boundary 6
  CHECK(cheeger_constant(make_cycle(6)).value == doctest::Approx(1.0 / 3.0));
  CHECK(cheeger_constant(make_cycle(4)).value == doctest::Approx(0.5));
  CHECK(cheeger_constant(make_path(2)).value == doctest::Approx(1.0));
  // disconnected graphs have a zero cut
  CHECK(cheeger_constant(Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}))
            .value == doctest::Approx(0.0));
}

TEST_CASE("cheeger sweep upper bound stays above the exhaustive value") {
  // n = 16 forces the sweep path; compare against the known cut of C_16
  Graph c16 = make_cycle(16);
  auto sweep = cheeger_constant(c16);
  CHECK(!sweep.exact);
  CHECK(sweep.value >= 2.0 / 16.0 - 1e-12);
  CHECK(sweep.value <= 0.5);
}

TEST_CASE("expansion lemma holds on small graphs in both modes") {
  auto k5 = verify_expansion_lemma(make_complete(5), ExpansionMode::kMeanzero);
  CHECK(k5.pass);
  CHECK(k5.subsets_checked == 31);
  CHECK(k5.worst_slack >= -1e-9);
  auto c6m = verify_expansion_lemma(make_cycle(6), ExpansionMode::kMeanzero);
  CHECK(c6m.pass);
  auto c6b = verify_expansion_lemma(make_cycle(6), ExpansionMode::kBipartite);
  CHECK(c6b.pass);
  CHECK(c6b.subsets_checked == 14);
  auto k33 = verify_expansion_lemma(make_complete_bipartite(3, 3), ExpansionMode::kBipartite);
  CHECK(k33.pass);
  CHECK_THROWS_AS(verify_expansion_lemma(make_cycle(16), ExpansionMode::kMeanzero), Error);
  CHECK_THROWS_AS(verify_expansion_lemma(make_cycle(5), ExpansionMode::kBipartite), Error);
}

TEST_CASE("star expansion: epsilon and the subset inequality") {
  auto k5 = aux_expansion_epsilon(make_complete(5));
  CHECK(k5.phi_st == doctest::Approx(0.75));
  CHECK(k5.avg_deg == doctest::Approx(4.0));
  CHECK(k5.epsilon == doctest::Approx(3.0 / 64.0));
  CHECK(k5.expander);
  CHECK(k5.exhaustive);
  CHECK(k5.pass);
  CHECK(k5.worst_slack >= -1e-12);

  auto c4 = aux_expansion_epsilon(make_cycle(4));
  CHECK(c4.epsilon == doctest::Approx(1.0 / 16.0));
  CHECK(c4.pass);

  // disconnected even graph: phi = 0, epsilon = 0, inequality still holds
  Graph two_triangles =
      Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  auto disc = aux_expansion_epsilon(two_triangles);
  CHECK(disc.epsilon == doctest::Approx(0.0));
  CHECK(!disc.expander);
  CHECK(disc.pass);

  CHECK_THROWS_AS(aux_expansion_epsilon(make_path(3)), Error);
}

TEST_CASE("power estimate matches a dense eigensolve on random graphs") {
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_connected_graph(4 + trial % 5, 0.5, 1000 + trial);
    SpectralOptions opts;
    opts.force_power = true;
    double est = spectral_radius_meanzero(g, false, opts).rho;
    double exact = spectral_radius_meanzero(g).rho;
    CHECK(std::abs(est - exact) < 1e-6);
  }
}
