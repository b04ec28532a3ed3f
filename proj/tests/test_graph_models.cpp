#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "gml/graph_sample.hpp"

using namespace gml;

TEST_CASE("character table identities") {
  for (double p : {0.1, 0.25, 0.5, 0.9}) {
    auto t = CharacterTable::for_p(p);
    CHECK(p * t.chi_present + (1 - p) * t.chi_absent == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p * t.chi_present * t.chi_present + (1 - p) * t.chi_absent * t.chi_absent ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
  auto quarter = CharacterTable::for_p(0.25);
  CHECK(quarter.chi_present == doctest::Approx(std::sqrt(3.0)));
  CHECK(quarter.chi_absent == doctest::Approx(-1.0 / std::sqrt(3.0)));
}

TEST_CASE("er sampler rejects degenerate probabilities") {
  CHECK_THROWS(sample_er(2, 2, 0));   // p = 1
  CHECK_THROWS(sample_er(10, 0, 0));  // p = 0
  CHECK_THROWS(sample_er(10, 10, 0));
}

TEST_CASE("er sampler is deterministic per seed") {
  auto a = sample_er(50, 5, 1234);
  auto b = sample_er(50, 5, 1234);
  auto c = sample_er(50, 5, 1235);
  CHECK(a.edges == b.edges);
  CHECK(a.edges != c.edges);
}

TEST_CASE("er mean degree concentrates") {
  // grand mean degree over 100 seeds at n=1000, d=50: E = 49.95,
  // sigma = 2 sqrt(S C p(1-p)) / (S n) ~ 0.0308; assert 5 sigma
  const int n = 1000, seeds = 100;
  const double d = 50;
  double edge_total = 0;
  for (int s = 0; s < seeds; ++s) edge_total += sample_er(n, d, 9000 + s).edge_count();
  double mean_degree = 2.0 * edge_total / (static_cast<double>(seeds) * n);
  double p = d / n;
  double pairs = n * (n - 1) / 2.0;
  double sigma = 2.0 * std::sqrt(seeds * pairs * p * (1 - p)) / (seeds * static_cast<double>(n));
  CHECK(std::abs(mean_degree - d * (n - 1) / n) <= 5 * sigma);
}

TEST_CASE("regular sampler: K4 is the unique 3-regular graph on 4 vertices") {
  for (std::uint64_t seed : {0ULL, 7ULL, 99ULL}) {
    auto g = sample_regular(4, 3, seed);
    CHECK(g.edge_count() == 6);
    for (int v = 0; v < 4; ++v) CHECK(g.degree(v) == 3);
  }
}

TEST_CASE("regular sampler keeps exact degrees and simplicity") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{12, 3}, {20, 6}, {15, 4}, {9, 2}}) {
    auto g = sample_regular(n, d, 42);
    CHECK(g.edge_count() == static_cast<std::size_t>(n) * d / 2);
    for (int v = 0; v < n; ++v) CHECK(g.degree(v) == d);
    std::set<std::pair<int, int>> dedup(g.edges.begin(), g.edges.end());
    CHECK(dedup.size() == g.edge_count());  // no parallel edges
    for (auto [a, b] : g.edges) CHECK(a != b);
  }
}

TEST_CASE("regular sampler rejects odd n*d") {
  CHECK_THROWS(sample_regular(5, 3, 0));
  CHECK_THROWS(sample_regular(7, 1, 0));
}

TEST_CASE("enumerate_regular counts") {
  CHECK(enumerate_regular(4, 3).size() == 1);
  // 2-regular graphs on 6 labeled vertices: two triangles (C(6,3)/2 = 10)
  // plus 6-cycles (5!/2 = 60)
  CHECK(enumerate_regular(6, 2).size() == 70);
  CHECK(enumerate_regular(5, 3).empty());  // odd n*d
  for (const auto& g : enumerate_regular(6, 2))
    for (int v = 0; v < 6; ++v) CHECK(g.degree(v) == 2);
}

TEST_CASE("switch chain approaches the uniform cycle-type distribution at n=8 d=2") {
  // exact counts by cycle type: [8]: 2520, [5,3]: 672, [4,4]: 315 (total 3507)
  auto all = enumerate_regular(8, 2);
  REQUIRE(all.size() == 3507);
  auto type_of = [](const GraphSample& g) {
    std::vector<int> comp(8, -1);
    std::vector<std::vector<int>> adj(8);
    for (auto [a, b] : g.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<int> sizes;
    for (int v = 0; v < 8; ++v) {
      if (comp[v] >= 0) continue;
      int size = 0;
      std::vector<int> stack{v};
      comp[v] = v;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        ++size;
        for (int y : adj[x])
          if (comp[y] < 0) {
            comp[y] = v;
            stack.push_back(y);
          }
      }
      sizes.push_back(size);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  };
  std::map<std::vector<int>, int> exact;
  for (const auto& g : all) exact[type_of(g)]++;
  REQUIRE(exact.size() == 3);

  const int trials = 2000;
  std::map<std::vector<int>, int> observed;
  for (int t = 0; t < trials; ++t) observed[type_of(sample_regular(8, 2, 500 + t))]++;
  for (auto& [type, cnt] : exact) {
    double p = static_cast<double>(cnt) / all.size();
    double sigma = std::sqrt(p * (1 - p) * trials);
    CHECK(std::abs(observed[type] - p * trials) <= 5 * sigma);
  }
}

TEST_CASE("regular edge marginal matches d/(n-1)") {
  const int n = 8, d = 2, trials = 10000;
  int present = 0;
  for (int t = 0; t < trials; ++t)
    if (sample_regular(n, d, 100000 + t).has_edge(0, 1)) ++present;
  double p = static_cast<double>(d) / (n - 1);
  double sigma = std::sqrt(p * (1 - p) * trials);
  CHECK(std::abs(present - p * trials) <= 4 * sigma);
}

TEST_CASE("chi values and chi_set") {
  GraphSample g = sample_er(8, 2, 3);  // p = 1/4
  int i = -1, j = -1, a = -1, b = -1;
  // find one present and one absent pair
  for (int x = 0; x < 8 && i < 0; ++x)
    for (int y = x + 1; y < 8 && i < 0; ++y)
      if (g.has_edge(x, y)) i = x, j = y;
  for (int x = 0; x < 8 && a < 0; ++x)
    for (int y = x + 1; y < 8 && a < 0; ++y)
      if (!g.has_edge(x, y)) a = x, b = y;
  REQUIRE(i >= 0);
  REQUIRE(a >= 0);
  CHECK(chi(g, i, j) == doctest::Approx(std::sqrt(3.0)));
  CHECK(chi(g, a, b) == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(chi_set(g, {}) == 1.0);
  CHECK(chi_set(g, {{i, j}, {a, b}}) ==
        doctest::Approx(chi(g, i, j) * chi(g, a, b)));
  CHECK_THROWS(chi(g, 3, 3));
}

TEST_CASE("exact er oracle: characters are orthonormal") {
  const int n = 4;
  const double p = 0.3;
  auto e1 = exact_expectation_er(n, p, [](const GraphSample& g) { return chi(g, 0, 1); });
  CHECK(std::abs(e1) <= 1e-12);
  auto e2 = exact_expectation_er(
      n, p, [](const GraphSample& g) { return chi(g, 0, 1) * chi(g, 0, 1); });
  CHECK(e2 == doctest::Approx(1.0).epsilon(1e-12));
  auto e3 = exact_expectation_er(n, p, [](const GraphSample& g) {
    return chi(g, 0, 1) * chi(g, 2, 3);
  });
  CHECK(std::abs(e3) <= 1e-12);
  auto e4 = exact_expectation_er(n, p, [](const GraphSample& g) {
    return chi(g, 0, 1) * chi(g, 1, 2) * chi(g, 0, 1) * chi(g, 1, 2);
  });
  CHECK(e4 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regular ensemble: characters are correlated") {
  const int n = 6, d = 2;
  const double p = static_cast<double>(d) / n;
  double e_chi = exact_expectation_regular(n, d, [](const GraphSample& g) {
    return chi(g, 0, 1);
  });
  double predicted =
      (1.0 / std::sqrt(p * (1 - p))) * (static_cast<double>(d) / (n - 1) - p);
  CHECK(e_chi == doctest::Approx(predicted).epsilon(1e-12));
  double cross = exact_expectation_regular(n, d, [](const GraphSample& g) {
    return chi(g, 0, 1) * chi(g, 2, 3);
  });
  CHECK(std::abs(cross) > 0.01);
}

TEST_CASE("graph serialization round-trips") {
  auto g = sample_regular(10, 3, 77);
  auto back = parse_graph(serialize_graph(g));
  CHECK(back.n == g.n);
  CHECK(back.d == g.d);
  CHECK(back.model == g.model);
  CHECK(back.seed == g.seed);
  CHECK(back.edges == g.edges);
  CHECK(back.has_edge(g.edges[0].first, g.edges[0].second));
}
