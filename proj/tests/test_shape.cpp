#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "gml/corpus.hpp"
#include "gml/shape.hpp"

using namespace gml;

namespace {

// Independent separator oracle: exhaustive simple-path search.
bool separates_bruteforce(const Shape& s, const std::vector<int>& blocked) {
  std::set<int> blk(blocked.begin(), blocked.end());
  for (int u : s.left)
    for (int v : s.right)
      if (u == v && !blk.count(u)) return false;
  auto simple = s.simple_edges();
  std::vector<std::vector<int>> adj(s.num_vertices);
  for (auto [a, b] : simple) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::set<int> right(s.right.begin(), s.right.end());
  std::vector<bool> visited(s.num_vertices, false);
  bool found = false;
  auto dfs = [&](auto&& self, int v) -> void {
    if (found || blk.count(v)) return;
    if (right.count(v)) {
      found = true;
      return;
    }
    visited[v] = true;
    for (int w : adj[v])
      if (!visited[w]) self(self, w);
    visited[v] = false;
  };
  for (int u : s.left)
    if (!blk.count(u)) dfs(dfs, u);
  return !found;
}

Shape line() { return make_shape(2, {{0, 1}}, {0}, {1}); }

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate(line()).ok());

  Shape bad_boundary = make_shape(2, {{0, 1}}, {5}, {1});
  auto r1 = validate(bad_boundary);
  CHECK(!r1.ok());
  bool mentions_unknown = false;
  for (const auto& v : r1.violations)
    if (v.find("unknown") != std::string::npos) mentions_unknown = true;
  CHECK(mentions_unknown);

  Shape self_loop = make_shape(2, {{1, 1}}, {0}, {1});
  auto r2 = validate(self_loop);
  CHECK(!r2.ok());
  bool mentions_loop = false;
  for (const auto& v : r2.violations)
    if (v.find("self-loop") != std::string::npos) mentions_loop = true;
  CHECK(mentions_loop);

  Shape too_big = make_shape(13, {}, {}, {});
  CHECK(!validate(too_big).ok());
  CHECK(validate(too_big, 16).ok());
}

TEST_CASE("transpose flips boundaries only") {
  Shape l = line();
  Shape t = transpose(l);
  CHECK(t.left == std::vector<int>{1});
  CHECK(t.right == std::vector<int>{0});
  CHECK(t.edges == l.edges);
  CHECK(transpose(t) == l);

  const Shape& z = corpus_shape("z_shape");
  Shape zt = transpose(z);
  CHECK(zt.left == z.right);
  CHECK(zt.right == z.left);
}

TEST_CASE("separators of the line shape") {
  auto seps = enumerate_separators(line());
  std::vector<std::vector<int>> expect{{0}, {1}, {0, 1}};
  CHECK(seps == expect);
}

TEST_CASE("separators with a shared boundary vertex") {
  // U = V = (u) plus one middle vertex, no edges: every subset containing u
  Shape s = make_shape(2, {}, {0}, {0});
  auto seps = enumerate_separators(s);
  std::vector<std::vector<int>> expect{{0}, {0, 1}};
  CHECK(seps == expect);
}

TEST_CASE("separators of a scalar shape include the empty set") {
  Shape s = corpus_shape("floating_edge");
  auto seps = enumerate_separators(s);
  CHECK(seps.size() == 4);  // all subsets of {a, b}
  CHECK(seps.front().empty());
}

TEST_CASE("separator enumeration matches brute-force path checks") {
  for (const auto& ns : corpus()) {
    auto seps = enumerate_separators(ns.shape);
    std::set<std::vector<int>> got(seps.begin(), seps.end());
    int n = ns.shape.num_vertices;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> sub;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) sub.push_back(v);
      CHECK(got.count(sub) == static_cast<std::size_t>(separates_bruteforce(ns.shape, sub)));
    }
  }
}

TEST_CASE("empty separator iff no boundary path") {
  for (const auto& ns : corpus()) {
    auto seps = enumerate_separators(ns.shape);
    bool empty_in = !seps.empty() && seps.front().empty();
    CHECK(empty_in == separates_bruteforce(ns.shape, {}));
  }
}

TEST_CASE("separators are invariant under transpose") {
  for (const auto& ns : corpus()) {
    auto a = enumerate_separators(ns.shape);
    auto b = enumerate_separators(transpose(ns.shape));
    CHECK(a == b);
  }
}

TEST_CASE("component report: paper floating-edge figure") {
  const Shape& s = corpus_shape("float_edge_line");  // edge {0,1} on boundary, edge {2,3} apart
  auto rep = component_report(s);
  REQUIRE(rep.components.size() == 2);
  const ComponentInfo* floating = nullptr;
  for (const auto& c : rep.components)
    if (c.floating) floating = &c;
  REQUIRE(floating != nullptr);
  CHECK(floating->vertices == std::vector<int>{2, 3});
  CHECK(floating->tree_like);
  CHECK(rep.isolated_vertices.empty());
}

TEST_CASE("component report: isolated middle vertex is not floating") {
  const Shape& s = corpus_shape("isolated_middle");
  auto rep = component_report(s);
  CHECK(rep.isolated_vertices == std::vector<int>{2});
  for (const auto& c : rep.components) {
    CHECK(!c.floating);
    for (int v : c.vertices) CHECK(v != 2);
  }
}

TEST_CASE("component report: floating triangle is not tree-like") {
  const Shape& s = corpus_shape("floating_triangle");
  auto rep = component_report(s);
  const ComponentInfo* tri = nullptr;
  for (const auto& c : rep.components)
    if (c.vertices.size() == 3) tri = &c;
  REQUIRE(tri != nullptr);
  CHECK(tri->floating);
  CHECK(!tri->tree_like);
  CHECK(tri->simple_edge_count == 3);
}

TEST_CASE("relative report flags connectivity to a candidate separator") {
  const Shape& s = corpus_shape("float_edge_line");
  auto rep = component_report_relative(s, {2});
  for (const auto& c : rep.components) {
    bool has2 = std::find(c.vertices.begin(), c.vertices.end(), 2) != c.vertices.end();
    CHECK(c.touches_set == has2);
  }
}

TEST_CASE("multiplicities are collapsed for tree-likeness and flagged") {
  Shape multi = make_shape(3, {{0, 1}, {0, 1}, {1, 2}}, {}, {});
  auto rep = component_report(multi);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.has_multiedges);
  CHECK(rep.components[0].simple_edge_count == 2);
  CHECK(rep.components[0].total_multiplicity == 3);
  CHECK(rep.components[0].tree_like);  // path on the underlying simple graph
}

TEST_CASE("vertex trichotomy: component, isolated, or edge-free boundary") {
  for (const auto& ns : corpus()) {
    auto rep = component_report(ns.shape);
    auto bu = ns.shape.boundary_union();
    std::set<int> boundary(bu.begin(), bu.end());
    for (int v = 0; v < ns.shape.num_vertices; ++v) {
      int cover = 0;
      for (const auto& c : rep.components)
        if (std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end()) ++cover;
      bool isolated = std::find(rep.isolated_vertices.begin(), rep.isolated_vertices.end(), v) !=
                      rep.isolated_vertices.end();
      bool edge_free_boundary = boundary.count(v) && cover == 0;
      CHECK(cover + (isolated ? 1 : 0) + (edge_free_boundary ? 1 : 0) == 1);
    }
  }
}

TEST_CASE("automorphism counts") {
  CHECK(automorphism_count(line()) == 1);
  // star with center u = U = V and 3 middle leaves
  Shape star = make_shape(4, {{0, 1}, {0, 2}, {0, 3}}, {0}, {0});
  CHECK(automorphism_count(star) == 6);
  CHECK(automorphism_count(corpus_shape("floating_edge")) == 2);
  CHECK(automorphism_count(corpus_shape("z_shape")) == 1);
  CHECK(automorphism_count(corpus_shape("floating_triangle")) == 6);
}

TEST_CASE("automorphism count divides middle factorial") {
  for (const auto& ns : corpus()) {
    long long a = automorphism_count(ns.shape);
    long long f = 1;
    for (std::size_t i = 1; i <= ns.shape.middle_vertices().size(); ++i) f *= i;
    CHECK(f % a == 0);
  }
}

TEST_CASE("shape DSL round-trips") {
  for (const auto& ns : corpus()) {
    Shape back = parse_shape(serialize_shape(ns.shape));
    CHECK(back == ns.shape);
    CHECK(serialize_shape(back) == serialize_shape(ns.shape));
  }
  Shape z = parse_shape(R"({"vertices":5,"edges":[[1,0],[4,1],[2,4],[3,2]],"U":[0,1],"V":[2,3]})");
  CHECK(z == corpus_shape("z_shape"));
}

TEST_CASE("corpus carries the required shapes") {
  for (const char* name :
       {"identity", "line", "z_shape", "floating_edge", "path2_scalar", "star3",
        "triangle_middle", "floating_triangle", "isolated_middle"})
    CHECK(corpus_has(name));
  const Shape& z = corpus_shape("z_shape");
  CHECK(z.left.size() == 2);
  CHECK(z.right.size() == 2);
  const Shape& f = corpus_shape("floating_edge");
  CHECK(f.left.empty());
  CHECK(f.right.empty());
  for (const auto& ns : corpus()) CHECK(validate(ns.shape).ok());
}
