#include "gml/shape.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gml {

namespace {

std::vector<std::vector<int>> simple_adjacency(const Shape& s) {
  std::vector<std::vector<int>> adj(s.num_vertices);
  for (auto [a, b] : s.simple_edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

// Connected components of the subgraph induced by vertices with `in_scope`,
// walking simple edges only.
std::vector<int> scoped_components(const Shape& s, const std::vector<bool>& in_scope) {
  auto adj = simple_adjacency(s);
  std::vector<int> comp(s.num_vertices, -1);
  int next = 0;
  for (int v = 0; v < s.num_vertices; ++v) {
    if (!in_scope[v] || comp[v] >= 0) continue;
    comp[v] = next;
    std::vector<int> stack{v};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x]) {
        if (in_scope[y] && comp[y] < 0) {
          comp[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace

std::vector<int> Shape::boundary_union() const {
  std::vector<int> u = left;
  u.insert(u.end(), right.begin(), right.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

std::vector<int> Shape::boundary_intersection() const {
  std::vector<int> out;
  for (int v : left)
    if (std::find(right.begin(), right.end(), v) != right.end()) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Shape::middle_vertices() const {
  std::vector<bool> b(num_vertices, false);
  for (int v : boundary_union())
    if (v >= 0 && v < num_vertices) b[v] = true;
  std::vector<int> out;
  for (int v = 0; v < num_vertices; ++v)
    if (!b[v]) out.push_back(v);
  return out;
}

bool Shape::has_multiedges() const {
  for (size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1]) return true;
  return false;
}

std::vector<std::pair<int, int>> Shape::simple_edges() const {
  auto out = edges;
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Shape make_shape(int num_vertices, std::vector<std::pair<int, int>> edges,
                 std::vector<int> left, std::vector<int> right) {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  return Shape{num_vertices, std::move(edges), std::move(left), std::move(right)};
}

ValidationResult validate(const Shape& s, int vertex_cap) {
  ValidationResult r;
  if (s.num_vertices < 0) r.violations.push_back("negative vertex count");
  if (s.num_vertices > vertex_cap)
    r.violations.push_back("vertex count exceeds cap " + std::to_string(vertex_cap));
  auto check_tuple = [&](const std::vector<int>& t, const char* name) {
    std::set<int> seen;
    for (int v : t) {
      if (v < 0 || v >= s.num_vertices)
        r.violations.push_back(std::string(name) + ": boundary id unknown");
      if (!seen.insert(v).second)
        r.violations.push_back(std::string(name) + ": duplicate boundary id");
    }
  };
  check_tuple(s.left, "U");
  check_tuple(s.right, "V");
  for (auto [a, b] : s.edges) {
    if (a == b) r.violations.push_back("self-loop");
    if (a < 0 || a >= s.num_vertices || b < 0 || b >= s.num_vertices)
      r.violations.push_back("edge endpoint unknown");
  }
  return r;
}

void require_valid(const Shape& s, int vertex_cap) {
  auto r = validate(s, vertex_cap);
  if (!r.ok()) {
    std::string msg = "invalid shape:";
    for (const auto& v : r.violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }
}

Shape transpose(const Shape& s) {
  Shape t = s;
  std::swap(t.left, t.right);
  return t;
}

bool is_separator(const Shape& s, const std::vector<int>& blocked) {
  std::vector<bool> blk(s.num_vertices, false);
  for (int v : blocked) blk[v] = true;
  std::vector<bool> in_right(s.num_vertices, false);
  for (int v : s.right) in_right[v] = true;

  auto adj = simple_adjacency(s);
  std::vector<bool> seen(s.num_vertices, false);
  std::vector<int> stack;
  for (int u : s.left) {
    if (blk[u]) continue;
    if (in_right[u]) return false;  // trivial path through U ∩ V
    if (!seen[u]) {
      seen[u] = true;
      stack.push_back(u);
    }
  }
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x]) {
      if (blk[y] || seen[y]) continue;
      if (in_right[y]) return false;
      seen[y] = true;
      stack.push_back(y);
    }
  }
  return true;
}

std::vector<std::vector<int>> enumerate_separators(const Shape& s) {
  require_valid(s);
  const int n = s.num_vertices;
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> sub;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) sub.push_back(v);
    if (is_separator(s, sub)) out.push_back(std::move(sub));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

ComponentReport component_report(const Shape& s) {
  return component_report_relative(s, {});
}

ComponentReport component_report_relative(const Shape& s, const std::vector<int>& rel) {
  require_valid(s);
  ComponentReport rep;
  rep.has_multiedges = s.has_multiedges();

  std::vector<bool> touched(s.num_vertices, false);
  for (auto [a, b] : s.edges) touched[a] = touched[b] = true;
  auto comp = scoped_components(s, touched);
  int num_comps = 0;
  for (int v = 0; v < s.num_vertices; ++v) num_comps = std::max(num_comps, comp[v] + 1);

  std::vector<bool> boundary(s.num_vertices, false);
  for (int v : s.boundary_union()) boundary[v] = true;
  std::vector<bool> in_rel(s.num_vertices, false);
  for (int v : rel) in_rel[v] = true;

  rep.components.resize(num_comps);
  for (int v = 0; v < s.num_vertices; ++v) {
    if (comp[v] < 0) continue;
    auto& c = rep.components[comp[v]];
    c.vertices.push_back(v);
    if (boundary[v]) c.floating = false;
    if (in_rel[v]) c.touches_set = true;
  }
  for (auto& c : rep.components) {
    c.floating = true;
    for (int v : c.vertices)
      if (boundary[v]) c.floating = false;
  }
  auto simple = s.simple_edges();
  for (auto [a, b] : simple) rep.components[comp[a]].simple_edge_count++;
  for (auto [a, b] : s.edges) rep.components[comp[a]].total_multiplicity++;
  for (auto& c : rep.components)
    c.tree_like = (static_cast<int>(c.vertices.size()) == c.simple_edge_count + 1);

  for (int v = 0; v < s.num_vertices; ++v)
    if (!touched[v] && !boundary[v]) rep.isolated_vertices.push_back(v);
  return rep;
}

long long automorphism_count(const Shape& s, int vertex_cap) {
  require_valid(s, vertex_cap);
  auto middle = s.middle_vertices();
  if (middle.size() > 10)
    throw std::runtime_error("automorphism enumeration infeasible: " +
                             std::to_string(middle.size()) + " middle vertices");
  std::vector<int> perm(s.num_vertices);
  std::iota(perm.begin(), perm.end(), 0);
  auto canon = s.edges;  // already normalized by make_shape convention
  std::sort(canon.begin(), canon.end());

  std::vector<int> idx(middle.size());
  std::iota(idx.begin(), idx.end(), 0);
  long long count = 0;
  std::vector<int> order = idx;
  do {
    for (size_t i = 0; i < middle.size(); ++i) perm[middle[i]] = middle[order[i]];
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(s.edges.size());
    for (auto [a, b] : s.edges) {
      int x = perm[a], y = perm[b];
      mapped.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped == canon) ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

std::string serialize_shape(const Shape& s) {
  nlohmann::json j;
  j["vertices"] = s.num_vertices;
  auto canon = make_shape(s.num_vertices, s.edges, s.left, s.right);
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : canon.edges) edges.push_back({a, b});
  j["edges"] = edges;
  j["U"] = s.left;
  j["V"] = s.right;
  return j.dump();
}

Shape parse_shape(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("bad edge record");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return make_shape(j.at("vertices").get<int>(), std::move(edges),
                    j.at("U").get<std::vector<int>>(), j.at("V").get<std::vector<int>>());
}

Shape load_shape_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open shape file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_shape(ss.str());
}

void save_shape_file(const Shape& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write shape file: " + path);
  out << serialize_shape(s) << "\n";
}

}  // namespace gml
