#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gml {

inline constexpr int kDefaultVertexCap = 12;

/// A shape: a small (multi)graph together with two ordered boundary tuples.
/// Vertex ids are dense integers 0..num_vertices-1. Edges are unordered pairs
/// stored as (lo, hi); parallel edges are repeated entries.
struct Shape {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> left;   // U: left boundary tuple
  std::vector<int> right;  // V: right boundary tuple

  bool operator==(const Shape&) const = default;

  int edge_count() const { return static_cast<int>(edges.size()); }
  std::vector<int> boundary_union() const;
  std::vector<int> boundary_intersection() const;  // by vertex id, not position
  std::vector<int> middle_vertices() const;
  bool has_multiedges() const;
  /// Distinct simple edges (multiplicity collapsed), sorted.
  std::vector<std::pair<int, int>> simple_edges() const;
};

/// Normalizes edge storage: each pair as (lo, hi), edge list sorted.
Shape make_shape(int num_vertices, std::vector<std::pair<int, int>> edges,
                 std::vector<int> left, std::vector<int> right);

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationResult validate(const Shape& s, int vertex_cap = kDefaultVertexCap);
void require_valid(const Shape& s, int vertex_cap = kDefaultVertexCap);

Shape transpose(const Shape& s);

/// True iff every path from a U-vertex to a V-vertex meets `blocked`
/// (a vertex in both boundaries must itself be blocked).
bool is_separator(const Shape& s, const std::vector<int>& blocked);

/// All separators, each sorted ascending; list ordered by size then lexicographically.
std::vector<std::vector<int>> enumerate_separators(const Shape& s);

struct ComponentInfo {
  std::vector<int> vertices;   // sorted
  int simple_edge_count = 0;   // parallel edges collapsed
  int total_multiplicity = 0;  // with multiplicity
  bool floating = false;       // no path to U ∪ V
  bool tree_like = false;      // |V(C)| == simple_edge_count + 1
  bool touches_set = false;    // filled by component_report_relative
};

struct ComponentReport {
  std::vector<ComponentInfo> components;
  std::vector<int> isolated_vertices;  // middle vertices with no incident edge
  bool has_multiedges = false;
};

ComponentReport component_report(const Shape& s);
/// Same, with ComponentInfo::touches_set = (component ∩ rel) != ∅.
ComponentReport component_report_relative(const Shape& s, const std::vector<int>& rel);

/// Number of vertex permutations fixing U and V pointwise and preserving the
/// edge multiset. Exhaustive over middle-vertex permutations.
long long automorphism_count(const Shape& s, int vertex_cap = kDefaultVertexCap);

/// Textual shape record (JSON with fields vertices/edges/U/V).
std::string serialize_shape(const Shape& s);
Shape parse_shape(const std::string& text);
Shape load_shape_file(const std::string& path);
void save_shape_file(const Shape& s, const std::string& path);

}  // namespace gml
