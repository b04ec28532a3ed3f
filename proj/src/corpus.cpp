#include "gml/corpus.hpp"

#include <filesystem>
#include <stdexcept>

namespace gml {

const std::vector<NamedShape>& corpus() {
  static const std::vector<NamedShape> shapes = [] {
    std::vector<NamedShape> c;
    // identity: n x n identity matrix
    c.push_back({"identity", make_shape(1, {}, {0}, {0})});
    // line: the p-biased adjacency matrix with zero diagonal
    c.push_back({"line", make_shape(2, {{0, 1}}, {0}, {1})});
    // z_shape: boundaries (a,b) and (c,d), one middle vertex t,
    // entry chi(ab) chi(bt) chi(tc) chi(cd)
    c.push_back({"z_shape", make_shape(5, {{0, 1}, {1, 4}, {4, 2}, {2, 3}}, {0, 1}, {2, 3})});
    // floating_edge: scalar shape, a single edge with empty boundaries
    c.push_back({"floating_edge", make_shape(2, {{0, 1}}, {}, {})});
    // path2_scalar: scalar wedge sum, the degree-1 distinguisher
    c.push_back({"path2_scalar", make_shape(3, {{0, 1}, {1, 2}}, {}, {})});
    // star3: 3-edge star, boundary on two leaves, center and third leaf middle
    c.push_back({"star3", make_shape(4, {{0, 2}, {1, 2}, {2, 3}}, {0}, {1})});
    // triangle_middle: u - a, triangle {a,b,c}, c - v
    c.push_back({"triangle_middle",
                 make_shape(5, {{0, 2}, {2, 3}, {3, 4}, {2, 4}, {4, 1}}, {0}, {1})});
    // floating_triangle: boundary edge plus a floating (non-tree) triangle
    c.push_back({"floating_triangle",
                 make_shape(5, {{0, 1}, {2, 3}, {3, 4}, {2, 4}}, {0}, {1})});
    // isolated_middle: boundary edge plus a degree-0 middle vertex
    c.push_back({"isolated_middle", make_shape(3, {{0, 1}}, {0}, {1})});
    // float_edge_line: boundary edge plus a floating (tree-like) edge
    c.push_back({"float_edge_line", make_shape(4, {{0, 1}, {2, 3}}, {0}, {1})});
    return c;
  }();
  return shapes;
}

const Shape& corpus_shape(const std::string& name) {
  for (const auto& ns : corpus())
    if (ns.name == name) return ns.shape;
  throw std::invalid_argument("unknown corpus shape: " + name);
}

bool corpus_has(const std::string& name) {
  for (const auto& ns : corpus())
    if (ns.name == name) return true;
  return false;
}

Shape resolve_shape(const std::string& path_or_name) {
  if (std::filesystem::exists(path_or_name)) return load_shape_file(path_or_name);
  if (corpus_has(path_or_name)) return corpus_shape(path_or_name);
  throw std::invalid_argument("shape not found as file or corpus name: " + path_or_name);
}

}  // namespace gml
