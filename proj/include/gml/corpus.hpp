#pragma once

#include <string>
#include <vector>

#include "gml/shape.hpp"

namespace gml {

struct NamedShape {
  std::string name;
  Shape shape;
};

/// Built-in shapes: identity, line, z_shape, floating_edge, path2_scalar,
/// star3, triangle_middle, floating_triangle, isolated_middle, float_edge_line.
const std::vector<NamedShape>& corpus();
const Shape& corpus_shape(const std::string& name);
bool corpus_has(const std::string& name);

/// Load from a file path, or fall back to a corpus name.
Shape resolve_shape(const std::string& path_or_name);

}  // namespace gml
