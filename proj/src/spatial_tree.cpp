#include "condtree/spatial_tree.hpp"

namespace condtree {

Vertex companion_vertex(const Vertex& v0) {
  if (v0.is_root()) throw Error(ErrorCode::EmptyVertex, "companion of the root is undefined");
  std::vector<std::uint32_t> path{1};
  for (std::size_t i = v0.depth(); i > 1; --i) path.push_back(v0[i - 1]);
  return Vertex(std::move(path));
}

}  // namespace condtree
