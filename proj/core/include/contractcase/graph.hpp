#pragma once

#include <cstddef>
#include <vector>

namespace contractcase {

using Adjacency = std::vector<std::vector<std::size_t>>;

struct Condensation {
  /// Components in dependency order: if u -> v and they lie in different
  /// components, v's component comes first. Members of each component are
  /// sorted ascending.
  std::vector<std::vector<std::size_t>> components;
  /// Component index per vertex.
  std::vector<std::size_t> component_of;

  /// True when the component has more than one member or a self-loop.
  bool is_cyclic(const Adjacency& graph, std::size_t component) const;
};

/// Tarjan's algorithm, iterative. Deterministic for a given adjacency list.
Condensation strongly_connected_components(const Adjacency& graph);

}  // namespace contractcase
