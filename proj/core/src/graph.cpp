#include "contractcase/graph.hpp"

#include <algorithm>
#include <limits>

namespace contractcase {

bool Condensation::is_cyclic(const Adjacency& graph, std::size_t component) const {
  const auto& members = components.at(component);
  if (members.size() > 1) return true;
  const auto v = members.front();
  return std::find(graph[v].begin(), graph[v].end(), v) != graph[v].end();
}

Condensation strongly_connected_components(const Adjacency& graph) {
  constexpr auto kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = graph.size();

  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;

  Condensation out;
  out.component_of.assign(n, 0);

  struct Frame {
    std::size_t vertex;
    std::size_t next_edge;
  };
  std::vector<Frame> call_stack;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call_stack.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call_stack.empty()) {
      auto& frame = call_stack.back();
      const auto v = frame.vertex;
      if (frame.next_edge < graph[v].size()) {
        const auto w = graph[v][frame.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }

      if (lowlink[v] == index[v]) {
        std::vector<std::size_t> members;
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        for (auto m : members) out.component_of[m] = out.components.size();
        out.components.push_back(std::move(members));
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const auto parent = call_stack.back().vertex;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
  return out;
}

}  // namespace contractcase
