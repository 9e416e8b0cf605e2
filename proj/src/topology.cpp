#include "mcf/topology.hpp"

#include <algorithm>
#include <map>

namespace mcf {

Adjacency build_adjacency(const DiscreteImmersion& imm) {
  Adjacency adj;
  const int V = imm.num_vertices();
  const int C = imm.num_cells();
  const int arity = imm.intrinsic_dim + 1;
  adj.neighbors.resize(V);
  adj.vertex_cells.resize(V);
  adj.boundary_vertex.assign(V, 0);

  std::map<std::pair<int, int>, int> edge_count;
  for (int c = 0; c < C; ++c) {
    for (int a = 0; a < arity; ++a) adj.vertex_cells[imm.cells(c, a)].push_back(c);
    if (imm.intrinsic_dim == 1) {
      int i = imm.cells(c, 0), j = imm.cells(c, 1);
      ++edge_count[{std::min(i, j), std::max(i, j)}];
    } else {
      for (int a = 0; a < 3; ++a) {
        int i = imm.cells(c, a), j = imm.cells(c, (a + 1) % 3);
        ++edge_count[{std::min(i, j), std::max(i, j)}];
      }
    }
  }

  adj.edges.reserve(edge_count.size());
  for (const auto& [e, count] : edge_count) {
    adj.edges.push_back({e.first, e.second});
    adj.neighbors[e.first].push_back(e.second);
    adj.neighbors[e.second].push_back(e.first);
    const int expected = imm.intrinsic_dim == 1 ? 1 : 2;
    if (count < expected) {
      adj.boundary_vertex[e.first] = adj.boundary_vertex[e.second] = 1;
      adj.has_boundary = true;
    }
  }
  if (imm.intrinsic_dim == 1) {
    for (int v = 0; v < V; ++v)
      if (adj.neighbors[v].size() < 2) {
        adj.boundary_vertex[v] = 1;
        adj.has_boundary = true;
      }
  }
  for (auto& nbrs : adj.neighbors) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return adj;
}

} // namespace mcf
