#pragma once

#include <array>
#include <vector>

#include "mcf/immersion.hpp"

namespace mcf {

/// Combinatorial adjacency of an immersion, shared by the geometry kernel,
/// the semi-implicit solver and the embeddedness monitor.
struct Adjacency {
  std::vector<std::vector<int>> neighbors;    ///< sorted unique 1-ring
  std::vector<std::vector<int>> vertex_cells; ///< incident cell indices
  std::vector<std::array<int, 2>> edges;      ///< unique undirected edges (i < j)
  std::vector<char> boundary_vertex;          ///< on an open boundary
  bool has_boundary = false;
};

Adjacency build_adjacency(const DiscreteImmersion& imm);

} // namespace mcf
