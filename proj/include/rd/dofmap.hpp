#pragma once

#include <vector>

#include "rd/basis.hpp"
#include "rd/mesh.hpp"

namespace rd {

/// Global continuous numbering of Bernstein control points: vertex dofs first,
/// then edge dofs (edges sorted by their vertex pair, interior nodes ordered
/// from the smaller to the larger vertex id), then per-element interior dofs.
struct DofMap {
  int degree = 1;
  int dim = 1;
  int nloc = 2;
  long n_dofs = 0;
  bool periodic = false;
  std::vector<int> elem_dofs;                 // n_elems * nloc
  std::vector<std::array<double, 2>> coords;  // dof locations

  const int* dofs(int e) const { return &elem_dofs[static_cast<size_t>(e) * nloc]; }
};

DofMap build_dof_map(const Mesh& mesh, int degree, bool periodic = false);

}  // namespace rd
