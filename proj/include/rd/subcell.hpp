#pragma once

#include <array>
#include <vector>

#include "rd/basis.hpp"

namespace rd {

/// Sub-cell decomposition of the reference element into simplices whose
/// vertices are basis nodes, with the weights that make the divergence of the
/// degree-k flux interpolant an exact weighted sum of per-sub-cell first-order
/// residuals (nodal point values, piecewise-linear flux).
///
/// Intervals split into k equal sub-intervals with unit weights (a telescopic
/// sum). Triangles: B2 uses the midpoint 4-split with weights (2/3, 2/3, 2/3, 2);
/// B3 uses the uniform 9-split with weight 3/4 on the six upward and 3/2 on the
/// three inverted sub-triangles.
struct SubcellRef {
  struct Cell {
    std::array<int, 3> v{-1, -1, -1};  // local dof indices (2 in 1D)
    double weight = 1.0;
  };
  int dim = 1;
  int nverts = 2;  // vertices per sub-cell
  std::vector<Cell> cells;
};

inline SubcellRef make_subcells(int dim, int degree) {
  SubcellRef sc;
  sc.dim = dim;
  sc.nverts = dim + 1;
  if (dim == 1) {
    // node order: left, right, interiors ascending
    switch (degree) {
      case 1:
        sc.cells = {{{0, 1, -1}, 1.0}};
        break;
      case 2:
        sc.cells = {{{0, 2, -1}, 1.0}, {{2, 1, -1}, 1.0}};
        break;
      case 3:
        sc.cells = {{{0, 2, -1}, 1.0}, {{2, 3, -1}, 1.0}, {{3, 1, -1}, 1.0}};
        break;
      default:
        throw ConfigError("subcells: unsupported degree");
    }
    return sc;
  }
  switch (degree) {
    case 1:
      sc.cells = {{{0, 1, 2}, 1.0}};
      break;
    case 2:
      sc.cells = {{{0, 3, 5}, 2. / 3},
                  {{1, 4, 3}, 2. / 3},
                  {{2, 5, 4}, 2. / 3},
                  {{3, 4, 5}, 2.0}};
      break;
    case 3:
      sc.cells = {{{0, 3, 8}, 0.75}, {{8, 9, 7}, 0.75}, {{7, 6, 2}, 0.75},
                  {{3, 4, 9}, 0.75}, {{9, 5, 6}, 0.75}, {{4, 1, 5}, 0.75},
                  {{3, 9, 8}, 1.5},  {{9, 6, 7}, 1.5},  {{4, 5, 9}, 1.5}};
      break;
    default:
      throw ConfigError("subcells: unsupported degree");
  }
  return sc;
}

}  // namespace rd
