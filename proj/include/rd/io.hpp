#pragma once

#include <string>
#include <vector>

#include "rd/dofmap.hpp"
#include "rd/mesh.hpp"
#include "rd/subcell.hpp"

namespace rd {

/// Shortest-round-trip decimal formatting (17 significant digits), locale-free.
std::string format_double(double v);

/// 1D solution as CSV, one row per dof sorted by x. `vars` names the value
/// columns (e.g. rho,u,p), `vals` holds one row per dof in dof order.
void write_solution_csv(const std::string& path, const std::vector<std::array<double, 2>>& points,
                        const std::vector<std::string>& vars,
                        const std::vector<std::vector<double>>& vals, bool with_y = false);

/// Legacy ASCII VTK (UNSTRUCTURED_GRID): dof points, degree^2 linear
/// sub-triangles per element, one scalar field per variable.
void write_solution_vtk(const std::string& path, const Mesh& mesh, const DofMap& dm,
                        const std::vector<std::array<double, 2>>& points,
                        const std::vector<std::string>& vars,
                        const std::vector<std::vector<double>>& vals);

}  // namespace rd
