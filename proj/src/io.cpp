#include "rd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>

namespace rd {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_solution_csv(const std::string& path, const std::vector<std::array<double, 2>>& points,
                        const std::vector<std::string>& vars,
                        const std::vector<std::vector<double>>& vals, bool with_y) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  std::vector<size_t> order(points.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (points[a][0] != points[b][0]) return points[a][0] < points[b][0];
    return points[a][1] < points[b][1];
  });
  out << "x";
  if (with_y) out << ",y";
  for (const auto& v : vars) out << "," << v;
  out << "\n";
  for (size_t i : order) {
    out << format_double(points[i][0]);
    if (with_y) out << "," << format_double(points[i][1]);
    for (const auto& col : vals) out << "," << format_double(col[i]);
    out << "\n";
  }
  if (!out) throw ConfigError("write failed: " + path);
}

void write_solution_vtk(const std::string& path, const Mesh& mesh, const DofMap& dm,
                        const std::vector<std::array<double, 2>>& points,
                        const std::vector<std::string>& vars,
                        const std::vector<std::vector<double>>& vals) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  const auto sc = make_subcells(mesh.dim, dm.degree);
  const long ncell = static_cast<long>(mesh.n_elems()) * sc.cells.size();
  out << "# vtk DataFile Version 3.0\nrdsolver solution\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << points.size() << " double\n";
  for (const auto& p : points)
    out << format_double(p[0]) << " " << format_double(p[1]) << " 0\n";
  const int nv = mesh.dim + 1;
  out << "CELLS " << ncell << " " << ncell * (nv + 1) << "\n";
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const int* gd = dm.dofs(e);
    for (const auto& cell : sc.cells) {
      out << nv;
      for (int k = 0; k < nv; ++k) out << " " << gd[cell.v[k]];
      out << "\n";
    }
  }
  out << "CELL_TYPES " << ncell << "\n";
  for (long i = 0; i < ncell; ++i) out << (mesh.dim == 1 ? 3 : 5) << "\n";
  out << "POINT_DATA " << points.size() << "\n";
  for (size_t v = 0; v < vars.size(); ++v) {
    out << "SCALARS " << vars[v] << " double 1\nLOOKUP_TABLE default\n";
    for (double x : vals[v]) out << format_double(x) << "\n";
  }
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace rd
