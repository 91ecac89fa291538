#pragma once

#include <array>
#include <string>
#include <vector>

#include "rd/state.hpp"

namespace rd {

/// Conforming simplex mesh: intervals in 1D, triangles in 2D.
/// Interior-edge adjacency and boundary tagging are built by finalize().
struct Mesh {
  int dim = 1;
  std::vector<std::array<double, 2>> verts;  // y = 0 in 1D
  std::vector<std::array<int, 3>> elems;     // 1D: {v0, v1, -1}

  struct BFace {
    std::array<int, 2> v{-1, -1};  // 1D: {v0, -1}
    int elem = -1;
    int local_face = -1;
    int tag = -1;
  };
  std::vector<BFace> bfaces;
  std::vector<std::string> tags;

  struct Edge {
    std::array<int, 2> v{-1, -1};
    int left = -1, right = -1;        // element ids
    int face_left = -1, face_right = -1;
    double h = 0.0;                   // length scale used by the jump term
    std::array<double, 2> normal{0, 0};  // unit, oriented left -> right
  };
  std::vector<Edge> edges;  // interior edges only

  int n_elems() const { return static_cast<int>(elems.size()); }
  int n_verts() const { return static_cast<int>(verts.size()); }
  int nvert_per_elem() const { return dim + 1; }

  int tag_id(const std::string& name);
  int find_tag(const std::string& name) const;  // -1 if absent

  double elem_measure(int e) const;
  double elem_longest_edge(int e) const;
  double total_measure() const;

  /// Local face f of a triangle (v0,v1,v2): f0=(v0,v1), f1=(v1,v2), f2=(v2,v0).
  /// 1D: face 0 = left vertex, face 1 = right vertex.
  std::array<int, 2> face_verts(int e, int f) const;

  /// Build interior edges, check conformity and positive measures. Throws MeshError.
  void finalize();
};

enum class RectPattern { fixed, alternating };

Mesh generate_interval_mesh(double a, double b, int n_cells);

/// Rectangle [x0,x1]x[y0,y1] split into nx*ny quads, each cut into two
/// triangles. `jitter` (fraction of local h) displaces interior vertices
/// deterministically to produce an irregular mesh.
Mesh generate_rect_triangulation(double x0, double x1, double y0, double y1, int nx, int ny,
                                 RectPattern pattern = RectPattern::alternating,
                                 double jitter = 0.0);

/// Mach-3 channel with a forward-facing step: [0,3]x[0,1] minus [0.6,3]x[0,0.2].
/// nx, ny discretize the full rectangle; the step must align with the grid.
/// Tags: inflow, outflow, wall.
Mesh generate_step_mesh(int nx, int ny);

/// Double Mach reflection domain [0,4]x[0,1]. Tags: inflow (left and the
/// bottom strip x < 1/6), wall (bottom x >= 1/6), top, outflow.
Mesh generate_dmr_mesh(int nx, int ny);

/// Polar triangulation of a disk: a center fan plus n_rings-1 quad rings.
/// Element count = n_theta * (2*n_rings - 1). Boundary tag: farfield.
Mesh generate_disk_mesh(double radius, int n_theta, int n_rings);

/// Gmsh MSH 2.2 ASCII reader (line + triangle elements, physical names as
/// boundary tags). Unreferenced nodes are dropped.
Mesh read_gmsh_ascii(const std::string& path);

void write_gmsh_ascii(const Mesh& mesh, const std::string& path);

}  // namespace rd
