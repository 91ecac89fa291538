#include "rd/dofmap.hpp"

#include <algorithm>
#include <map>

namespace rd {

DofMap build_dof_map(const Mesh& mesh, int degree, bool periodic) {
  if (degree < 1 || degree > 3) throw ConfigError("degree must be 1, 2 or 3");
  if (periodic && mesh.dim != 1) throw ConfigError("periodic dof maps are 1D only");

  DofMap dm;
  dm.degree = degree;
  dm.dim = mesh.dim;
  dm.nloc = n_local_dofs(mesh.dim, degree);
  dm.periodic = periodic;
  dm.elem_dofs.assign(static_cast<size_t>(mesh.n_elems()) * dm.nloc, -1);

  // vertex dofs
  std::vector<int> vdof(mesh.n_verts());
  int next = 0;
  for (int v = 0; v < mesh.n_verts(); ++v) vdof[v] = next++;
  if (periodic) {
    // identify the right end with the left end
    int vl = -1, vr = -1;
    for (const auto& bf : mesh.bfaces) {
      if (mesh.tags[bf.tag] == "left") vl = bf.v[0];
      if (mesh.tags[bf.tag] == "right") vr = bf.v[0];
    }
    if (vl < 0 || vr < 0) throw ConfigError("periodic dof map needs left/right tags");
    vdof[vr] = vdof[vl];
    // compact numbering
    std::vector<int> remap(next, -1);
    int c = 0;
    for (int v = 0; v < mesh.n_verts(); ++v)
      if (remap[vdof[v]] < 0) remap[vdof[v]] = c++;
    for (int v = 0; v < mesh.n_verts(); ++v) vdof[v] = remap[vdof[v]];
    next = c;
  }

  dm.coords.resize(next);
  for (int v = 0; v < mesh.n_verts(); ++v) dm.coords[vdof[v]] = mesh.verts[v];

  const int n_edge_dofs = degree - 1;  // per mesh edge (1D: interior nodes per element)
  const auto* nodes = node_bary(mesh.dim, degree);

  auto node_xy = [&](int e, int i) -> std::array<double, 2> {
    const auto& el = mesh.elems[e];
    const auto& b = nodes[i];
    std::array<double, 2> p{0, 0};
    for (int k = 0; k <= mesh.dim; ++k) {
      p[0] += b[k] * mesh.verts[el[k]][0];
      p[1] += b[k] * mesh.verts[el[k]][1];
    }
    return p;
  };

  if (mesh.dim == 1) {
    for (int e = 0; e < mesh.n_elems(); ++e) {
      int* d = &dm.elem_dofs[static_cast<size_t>(e) * dm.nloc];
      d[0] = vdof[mesh.elems[e][0]];
      d[1] = vdof[mesh.elems[e][1]];
      for (int i = 0; i < n_edge_dofs; ++i) {
        d[2 + i] = next++;
        dm.coords.push_back(node_xy(e, 2 + i));
      }
    }
    dm.n_dofs = next;
    return dm;
  }

  // 2D: number mesh edges deterministically by sorted vertex pair
  std::map<std::pair<int, int>, int> edge_base;
  std::vector<std::pair<int, int>> edge_keys;
  for (int e = 0; e < mesh.n_elems(); ++e)
    for (int f = 0; f < 3; ++f) {
      auto fv = mesh.face_verts(e, f);
      edge_keys.push_back({std::min(fv[0], fv[1]), std::max(fv[0], fv[1])});
    }
  std::sort(edge_keys.begin(), edge_keys.end());
  edge_keys.erase(std::unique(edge_keys.begin(), edge_keys.end()), edge_keys.end());
  for (auto& k : edge_keys) {
    edge_base[k] = next;
    next += n_edge_dofs;
  }
  dm.coords.resize(next);

  // local edge dof slots per face, ordered from the face's first to second vertex
  // (B2: one dof per edge; B3: two)
  static constexpr int edge_slots_b2[3][2] = {{3, -1}, {4, -1}, {5, -1}};
  static constexpr int edge_slots_b3[3][2] = {{3, 4}, {5, 6}, {7, 8}};

  for (int e = 0; e < mesh.n_elems(); ++e) {
    int* d = &dm.elem_dofs[static_cast<size_t>(e) * dm.nloc];
    const auto& el = mesh.elems[e];
    for (int k = 0; k < 3; ++k) d[k] = vdof[el[k]];
    for (int f = 0; f < 3 && degree > 1; ++f) {
      auto fv = mesh.face_verts(e, f);
      std::pair<int, int> key{std::min(fv[0], fv[1]), std::max(fv[0], fv[1])};
      const int base = edge_base[key];
      const bool fwd = fv[0] < fv[1];  // local order vs global (min->max) order
      for (int s = 0; s < n_edge_dofs; ++s) {
        const int slot = (degree == 2) ? edge_slots_b2[f][s] : edge_slots_b3[f][s];
        const int g = base + (fwd ? s : n_edge_dofs - 1 - s);
        d[slot] = g;
        dm.coords[g] = node_xy(e, slot);
      }
    }
    if (degree == 3) {
      d[9] = next++;
      dm.coords.push_back(node_xy(e, 9));
    }
  }
  dm.n_dofs = next;
  return dm;
}

}  // namespace rd
