#include "rd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

namespace rd {

int Mesh::tag_id(const std::string& name) {
  for (size_t i = 0; i < tags.size(); ++i)
    if (tags[i] == name) return static_cast<int>(i);
  tags.push_back(name);
  return static_cast<int>(tags.size()) - 1;
}

int Mesh::find_tag(const std::string& name) const {
  for (size_t i = 0; i < tags.size(); ++i)
    if (tags[i] == name) return static_cast<int>(i);
  return -1;
}

double Mesh::elem_measure(int e) const {
  const auto& el = elems[e];
  if (dim == 1) return verts[el[1]][0] - verts[el[0]][0];
  const auto& a = verts[el[0]];
  const auto& b = verts[el[1]];
  const auto& c = verts[el[2]];
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

double Mesh::elem_longest_edge(int e) const {
  if (dim == 1) return elem_measure(e);
  double h = 0;
  for (int f = 0; f < 3; ++f) {
    auto fv = face_verts(e, f);
    h = std::max(h, std::hypot(verts[fv[1]][0] - verts[fv[0]][0],
                               verts[fv[1]][1] - verts[fv[0]][1]));
  }
  return h;
}

double Mesh::total_measure() const {
  double s = 0;
  for (int e = 0; e < n_elems(); ++e) s += elem_measure(e);
  return s;
}

std::array<int, 2> Mesh::face_verts(int e, int f) const {
  const auto& el = elems[e];
  if (dim == 1) return {el[f], -1};
  static constexpr int fv[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  return {el[fv[f][0]], el[fv[f][1]]};
}

void Mesh::finalize() {
  edges.clear();
  for (int e = 0; e < n_elems(); ++e) {
    const double m = elem_measure(e);
    if (!(m > 0.0))
      throw MeshError("element " + std::to_string(e) + " has non-positive measure " +
                      std::to_string(m));
  }

  const int nf = (dim == 1) ? 2 : 3;
  // key: sorted vertex pair (1D: single vertex)
  std::map<std::pair<int, int>, std::pair<int, int>> open;  // -> (elem, face)
  std::map<std::pair<int, int>, int> count;
  for (int e = 0; e < n_elems(); ++e) {
    for (int f = 0; f < nf; ++f) {
      auto fv = face_verts(e, f);
      std::pair<int, int> key{std::min(fv[0], fv[1]), std::max(fv[0], fv[1])};
      ++count[key];
      auto it = open.find(key);
      if (it == open.end()) {
        open[key] = {e, f};
      } else {
        Edge ed;
        ed.v = fv;
        ed.left = it->second.first;
        ed.face_left = it->second.second;
        ed.right = e;
        ed.face_right = f;
        if (dim == 1) {
          ed.h = 0.5 * (elem_measure(ed.left) + elem_measure(ed.right));
          // orient left->right along +x
          if (verts[elems[ed.left][0]][0] > verts[elems[ed.right][0]][0]) {
            std::swap(ed.left, ed.right);
            std::swap(ed.face_left, ed.face_right);
          }
          ed.normal = {1.0, 0.0};
        } else {
          const auto& p = verts[fv[0]];
          const auto& q = verts[fv[1]];
          ed.h = std::hypot(q[0] - p[0], q[1] - p[1]);
          // normal orthogonal to the edge, pointing away from the left element
          double nx = q[1] - p[1], ny = p[0] - q[0];
          const auto& el = elems[ed.left];
          double cx = (verts[el[0]][0] + verts[el[1]][0] + verts[el[2]][0]) / 3.0;
          double cy = (verts[el[0]][1] + verts[el[1]][1] + verts[el[2]][1]) / 3.0;
          double mx = 0.5 * (p[0] + q[0]), my = 0.5 * (p[1] + q[1]);
          if (nx * (mx - cx) + ny * (my - cy) < 0) {
            nx = -nx;
            ny = -ny;
          }
          ed.normal = {nx / ed.h, ny / ed.h};
        }
        edges.push_back(ed);
        open.erase(it);
      }
    }
  }
  for (auto& [key, c] : count)
    if (c > 2)
      throw MeshError("non-conforming mesh: face (" + std::to_string(key.first) + "," +
                      std::to_string(key.second) + ") shared by " + std::to_string(c) +
                      " elements");

  // every remaining open face must be a tagged boundary face
  std::map<std::pair<int, int>, int> bmap;
  for (size_t i = 0; i < bfaces.size(); ++i) {
    auto& bf = bfaces[i];
    std::pair<int, int> key{std::min(bf.v[0], bf.v[1]), std::max(bf.v[0], bf.v[1])};
    auto it = open.find(key);
    if (it == open.end())
      throw MeshError("boundary face " + std::to_string(i) + " does not match any mesh face");
    bf.elem = it->second.first;
    bf.local_face = it->second.second;
    bmap[key] = static_cast<int>(i);
  }
  for (auto& [key, ef] : open)
    if (!bmap.count(key))
      throw MeshError("untagged boundary face (" + std::to_string(key.first) + "," +
                      std::to_string(key.second) + ")");
}

Mesh generate_interval_mesh(double a, double b, int n_cells) {
  if (!(a < b)) throw MeshError("interval mesh requires a < b");
  if (n_cells < 1) throw MeshError("interval mesh requires n_cells >= 1");
  Mesh m;
  m.dim = 1;
  m.verts.resize(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i)
    m.verts[i] = {a + (b - a) * static_cast<double>(i) / n_cells, 0.0};
  m.elems.resize(n_cells);
  for (int i = 0; i < n_cells; ++i) m.elems[i] = {i, i + 1, -1};
  const int tl = m.tag_id("left"), tr = m.tag_id("right");
  m.bfaces.push_back({{0, -1}, 0, 0, tl});
  m.bfaces.push_back({{n_cells, -1}, n_cells - 1, 1, tr});
  m.finalize();
  return m;
}

namespace {

// deterministic hash-based jitter in [-1,1]
double hash_unit(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return 2.0 * (static_cast<double>(x % 1000003ULL) / 1000003.0) - 1.0;
}

struct QuadGrid {
  double x0, y0, dx, dy;
  int nx, ny;
  std::vector<int> vid;  // (nx+1)*(ny+1), -1 for unused

  int& at(int i, int j) { return vid[static_cast<size_t>(j) * (nx + 1) + i]; }
};

void emit_quad(Mesh& m, QuadGrid& g, int i, int j, RectPattern pattern) {
  const int v00 = g.at(i, j), v10 = g.at(i + 1, j);
  const int v01 = g.at(i, j + 1), v11 = g.at(i + 1, j + 1);
  const bool flip = (pattern == RectPattern::alternating) && ((i + j) % 2 == 1);
  if (!flip) {
    m.elems.push_back({v00, v10, v11});
    m.elems.push_back({v00, v11, v01});
  } else {
    m.elems.push_back({v00, v10, v01});
    m.elems.push_back({v10, v11, v01});
  }
}

}  // namespace

Mesh generate_rect_triangulation(double x0, double x1, double y0, double y1, int nx, int ny,
                                 RectPattern pattern, double jitter) {
  if (!(x0 < x1 && y0 < y1)) throw MeshError("rect mesh requires non-degenerate ranges");
  if (nx < 1 || ny < 1) throw MeshError("rect mesh requires nx, ny >= 1");
  Mesh m;
  m.dim = 2;
  QuadGrid g{x0, y0, (x1 - x0) / nx, (y1 - y0) / ny, nx, ny, {}};
  g.vid.assign(static_cast<size_t>(nx + 1) * (ny + 1), -1);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      double px = x0 + i * g.dx, py = y0 + j * g.dy;
      if (jitter > 0 && i > 0 && i < nx && j > 0 && j < ny) {
        uint64_t k = static_cast<uint64_t>(j) * (nx + 1) + i;
        px += jitter * g.dx * hash_unit(k * 2 + 1);
        py += jitter * g.dy * hash_unit(k * 2 + 2);
      }
      g.at(i, j) = m.n_verts();
      m.verts.push_back({px, py});
    }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) emit_quad(m, g, i, j, pattern);

  const int tl = m.tag_id("left"), tr = m.tag_id("right");
  const int tb = m.tag_id("bottom"), tt = m.tag_id("top");
  for (int j = 0; j < ny; ++j) {
    m.bfaces.push_back({{g.at(0, j), g.at(0, j + 1)}, -1, -1, tl});
    m.bfaces.push_back({{g.at(nx, j), g.at(nx, j + 1)}, -1, -1, tr});
  }
  for (int i = 0; i < nx; ++i) {
    m.bfaces.push_back({{g.at(i, 0), g.at(i + 1, 0)}, -1, -1, tb});
    m.bfaces.push_back({{g.at(i, ny), g.at(i + 1, ny)}, -1, -1, tt});
  }
  m.finalize();
  return m;
}

Mesh generate_step_mesh(int nx, int ny) {
  // grid must resolve x = 0.6 and y = 0.2 exactly
  const double dx = 3.0 / nx, dy = 1.0 / ny;
  const double ix = 0.6 / dx, iy = 0.2 / dy;
  const int sx = static_cast<int>(std::lround(ix)), sy = static_cast<int>(std::lround(iy));
  if (std::abs(ix - sx) > 1e-9 || std::abs(iy - sy) > 1e-9)
    throw MeshError("step mesh: nx must be a multiple of 5 and ny a multiple of 5");

  Mesh m;
  m.dim = 2;
  QuadGrid g{0.0, 0.0, dx, dy, nx, ny, {}};
  g.vid.assign(static_cast<size_t>(nx + 1) * (ny + 1), -1);
  auto masked = [&](int i, int j) { return i >= sx && j < sy; };  // quad (i,j) inside the step
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      // keep a vertex if at least one adjacent unmasked quad uses it
      bool used = false;
      for (int dj = -1; dj <= 0 && !used; ++dj)
        for (int di = -1; di <= 0 && !used; ++di) {
          int qi = i + di, qj = j + dj;
          if (qi >= 0 && qi < nx && qj >= 0 && qj < ny && !masked(qi, qj)) used = true;
        }
      if (used) {
        g.at(i, j) = m.n_verts();
        m.verts.push_back({i * dx, j * dy});
      }
    }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (!masked(i, j)) emit_quad(m, g, i, j, RectPattern::alternating);

  const int t_in = m.tag_id("inflow"), t_out = m.tag_id("outflow"), t_w = m.tag_id("wall");
  for (int j = 0; j < ny; ++j) {
    m.bfaces.push_back({{g.at(0, j), g.at(0, j + 1)}, -1, -1, t_in});
    if (j >= sy) m.bfaces.push_back({{g.at(nx, j), g.at(nx, j + 1)}, -1, -1, t_out});
  }
  for (int i = 0; i < nx; ++i) {
    if (i < sx) m.bfaces.push_back({{g.at(i, 0), g.at(i + 1, 0)}, -1, -1, t_w});
    m.bfaces.push_back({{g.at(i, ny), g.at(i + 1, ny)}, -1, -1, t_w});
    if (i >= sx) m.bfaces.push_back({{g.at(i, sy), g.at(i + 1, sy)}, -1, -1, t_w});
  }
  for (int j = 0; j < sy; ++j)
    m.bfaces.push_back({{g.at(sx, j), g.at(sx, j + 1)}, -1, -1, t_w});
  m.finalize();
  return m;
}

Mesh generate_dmr_mesh(int nx, int ny) {
  Mesh m = generate_rect_triangulation(0.0, 4.0, 0.0, 1.0, nx, ny, RectPattern::alternating);
  // retag: left and the bottom strip x < 1/6 are inflow; rest of bottom is a
  // wall; top is the time-dependent exact-shock boundary; right is outflow.
  m.edges.clear();
  const int t_in = m.tag_id("inflow"), t_out = m.tag_id("outflow");
  const int t_w = m.tag_id("wall"), t_top = m.tag_id("top");
  for (auto& bf : m.bfaces) {
    const auto& p = m.verts[bf.v[0]];
    const auto& q = m.verts[bf.v[1]];
    const double mx = 0.5 * (p[0] + q[0]), my = 0.5 * (p[1] + q[1]);
    if (mx < 1e-12)
      bf.tag = t_in;
    else if (mx > 4.0 - 1e-12)
      bf.tag = t_out;
    else if (my < 1e-12)
      bf.tag = (mx < 1.0 / 6.0) ? t_in : t_w;
    else
      bf.tag = t_top;
  }
  // drop the rectangle generator's now-unused tag names
  std::vector<std::string> used;
  std::vector<int> remap(m.tags.size(), -1);
  for (auto& bf : m.bfaces) {
    if (remap[bf.tag] < 0) {
      remap[bf.tag] = static_cast<int>(used.size());
      used.push_back(m.tags[bf.tag]);
    }
    bf.tag = remap[bf.tag];
  }
  m.tags = std::move(used);
  m.finalize();
  return m;
}

Mesh generate_disk_mesh(double radius, int n_theta, int n_rings) {
  if (n_theta < 3 || n_rings < 1) throw MeshError("disk mesh: need n_theta >= 3, n_rings >= 1");
  Mesh m;
  m.dim = 2;
  m.verts.push_back({0.0, 0.0});
  std::vector<std::vector<int>> ring(n_rings);
  for (int r = 1; r <= n_rings; ++r) {
    ring[r - 1].resize(n_theta);
    for (int k = 0; k < n_theta; ++k) {
      double th = 2.0 * M_PI * k / n_theta;
      ring[r - 1][k] = m.n_verts();
      m.verts.push_back({radius * r / n_rings * std::cos(th), radius * r / n_rings * std::sin(th)});
    }
  }
  for (int k = 0; k < n_theta; ++k)
    m.elems.push_back({0, ring[0][k], ring[0][(k + 1) % n_theta]});
  for (int r = 1; r < n_rings; ++r)
    for (int k = 0; k < n_theta; ++k) {
      int k1 = (k + 1) % n_theta;
      int a = ring[r - 1][k], b = ring[r - 1][k1], c = ring[r][k], d = ring[r][k1];
      m.elems.push_back({a, c, d});
      m.elems.push_back({a, d, b});
    }
  const int tf = m.tag_id("farfield");
  for (int k = 0; k < n_theta; ++k)
    m.bfaces.push_back({{ring[n_rings - 1][k], ring[n_rings - 1][(k + 1) % n_theta]}, -1, -1, tf});
  m.finalize();
  return m;
}

}  // namespace rd
