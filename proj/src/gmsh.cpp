#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rd/mesh.hpp"

namespace rd {

namespace {

struct LineReader {
  std::ifstream in;
  int lineno = 0;
  std::string path;

  explicit LineReader(const std::string& p) : in(p), path(p) {
    if (!in) throw MeshError("cannot open mesh file: " + p);
  }

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw MeshError(path + ":" + std::to_string(lineno) + ": " + what);
  }
};

}  // namespace

Mesh read_gmsh_ascii(const std::string& path) {
  LineReader rd(path);
  Mesh m;
  m.dim = 2;

  std::map<int, int> node_of_id;          // gmsh node id -> temp index
  std::vector<std::array<double, 2>> xy;  // temp nodes
  std::map<int, std::string> phys_name;   // physical id -> name
  std::vector<std::pair<std::array<int, 2>, int>> lines;  // boundary line, phys id
  std::vector<std::pair<std::array<int, 3>, int>> tris;

  std::string line;
  while (rd.next(line)) {
    if (line == "$MeshFormat") {
      if (!rd.next(line)) rd.fail("truncated $MeshFormat");
      std::istringstream is(line);
      double version = 0;
      is >> version;
      if (!is || std::abs(version - 2.2) > 1e-9)
        rd.fail("unsupported MSH version (need 2.2 ASCII): " + line);
      if (!rd.next(line) || line != "$EndMeshFormat") rd.fail("missing $EndMeshFormat");
    } else if (line == "$PhysicalNames") {
      if (!rd.next(line)) rd.fail("truncated $PhysicalNames");
      int n = std::stoi(line);
      for (int i = 0; i < n; ++i) {
        if (!rd.next(line)) rd.fail("truncated $PhysicalNames");
        std::istringstream is(line);
        int dim, id;
        std::string name;
        is >> dim >> id;
        std::getline(is, name);
        auto a = name.find('"');
        auto b = name.rfind('"');
        if (a == std::string::npos || b <= a) rd.fail("malformed physical name: " + line);
        phys_name[id] = name.substr(a + 1, b - a - 1);
      }
      if (!rd.next(line) || line != "$EndPhysicalNames") rd.fail("missing $EndPhysicalNames");
    } else if (line == "$Nodes") {
      if (!rd.next(line)) rd.fail("truncated $Nodes");
      long n = std::stol(line);
      for (long i = 0; i < n; ++i) {
        if (!rd.next(line)) rd.fail("truncated $Nodes");
        std::istringstream is(line);
        int id;
        double x, y, z;
        if (!(is >> id >> x >> y >> z)) rd.fail("malformed node line: " + line);
        node_of_id[id] = static_cast<int>(xy.size());
        xy.push_back({x, y});
      }
      if (!rd.next(line) || line != "$EndNodes") rd.fail("missing $EndNodes");
    } else if (line == "$Elements") {
      if (!rd.next(line)) rd.fail("truncated $Elements");
      long n = std::stol(line);
      for (long i = 0; i < n; ++i) {
        if (!rd.next(line)) rd.fail("truncated $Elements");
        std::istringstream is(line);
        int id, type, ntags;
        if (!(is >> id >> type >> ntags)) rd.fail("malformed element line: " + line);
        int phys = 0, tag = 0;
        for (int t = 0; t < ntags; ++t) {
          if (!(is >> tag)) rd.fail("malformed element tags: " + line);
          if (t == 0) phys = tag;
        }
        if (type == 1) {
          int a, b;
          if (!(is >> a >> b)) rd.fail("malformed line element: " + line);
          lines.push_back({{a, b}, phys});
        } else if (type == 2) {
          int a, b, c;
          if (!(is >> a >> b >> c)) rd.fail("malformed triangle element: " + line);
          tris.push_back({{a, b, c}, phys});
        } else if (type == 15) {
          // isolated point element; carries no geometry we use
        } else {
          rd.fail("unsupported element type " + std::to_string(type) +
                  " (only 2-node lines and 3-node triangles)");
        }
      }
      if (!rd.next(line) || line != "$EndElements") rd.fail("missing $EndElements");
    }
    // unknown sections are skipped until their $End marker
    else if (!line.empty() && line[0] == '$' && line.rfind("$End", 0) != 0) {
      std::string end = "$End" + line.substr(1);
      while (rd.next(line) && line != end) {
      }
    }
  }
  if (tris.empty()) throw MeshError(path + ": no triangles found");

  // keep only nodes referenced by triangles or boundary lines
  std::map<int, int> renum;
  auto use = [&](int gmsh_id) {
    auto it = node_of_id.find(gmsh_id);
    if (it == node_of_id.end())
      throw MeshError(path + ": element references unknown node " + std::to_string(gmsh_id));
    auto r = renum.find(it->second);
    if (r != renum.end()) return r->second;
    int idx = m.n_verts();
    renum[it->second] = idx;
    m.verts.push_back(xy[it->second]);
    return idx;
  };

  for (auto& [tv, phys] : tris) {
    (void)phys;
    int a = use(tv[0]), b = use(tv[1]), c = use(tv[2]);
    // enforce counterclockwise orientation
    const auto &pa = m.verts[a], &pb = m.verts[b], &pc = m.verts[c];
    double det = (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0]);
    if (det < 0) std::swap(b, c);
    m.elems.push_back({a, b, c});
  }
  for (auto& [lv, phys] : lines) {
    std::string name = phys_name.count(phys) ? phys_name[phys] : ("phys" + std::to_string(phys));
    m.bfaces.push_back({{use(lv[0]), use(lv[1])}, -1, -1, m.tag_id(name)});
  }
  m.finalize();
  return m;
}

void write_gmsh_ascii(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot open for writing: " + path);
  out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
  if (!mesh.tags.empty()) {
    out << "$PhysicalNames\n" << mesh.tags.size() << "\n";
    for (size_t i = 0; i < mesh.tags.size(); ++i)
      out << "1 " << (i + 1) << " \"" << mesh.tags[i] << "\"\n";
    out << "$EndPhysicalNames\n";
  }
  out << "$Nodes\n" << mesh.n_verts() << "\n";
  for (int i = 0; i < mesh.n_verts(); ++i)
    out << (i + 1) << " " << mesh.verts[i][0] << " " << mesh.verts[i][1] << " 0\n";
  out << "$EndNodes\n$Elements\n" << (mesh.bfaces.size() + mesh.elems.size()) << "\n";
  long id = 1;
  for (const auto& bf : mesh.bfaces)
    out << id++ << " 1 2 " << (bf.tag + 1) << " 0 " << (bf.v[0] + 1) << " " << (bf.v[1] + 1)
        << "\n";
  for (const auto& el : mesh.elems)
    out << id++ << " 2 2 0 0 " << (el[0] + 1) << " " << (el[1] + 1) << " " << (el[2] + 1) << "\n";
  out << "$EndElements\n";
}

}  // namespace rd
