#include "ttfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "ttfem/error.hpp"

namespace ttfem {

namespace {

constexpr double kBarycentricTol = 1e-12;

// Builds the face list and element->face adjacency; classifies boundary vs
// interior by incidence count. Orientation: each element traverses its edges
// CCW, so the element listing edge (a,b) in that order is the face's "left".
void build_faces(Mesh& m) {
  m.faces.clear();
  m.element_faces.assign(m.triangles.size(), {-1, -1, -1});
  std::unordered_map<std::uint64_t, int> index;
  for (int e = 0; e < m.n_elements(); ++e) {
    for (int j = 0; j < 3; ++j) {
      int a = m.triangles[e][j];
      int b = m.triangles[e][(j + 1) % 3];
      auto key = Mesh::edge_key(a, b);
      auto it = index.find(key);
      if (it == index.end()) {
        Face f;
        f.v = {a, b};
        f.left = e;
        index.emplace(key, static_cast<int>(m.faces.size()));
        m.element_faces[e][j] = static_cast<int>(m.faces.size());
        m.faces.push_back(f);
      } else {
        Face& f = m.faces[it->second];
        if (f.right != -1)
          throw ConfigError("non-conforming mesh: edge shared by more than two triangles");
        f.right = e;
        m.element_faces[e][j] = it->second;
      }
    }
  }
}

void validate(const Mesh& m, bool check_tags) {
  for (int e = 0; e < m.n_elements(); ++e) {
    for (int v : m.triangles[e])
      if (v < 0 || v >= m.n_vertices()) throw ConfigError("triangle references invalid vertex");
    if (m.element_area(e) <= 0.0) throw ConfigError("inverted triangle (non-positive area)");
  }

  // Boundary must form a single closed cycle; holes and disconnected pieces
  // show up as extra cycles.
  std::unordered_map<int, std::vector<int>> next;
  int n_boundary = 0;
  for (const Face& f : m.faces) {
    if (f.right == -1) {
      next[f.v[0]].push_back(f.v[1]);
      ++n_boundary;
    }
  }
  if (n_boundary == 0) throw ConfigError("mesh has no boundary");
  for (auto& [v, outs] : next)
    if (outs.size() != 1) throw ConfigError("non-conforming mesh: boundary is not a simple cycle");
  int cycles = 0;
  std::set<int> seen;
  for (auto& [v, outs] : next) {
    if (seen.count(v)) continue;
    ++cycles;
    int cur = v;
    while (!seen.count(cur)) {
      seen.insert(cur);
      cur = next[cur][0];
    }
  }
  if (cycles != 1) throw ConfigError("non-conforming mesh: boundary has holes");

  // Euler characteristic of a disk.
  if (m.n_vertices() - m.n_faces() + m.n_elements() != 1)
    throw ConfigError("non-conforming mesh: Euler characteristic check failed");

  // Hanging nodes on boundary faces: a vertex strictly inside a boundary edge
  // means the finer side was triangulated against a full coarse edge.
  const double diam = m.mesh_diameter();
  for (const Face& f : m.faces) {
    if (f.right != -1) continue;
    const Vec2 a = m.vertices[f.v[0]], b = m.vertices[f.v[1]];
    const Vec2 d = b - a;
    const double len2 = d.squaredNorm();
    for (int v = 0; v < m.n_vertices(); ++v) {
      if (v == f.v[0] || v == f.v[1]) continue;
      const Vec2 p = m.vertices[v] - a;
      double t = p.dot(d) / len2;
      if (t <= 1e-10 || t >= 1.0 - 1e-10) continue;
      double dist = std::abs(cross2(d, p)) / std::sqrt(len2);
      if (dist < 1e-12 * diam)
        throw ConfigError("non-conforming mesh: hanging node on boundary edge");
    }
  }

  if (check_tags) {
    for (const Face& f : m.faces)
      if (f.right == -1 && f.tag == BoundaryTag::None)
        throw ConfigError("untagged boundary face");
  }
}

}  // namespace

double Mesh::element_diameter(int e) const {
  auto c = coords(e);
  return std::max({(c[1] - c[0]).norm(), (c[2] - c[1]).norm(), (c[0] - c[2]).norm()});
}

double Mesh::mesh_diameter() const {
  Vec2 lo = vertices[0], hi = vertices[0];
  for (const Vec2& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

Mesh build_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                const BoundaryTagger& tagger, std::vector<int> regions) {
  Mesh m;
  m.vertices = std::move(vertices);
  m.triangles = std::move(triangles);
  m.element_region = regions.empty() ? std::vector<int>(m.triangles.size(), 0) : std::move(regions);
  if (m.element_region.size() != m.triangles.size())
    throw ConfigError("region list length does not match triangle count");
  m.refinement_level.assign(m.triangles.size(), 0);
  m.parent.assign(m.triangles.size(), -1);
  m.green_base_of.assign(m.triangles.size(), -1);
  build_faces(m);
  for (Face& f : m.faces)
    if (f.right == -1) f.tag = tagger(0.5 * (m.vertices[f.v[0]] + m.vertices[f.v[1]]));
  validate(m, true);
  return m;
}

void check_conforming(const Mesh& mesh) { validate(mesh, true); }

MarkedSet mark_fixed_fraction(const std::vector<double>& indicators, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("marking fraction must be in (0,1]");
  const int n = static_cast<int>(indicators.size());
  MarkedSet out;
  bool any = false;
  for (double v : indicators)
    if (v != 0.0) any = true;
  if (!any) return out;  // converged or degenerate estimate

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double va = std::abs(indicators[a]), vb = std::abs(indicators[b]);
    if (va != vb) return va > vb;
    return a < b;  // deterministic tie rule
  });
  int count = static_cast<int>(std::ceil(fraction * n));
  count = std::min(count, n);
  out.elements.assign(order.begin(), order.begin() + count);
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

namespace {

// Working triangle during refinement. Candidates are processed by a worklist
// until no triangle has two or more split edges; the survivors with exactly
// one split edge are green-bisected.
struct Candidate {
  std::array<int, 3> v;
  int region;
  int level;
  int origin;  // old-mesh element for the parent field
};

struct Refiner {
  const Mesh& old_mesh;
  Mesh out;

  Refiner(const Mesh& m) : old_mesh(m) {
    out.vertices = m.vertices;
    out.edge_midpoint = m.edge_midpoint;
    out.midpoint_parent_edge = m.midpoint_parent_edge;
  }

  int midpoint(int a, int b) {
    auto key = Mesh::edge_key(a, b);
    auto it = out.edge_midpoint.find(key);
    if (it != out.edge_midpoint.end()) return it->second;
    int idx = static_cast<int>(out.vertices.size());
    out.vertices.push_back(0.5 * (out.vertices[a] + out.vertices[b]));
    out.edge_midpoint.emplace(key, idx);
    out.midpoint_parent_edge.emplace(idx, std::array<int, 2>{std::min(a, b), std::max(a, b)});
    return idx;
  }

  bool is_split(int a, int b) const {
    return out.edge_midpoint.count(Mesh::edge_key(a, b)) > 0;
  }
};

}  // namespace

Mesh refine(const Mesh& mesh, const MarkedSet& marked) {
  for (int e : marked.elements)
    if (e < 0 || e >= mesh.n_elements())
      throw ConfigError("marked set references invalid element");
  if (marked.elements.empty()) return mesh;

  // Base triangles: each non-green element is its own base; a green pair
  // collapses back to the red triangle it bisected.
  struct Base {
    std::array<int, 3> v;
    int region;
    int level;
    int origin;
  };
  std::vector<Base> bases;
  std::vector<int> base_of_elem(mesh.n_elements(), -1);
  std::unordered_map<int, int> base_of_green;  // green_bases index -> base index

  for (int e = 0; e < mesh.n_elements(); ++e) {
    int g = mesh.green_base_of[e];
    if (g < 0) {
      base_of_elem[e] = static_cast<int>(bases.size());
      bases.push_back({mesh.triangles[e], mesh.element_region[e], mesh.refinement_level[e], e});
    } else {
      auto it = base_of_green.find(g);
      if (it == base_of_green.end()) {
        const auto& gb = mesh.green_bases[g];
        base_of_green.emplace(g, static_cast<int>(bases.size()));
        base_of_elem[e] = static_cast<int>(bases.size());
        bases.push_back({gb.v, gb.region, gb.level, gb.origin});
      } else {
        base_of_elem[e] = it->second;
      }
    }
  }

  Refiner R(mesh);

  std::vector<char> red(bases.size(), 0);
  for (int e : marked.elements) red[base_of_elem[e]] = 1;

  // Emit candidates: red bases quadrisect immediately, all other bases enter
  // the closure worklist as their base triangle. A green pair whose base ends
  // up with one split edge is re-bisected identically; with two or more it is
  // promoted to red, which implements the revert-then-red policy.
  std::vector<Candidate> pending;
  auto quadrisect = [&](const Candidate& c, std::vector<Candidate>& sink) {
    int m01 = R.midpoint(c.v[0], c.v[1]);
    int m12 = R.midpoint(c.v[1], c.v[2]);
    int m20 = R.midpoint(c.v[2], c.v[0]);
    int lvl = c.level + 1;
    sink.push_back({{c.v[0], m01, m20}, c.region, lvl, c.origin});
    sink.push_back({{m01, c.v[1], m12}, c.region, lvl, c.origin});
    sink.push_back({{m20, m12, c.v[2]}, c.region, lvl, c.origin});
    sink.push_back({{m01, m12, m20}, c.region, lvl, c.origin});
  };

  for (int bi = 0; bi < static_cast<int>(bases.size()); ++bi) {
    const Base& b = bases[bi];
    Candidate c{b.v, b.region, b.level, b.origin};
    if (red[bi])
      quadrisect(c, pending);
    else
      pending.push_back(c);
  }

  // Closure worklist: a candidate goes red when two or more of its edges are
  // split, or when a neighbour is refined at least two levels deeper (a half
  // of one of its edges is itself split). Red splits can cascade into other
  // candidates, so iterate to a fixed point.
  auto deep_split = [&R](int a, int b) {
    auto it = R.out.edge_midpoint.find(Mesh::edge_key(a, b));
    if (it == R.out.edge_midpoint.end()) return false;
    int m = it->second;
    return R.is_split(a, m) || R.is_split(m, b);
  };
  for (int guard = 0;; ++guard) {
    if (guard > 100000) throw NumericalError("refinement closure failed to terminate");
    bool changed = false;
    std::vector<Candidate> next;
    next.reserve(pending.size());
    for (const Candidate& c : pending) {
      int splits = 0;
      bool deep = false;
      for (int j = 0; j < 3; ++j) {
        int a = c.v[j], b = c.v[(j + 1) % 3];
        if (R.is_split(a, b)) ++splits;
        deep = deep || deep_split(a, b);
      }
      if (splits >= 2 || deep) {
        quadrisect(c, next);
        changed = true;
      } else {
        next.push_back(c);
      }
    }
    pending.swap(next);
    if (!changed) break;
  }

  // Survivors: green-bisect single-split candidates, copy the rest.
  Mesh& out = R.out;
  std::map<std::array<int, 3>, int> green_index;
  auto emit = [&](const std::array<int, 3>& v, int region, int level, int origin,
                  const std::array<int, 3>* green_base) {
    out.triangles.push_back(v);
    out.element_region.push_back(region);
    out.refinement_level.push_back(level);
    out.parent.push_back(origin);
    if (green_base) {
      auto it = green_index.find(*green_base);
      int gi;
      if (it == green_index.end()) {
        gi = static_cast<int>(out.green_bases.size());
        out.green_bases.push_back({*green_base, region, level, origin});
        green_index.emplace(*green_base, gi);
      } else {
        gi = it->second;
      }
      out.green_base_of.push_back(gi);
    } else {
      out.green_base_of.push_back(-1);
    }
  };

  for (const Candidate& c : pending) {
    int split_edge = -1;
    for (int j = 0; j < 3; ++j)
      if (R.is_split(c.v[j], c.v[(j + 1) % 3])) split_edge = j;
    if (split_edge < 0) {
      emit(c.v, c.region, c.level, c.origin, nullptr);
      continue;
    }
    int a = c.v[split_edge], b = c.v[(split_edge + 1) % 3], opp = c.v[(split_edge + 2) % 3];
    int m = R.midpoint(a, b);
    emit({a, m, opp}, c.region, c.level, c.origin, &c.v);
    emit({m, b, opp}, c.region, c.level, c.origin, &c.v);
  }

  build_faces(out);

  // Boundary tags are inherited: a new boundary face is an old boundary face
  // or one of its halves.
  std::unordered_map<std::uint64_t, BoundaryTag> tag_of;
  for (const Face& f : mesh.faces) {
    if (f.right != -1) continue;
    tag_of[Mesh::edge_key(f.v[0], f.v[1])] = f.tag;
    auto it = out.edge_midpoint.find(Mesh::edge_key(f.v[0], f.v[1]));
    if (it != out.edge_midpoint.end()) {
      tag_of[Mesh::edge_key(f.v[0], it->second)] = f.tag;
      tag_of[Mesh::edge_key(it->second, f.v[1])] = f.tag;
    }
  }
  for (Face& f : out.faces) {
    if (f.right != -1) continue;
    // May need two lookups: a boundary edge can be a half of a half when the
    // cascade refines along the boundary.
    int a = f.v[0], b = f.v[1];
    for (int guard = 0; guard < 64; ++guard) {
      auto it = tag_of.find(Mesh::edge_key(a, b));
      if (it != tag_of.end()) {
        f.tag = it->second;
        break;
      }
      auto pa = out.midpoint_parent_edge.find(a);
      auto pb = out.midpoint_parent_edge.find(b);
      if (pa != out.midpoint_parent_edge.end() && (pa->second[0] == b || pa->second[1] == b)) {
        a = pa->second[0] == b ? pa->second[1] : pa->second[0];
      } else if (pb != out.midpoint_parent_edge.end() &&
                 (pb->second[0] == a || pb->second[1] == a)) {
        b = pb->second[0] == a ? pb->second[1] : pb->second[0];
      } else {
        break;
      }
    }
  }

  validate(out, true);
  return out;
}

int locate_point(const Mesh& mesh, const Vec2& x) {
  // Walk through adjacency from element 0, then fall back to a full scan.
  // The scan also resolves the documented tie rule (lowest containing index)
  // whenever the walk lands on an edge or vertex.
  int cur = 0;
  const int max_steps = 2 * mesh.n_elements() + 8;
  for (int step = 0; step < max_steps && cur >= 0; ++step) {
    auto c = mesh.coords(cur);
    auto l = barycentric(c[0], c[1], c[2], x);
    if (barycentric_inside(l, kBarycentricTol)) {
      bool on_edge = l[0] < 1e-9 || l[1] < 1e-9 || l[2] < 1e-9;
      if (!on_edge) return cur;
      break;  // resolve ties by scanning
    }
    // Step across the edge opposite the most negative coordinate: local edge
    // (j, j+1) is opposite vertex j+2.
    int worst = 0;
    if (l[1] < l[worst]) worst = 1;
    if (l[2] < l[worst]) worst = 2;
    cur = mesh.neighbor(cur, (worst + 1) % 3);
  }
  for (int e = 0; e < mesh.n_elements(); ++e) {
    auto c = mesh.coords(e);
    if (barycentric_inside(barycentric(c[0], c[1], c[2], x), kBarycentricTol)) return e;
  }
  throw NumericalError("point (" + std::to_string(x.x()) + ", " + std::to_string(x.y()) +
                       ") lies outside the mesh");
}

FaceGeometry face_geometry(const Mesh& mesh, int face) {
  const Face& f = mesh.faces.at(face);
  FaceGeometry g;
  g.a = mesh.vertices[f.v[0]];
  g.b = mesh.vertices[f.v[1]];
  Vec2 d = g.b - g.a;
  g.length = d.norm();
  g.normal = rot_cw(d) / g.length;
  return g;
}

}  // namespace ttfem
