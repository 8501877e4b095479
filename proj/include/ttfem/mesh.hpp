#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ttfem/geometry.hpp"

namespace ttfem {

enum class BoundaryTag { None, Dirichlet, Neumann };

// Maps the midpoint of a boundary face to its tag when a mesh is first built
// (or imported). Refined meshes inherit tags from parent faces instead.
using BoundaryTagger = std::function<BoundaryTag(const Vec2&)>;

struct Face {
  std::array<int, 2> v{-1, -1};  // endpoints; normal = rot_cw(b - a) normalised
  int left = -1;                 // element traversing a->b counterclockwise
  int right = -1;                // -1 on the boundary
  BoundaryTag tag = BoundaryTag::None;
};

struct FaceGeometry {
  Vec2 normal;  // unit; left->right for interior faces, outward on the boundary
  double length;
  Vec2 a, b;
};

struct MarkedSet {
  std::vector<int> elements;  // sorted, unique
};

// Conforming 2D triangulation. Immutable after construction: refine() returns
// a new mesh. Green elements carry a record of their (red) base triangle so a
// later refinement can revert the bisection before splitting further.
class Mesh {
 public:
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  // CCW vertex indices
  std::vector<Face> faces;
  std::vector<std::array<int, 3>> element_faces;  // local edge j = (v[j], v[j+1])
  std::vector<int> element_region;
  std::vector<int> refinement_level;
  std::vector<int> parent;  // element id in the mesh this one was refined from

  struct GreenBase {
    std::array<int, 3> v;
    int region;
    int level;
    int origin;  // old element id used for genealogy
  };
  std::vector<int> green_base_of;  // index into green_bases, -1 if not green
  std::vector<GreenBase> green_bases;

  // Midpoint bookkeeping survives across refinements; a vertex knows which
  // edge it bisected so closure can find the coarse neighbour of a half-edge.
  std::unordered_map<std::uint64_t, int> edge_midpoint;
  std::unordered_map<int, std::array<int, 2>> midpoint_parent_edge;

  int n_elements() const { return static_cast<int>(triangles.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }
  int n_vertices() const { return static_cast<int>(vertices.size()); }

  std::array<Vec2, 3> coords(int e) const {
    return {vertices[triangles[e][0]], vertices[triangles[e][1]], vertices[triangles[e][2]]};
  }
  double element_area(int e) const {
    auto c = coords(e);
    return triangle_area(c[0], c[1], c[2]);
  }
  Vec2 barycenter(int e) const {
    auto c = coords(e);
    return (c[0] + c[1] + c[2]) / 3.0;
  }
  double element_diameter(int e) const;
  double mesh_diameter() const;

  // Neighbouring element across local edge j of element e, -1 on the boundary.
  int neighbor(int e, int j) const {
    const Face& f = faces[element_faces[e][j]];
    return f.left == e ? f.right : f.left;
  }

  static std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }
};

Mesh build_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                const BoundaryTagger& tagger, std::vector<int> regions = {});

MarkedSet mark_fixed_fraction(const std::vector<double>& indicators, double fraction);

Mesh refine(const Mesh& mesh, const MarkedSet& marked);

int locate_point(const Mesh& mesh, const Vec2& x);

FaceGeometry face_geometry(const Mesh& mesh, int face);

// Throws ConfigError with a reason if the mesh is not conforming; used for
// input validation and as the post-refinement oracle in tests.
void check_conforming(const Mesh& mesh);

}  // namespace ttfem
