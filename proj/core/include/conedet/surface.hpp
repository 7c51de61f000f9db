#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace conedet {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;

// A triangle in its own Euclidean chart, counterclockwise. Edge e runs from
// corner e to corner (e+1)%3.
struct TriangleChart {
  std::array<Vec2, 3> p;

  double signed_area() const;
  double edge_length(int e) const;
  double corner_angle(int c) const;
};

struct EdgeRef {
  int tri = -1;
  int edge = -1;
  bool operator==(const EdgeRef&) const = default;
};

struct Gluing {
  EdgeRef a;
  EdgeRef b;
};

// Raw document form: triangles plus oriented edge identifications. Every
// gluing identifies edge a with edge b reversed (head to tail), which is the
// unique orientation-compatible choice once all charts are counterclockwise.
struct SurfaceDocument {
  std::vector<TriangleChart> triangles;
  std::vector<Gluing> gluings;
};

struct ConePoint {
  int vertex_class = -1;
  double angle = 0.0;  // beta > 0, radians
  double order = 0.0;  // b = beta/(2 pi) - 1 > -1
};

// A compact polyhedral surface: validated gluing of Euclidean triangles with
// derived vertex classes, genus, area and cone data. Immutable after
// construction.
class PolyhedralSurface {
 public:
  static PolyhedralSurface from_document(const SurfaceDocument& doc);

  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  const TriangleChart& chart(int t) const { return triangles_[t]; }
  const std::vector<Gluing>& gluings() const { return gluings_; }

  EdgeRef partner(EdgeRef e) const;

  int num_vertex_classes() const { return static_cast<int>(class_angle_.size()); }
  int corner_class(int tri, int corner) const;
  double class_angle(int k) const { return class_angle_[k]; }

  int genus() const { return genus_; }
  double area() const { return area_; }

  // Vertex classes with total angle != 2 pi (tolerance 1e-9 rad).
  std::vector<ConePoint> cone_points() const;

  // sum_k (beta_k / 2 pi - 1) - (2g - 2); an exact combinatorial identity,
  // so only rounding noise survives.
  double gauss_bonnet_residual() const;

 private:
  PolyhedralSurface() = default;

  std::vector<TriangleChart> triangles_;
  std::vector<Gluing> gluings_;
  std::vector<std::array<EdgeRef, 3>> partner_;
  std::vector<std::array<int, 3>> corner_class_;
  std::vector<double> class_angle_;
  int genus_ = 0;
  double area_ = 0.0;
};

// JSON round trip for the documented schema
//   { "triangles": [[[x,y],[x,y],[x,y]], ...],
//     "gluings":   [[[t,e],[t,e]], ...] }
PolyhedralSurface load_surface(const std::string& json_text);
PolyhedralSurface load_surface_file(const std::string& path);
std::string surface_to_json(const PolyhedralSurface& s);

// Accepts either documented schema: a triangle/gluing document, or a
// translation-surface spec (detected by its "parallelograms" key) which is
// built into its glued form.
PolyhedralSurface load_any_surface_file(const std::string& path);

// Flat torus C / <1, sigma> triangulated as an n x n grid of the fundamental
// parallelogram (2 n^2 triangles). Charts use plane coordinates, so the chart
// position of any point is its representative in the fundamental domain.
// grid_offset shifts the grid by offset/n lattice units (used to keep marked
// points away from grid lines).
PolyhedralSurface build_flat_torus(cplx sigma, int n,
                                   Vec2 grid_offset = Vec2::Zero());

// Flat torus with marked interior points inserted as mesh vertices (each by a
// 3-way split of its containing cell triangle). Returns the vertex classes of
// the marks in input order. A small set of grid offsets is scanned to keep
// marks clear of grid lines.
struct MarkedTorus {
  PolyhedralSurface surface;
  std::vector<int> marked_classes;
};
MarkedTorus build_flat_torus_marked(cplx sigma, int n,
                                    const std::vector<cplx>& points);

struct Parallelogram {
  cplx A;
  cplx B;
};

struct Cut {
  cplx from;
  cplx to;
  int on_first = -1;
  int on_second = -1;
};

// Periods and slit data in stratum coordinates: g parallelograms glued into a
// genus-g surface along the cuts; every cut endpoint becomes a 4 pi cone.
struct TranslationSurfaceSpec {
  std::vector<Parallelogram> parallelograms;
  std::vector<Cut> cuts;

  // Im sum_a conj(A_a) B_a, the flat area in the period coordinates.
  double area() const;
};

TranslationSurfaceSpec load_translation_spec(const std::string& json_text);
TranslationSurfaceSpec load_translation_spec_file(const std::string& path);

PolyhedralSurface build_translation_surface(const TranslationSurfaceSpec& spec);

}  // namespace conedet
