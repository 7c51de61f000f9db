#pragma once

#include <array>
#include <map>
#include <vector>

#include "conedet/surface.hpp"

namespace conedet {

// vertex id -> grading exponent mu >= 1; only ids present are graded
using GradingMap = std::map<int, double>;

// Default exponent for a cone of angle beta: recovers near-optimal P1
// eigenvalue rates where eigenfunctions behave like r^(2 pi / beta).
double default_grading_exponent(double beta);

struct MeshTri {
  std::array<int, 3> v;       // global vertex ids
  std::array<Vec2, 3> p;      // coordinates in the base triangle's chart
  std::array<int, 3> ptri;    // partner halfedge (triangle)
  std::array<int, 3> pedge;   // partner halfedge (edge)
};

// One level of a nested triangulation of a polyhedral surface. Vertex ids of
// coarser levels are preserved under refinement; children live in the chart
// of their base triangle. Immutable; refine() returns a new level.
class MeshLevel {
 public:
  static MeshLevel base_level(const PolyhedralSurface& s, GradingMap grading,
                              double min_angle_floor_deg = 0.5);

  MeshLevel refine() const;
  MeshLevel refine(int times) const;

  int level() const { return level_; }
  int num_vertices() const { return num_vertices_; }
  const std::vector<MeshTri>& triangles() const { return tris_; }
  const GradingMap& grading() const { return grading_; }
  double min_angle_floor_deg() const { return min_angle_floor_; }

  double area() const;
  double max_diameter() const;
  double min_angle_deg() const;
  int euler_characteristic() const;  // V - E + F

  // Diameter of the largest element touching the given vertex (1e300 if the
  // vertex does not appear).
  double max_diameter_at_vertex(int vertex_id) const;

 private:
  MeshLevel() = default;
  void check_quality() const;

  int level_ = 0;
  int num_vertices_ = 0;
  std::vector<MeshTri> tris_;
  GradingMap grading_;
  double min_angle_floor_ = 0.5;
};

}  // namespace conedet
