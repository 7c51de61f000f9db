#include "conedet/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conedet/errors.hpp"

namespace conedet {

namespace {

constexpr double kPi = std::numbers::pi;

double tri_signed_area(const std::array<Vec2, 3>& p) {
  const Vec2 u = p[1] - p[0], v = p[2] - p[0];
  return 0.5 * (u.x() * v.y() - u.y() * v.x());
}

double tri_min_angle(const std::array<Vec2, 3>& p) {
  double amin = kPi;
  for (int c = 0; c < 3; ++c) {
    const Vec2 u = p[(c + 1) % 3] - p[c];
    const Vec2 v = p[(c + 2) % 3] - p[c];
    const double crossv = std::abs(u.x() * v.y() - u.y() * v.x());
    amin = std::min(amin, std::atan2(crossv, u.dot(v)));
  }
  return amin;
}

double tri_diameter(const std::array<Vec2, 3>& p) {
  return std::max({(p[1] - p[0]).norm(), (p[2] - p[1]).norm(), (p[0] - p[2]).norm()});
}

}  // namespace

double default_grading_exponent(double beta) {
  return std::max(1.0, beta / (2.0 * kPi) + 0.5);
}

MeshLevel MeshLevel::base_level(const PolyhedralSurface& s, GradingMap grading,
                                double min_angle_floor_deg) {
  MeshLevel m;
  m.level_ = 0;
  m.grading_ = std::move(grading);
  m.min_angle_floor_ = min_angle_floor_deg;
  m.num_vertices_ = s.num_vertex_classes();
  m.tris_.resize(s.num_triangles());
  for (int t = 0; t < s.num_triangles(); ++t) {
    MeshTri& mt = m.tris_[t];
    for (int c = 0; c < 3; ++c) {
      mt.v[c] = s.corner_class(t, c);
      mt.p[c] = s.chart(t).p[c];
    }
    for (int e = 0; e < 3; ++e) {
      const EdgeRef pr = s.partner({t, e});
      mt.ptri[e] = pr.tri;
      mt.pedge[e] = pr.edge;
    }
  }
  for (const auto& [vid, mu] : m.grading_) {
    require(vid >= 0 && vid < m.num_vertices_, ErrorCode::InvalidArgument,
            "grading references a missing vertex class");
    require(mu >= 1.0, ErrorCode::InvalidArgument,
            "grading exponents must be >= 1");
  }
  m.check_quality();
  return m;
}

MeshLevel MeshLevel::refine() const {
  MeshLevel fine;
  fine.level_ = level_ + 1;
  fine.grading_ = grading_;
  fine.min_angle_floor_ = min_angle_floor_;

  const int nt = static_cast<int>(tris_.size());
  int next_vertex = num_vertices_;

  // One new vertex per glued edge pair; the split fraction is decided from
  // the (global) endpoint ids, so both sides agree on the physical point.
  std::vector<std::array<int, 3>> mid_id(nt, {-1, -1, -1});
  std::vector<std::array<Vec2, 3>> mid_p(nt);
  std::vector<std::array<double, 3>> frac(nt);

  auto split_fraction = [&](int va, int vb) {
    const auto ita = grading_.find(va);
    const auto itb = grading_.find(vb);
    const bool ga = ita != grading_.end() && ita->second > 1.0;
    const bool gb = itb != grading_.end() && itb->second > 1.0;
    if (ga && !gb) return std::pow(2.0, -ita->second);
    if (gb && !ga) return 1.0 - std::pow(2.0, -itb->second);
    return 0.5;
  };

  for (int t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e) {
      if (mid_id[t][e] >= 0) continue;
      const int qt = tris_[t].ptri[e];
      const int qe = tris_[t].pedge[e];
      const double s = split_fraction(tris_[t].v[e], tris_[t].v[(e + 1) % 3]);
      const int id = next_vertex++;
      mid_id[t][e] = id;
      frac[t][e] = s;
      mid_p[t][e] = tris_[t].p[e] + s * (tris_[t].p[(e + 1) % 3] - tris_[t].p[e]);
      // partner runs the same edge reversed
      mid_id[qt][qe] = id;
      frac[qt][qe] = 1.0 - s;
      mid_p[qt][qe] =
          tris_[qt].p[qe] + (1.0 - s) * (tris_[qt].p[(qe + 1) % 3] - tris_[qt].p[qe]);
    }

  // children: child j sits at corner j, child 3 is central
  auto child_of = [](int t, int j) { return 4 * t + j; };
  fine.tris_.resize(4 * nt);
  for (int t = 0; t < nt; ++t) {
    const MeshTri& par = tris_[t];
    const std::array<int, 3>& mid = mid_id[t];
    const std::array<Vec2, 3>& mp = mid_p[t];
    for (int j = 0; j < 3; ++j) {
      MeshTri& c = fine.tris_[child_of(t, j)];
      const int jp = (j + 2) % 3;  // previous edge index
      c.v = {par.v[j], mid[j], mid[jp]};
      c.p = {par.p[j], mp[j], mp[jp]};
    }
    MeshTri& c3 = fine.tris_[child_of(t, 3)];
    c3.v = {mid[0], mid[1], mid[2]};
    c3.p = {mp[0], mp[1], mp[2]};
  }

  // wiring: internal edges within the parent, then across parent edges
  for (int t = 0; t < nt; ++t) {
    auto link = [&](int ta, int ea, int tb, int eb) {
      fine.tris_[ta].ptri[ea] = tb;
      fine.tris_[ta].pedge[ea] = eb;
      fine.tris_[tb].ptri[eb] = ta;
      fine.tris_[tb].pedge[eb] = ea;
    };
    // central child edge j runs mid_j -> mid_{j+1}; its partner is edge 1 of
    // child j+1 (mid_{j+1} -> mid_j)
    for (int j = 0; j < 3; ++j)
      link(child_of(t, 3), j, child_of(t, (j + 1) % 3), 1);
    // across parent edge e: child_e.edge0 <-> partner child_{f+1}.edge2,
    // child_{e+1}.edge2 <-> partner child_f.edge0
    for (int e = 0; e < 3; ++e) {
      const int qt = tris_[t].ptri[e];
      const int qe = tris_[t].pedge[e];
      if (qt < t || (qt == t && qe < e)) continue;  // wire each pair once
      link(child_of(t, e), 0, child_of(qt, (qe + 1) % 3), 2);
      link(child_of(t, (e + 1) % 3), 2, child_of(qt, qe), 0);
    }
  }

  fine.num_vertices_ = next_vertex;
  fine.check_quality();
  return fine;
}

MeshLevel MeshLevel::refine(int times) const {
  require(times >= 0, ErrorCode::InvalidArgument, "negative refinement count");
  MeshLevel m = *this;
  for (int i = 0; i < times; ++i) m = m.refine();
  return m;
}

void MeshLevel::check_quality() const {
  const double floor_rad = min_angle_floor_ * kPi / 180.0;
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    require(tri_signed_area(tris_[t].p) > 0.0, ErrorCode::DegenerateTriangle,
            "mesh triangle " + std::to_string(t) + " inverted");
    require(tri_min_angle(tris_[t].p) >= floor_rad, ErrorCode::MinAngleViolation,
            "mesh triangle " + std::to_string(t) + " below the min-angle floor");
  }
}

double MeshLevel::area() const {
  double a = 0.0;
  for (const auto& t : tris_) a += tri_signed_area(t.p);
  return a;
}

double MeshLevel::max_diameter() const {
  double h = 0.0;
  for (const auto& t : tris_) h = std::max(h, tri_diameter(t.p));
  return h;
}

double MeshLevel::min_angle_deg() const {
  double a = kPi;
  for (const auto& t : tris_) a = std::min(a, tri_min_angle(t.p));
  return a * 180.0 / kPi;
}

int MeshLevel::euler_characteristic() const {
  const int F = static_cast<int>(tris_.size());
  return num_vertices_ - 3 * F / 2 + F;
}

double MeshLevel::max_diameter_at_vertex(int vertex_id) const {
  double h = 0.0;
  bool seen = false;
  for (const auto& t : tris_)
    for (int c = 0; c < 3; ++c)
      if (t.v[c] == vertex_id) {
        h = std::max(h, tri_diameter(t.p));
        seen = true;
      }
  return seen ? h : 1e300;
}

}  // namespace conedet
