#include "conedet/fem.hpp"

#include <array>
#include <cmath>

#include "conedet/errors.hpp"
#include "conedet/parallel.hpp"
#include "conedet/quadrature.hpp"

namespace conedet {

namespace {

struct ElementMatrices {
  std::array<std::array<double, 3>, 3> K{};
  std::array<std::array<double, 3>, 3> M{};
};

// P1 stiffness on a flat triangle: grad phi_i = rot90(opposite edge)/(2A).
void element_stiffness(const MeshTri& tri, ElementMatrices& out) {
  const Vec2 e0 = tri.p[2] - tri.p[1];
  const Vec2 e1 = tri.p[0] - tri.p[2];
  const Vec2 e2 = tri.p[1] - tri.p[0];
  const double area2 = e2.x() * (-e1.y()) - e2.y() * (-e1.x());  // 2A
  const double area = 0.5 * area2;
  const std::array<Vec2, 3> g = {Vec2(-e0.y(), e0.x()) / area2,
                                 Vec2(-e1.y(), e1.x()) / area2,
                                 Vec2(-e2.y(), e2.x()) / area2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.K[i][j] = g[i].dot(g[j]) * area;
}

void element_mass_plain(const MeshTri& tri, ElementMatrices& out) {
  const double area = 0.5 * std::abs((tri.p[1] - tri.p[0]).x() *
                                         (tri.p[2] - tri.p[0]).y() -
                                     (tri.p[1] - tri.p[0]).y() *
                                         (tri.p[2] - tri.p[0]).x());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.M[i][j] = (i == j ? area / 6.0 : area / 12.0);
}

// Density-weighted mass via the degree-6 symmetric rule.
void element_mass_smooth(const MeshTri& tri, const DensityField& density,
                         ElementMatrices& out) {
  const double area = 0.5 * std::abs((tri.p[1] - tri.p[0]).x() *
                                         (tri.p[2] - tri.p[0]).y() -
                                     (tri.p[1] - tri.p[0]).y() *
                                         (tri.p[2] - tri.p[0]).x());
  const auto& rule = triangle_rule_degree6();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.M[i][j] = 0.0;
  for (const auto& q : rule.points) {
    const Vec2 x = q.l0 * tri.p[0] + q.l1 * tri.p[1] + q.l2 * tri.p[2];
    const double w = q.weight * area * density.rho(x);
    const std::array<double, 3> phi = {q.l0, q.l1, q.l2};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.M[i][j] += w * phi[i] * phi[j];
  }
}

// Density-weighted mass on an element whose corner `sc` sits at a singular
// point of order b: map (s,u) -> p + s((1-u) e1 + u e2), pull the radial
// power into the rule.
void element_mass_singular(const MeshTri& tri, const DensityField& density,
                           int sc, double b, ElementMatrices& out) {
  const int c1 = (sc + 1) % 3;
  const int c2 = (sc + 2) % 3;
  const Vec2 p = tri.p[sc];
  const Vec2 e1 = tri.p[c1] - p;
  const Vec2 e2 = tri.p[c2] - p;
  const double area2 = std::abs(e1.x() * e2.y() - e1.y() * e2.x());

  const int order = 10;
  const PowerRadialRule radial = power_radial_rule(b, order);
  const auto& gl = gauss_legendre(order);

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.M[i][j] = 0.0;

  for (std::size_t iu = 0; iu < gl.nodes.size(); ++iu) {
    const double u = 0.5 * (gl.nodes[iu] + 1.0);
    const double wu = 0.5 * gl.weights[iu];
    const Vec2 dir = (1.0 - u) * e1 + u * e2;
    const double dirn = dir.norm();
    for (std::size_t is = 0; is < radial.s.size(); ++is) {
      const double s = radial.s[is];
      const Vec2 x = p + s * dir;
      // rho with the |x - p|^(2b) power peeled off and restored through the
      // weighted rule (exactly for the pure power part)
      const double r = s * dirn;
      const double rho_reg = density.rho(x) / std::pow(r, 2.0 * b);
      const double w = radial.w[is] * wu * area2 * rho_reg * std::pow(dirn, 2.0 * b);
      std::array<double, 3> phi{};
      phi[sc] = 1.0 - s;
      phi[c1] = s * (1.0 - u);
      phi[c2] = s * u;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.M[i][j] += w * phi[i] * phi[j];
    }
  }
}

}  // namespace

DiscreteOperatorPair assemble(const MeshLevel& mesh,
                              const std::optional<DensityField>& density) {
  const auto& tris = mesh.triangles();
  const int nt = static_cast<int>(tris.size());
  const int n = mesh.num_vertices();

  std::vector<int> singular_corner(nt, -1);
  std::vector<double> singular_order(nt, 0.0);
  if (density) {
    for (const auto& sv : density->singular)
      require(sv.order > -1.0, ErrorCode::DensityNotIntegrable,
              "density order must be > -1");
    for (int t = 0; t < nt; ++t) {
      int hits = 0;
      for (int c = 0; c < 3; ++c)
        for (const auto& sv : density->singular)
          if (tris[t].v[c] == sv.vertex_id && sv.order != 0.0) {
            singular_corner[t] = c;
            singular_order[t] = sv.order;
            ++hits;
          }
      require(hits <= 1, ErrorCode::QuadratureFailure,
              "element touches two singular vertices; refine the mesh first");
    }
  }

  std::vector<ElementMatrices> elems(nt);
  parallel_for(0, static_cast<std::size_t>(nt), [&](std::size_t t) {
    element_stiffness(tris[t], elems[t]);
    if (!density) {
      element_mass_plain(tris[t], elems[t]);
    } else if (singular_corner[t] >= 0) {
      element_mass_singular(tris[t], *density, singular_corner[t],
                            singular_order[t], elems[t]);
    } else {
      element_mass_smooth(tris[t], *density, elems[t]);
    }
  });

  // Serial insertion in element order keeps the result independent of the
  // thread count.
  std::vector<Eigen::Triplet<double>> tk, tm;
  tk.reserve(static_cast<std::size_t>(nt) * 9);
  tm.reserve(static_cast<std::size_t>(nt) * 9);
  for (int t = 0; t < nt; ++t)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        tk.emplace_back(tris[t].v[i], tris[t].v[j], elems[t].K[i][j]);
        tm.emplace_back(tris[t].v[i], tris[t].v[j], elems[t].M[i][j]);
      }

  DiscreteOperatorPair pair;
  pair.n = n;
  pair.stiffness.resize(n, n);
  pair.mass.resize(n, n);
  pair.stiffness.setFromTriplets(tk.begin(), tk.end());
  pair.mass.setFromTriplets(tm.begin(), tm.end());
  pair.stiffness.makeCompressed();
  pair.mass.makeCompressed();
  return pair;
}

}  // namespace conedet
