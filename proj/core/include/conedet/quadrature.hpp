#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace conedet {

// Gauss-Legendre rule on [-1, 1]. Nodes ascending; cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

// Integrate f over [a, b] with a single Gauss-Legendre panel.
double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int order);

// Composite rule: [a, b] split into `panels` equal panels of `order` points.
double gl_composite(const std::function<double(double)>& f, double a, double b,
                    int panels, int order);

// Symmetric triangle rule, exact for polynomials up to the stated degree.
// Points are barycentric.
struct TriangleRule {
  struct Point {
    double l0, l1, l2;
    double weight;  // normalized: weights sum to 1, scale by triangle area
  };
  std::vector<Point> points;
  int degree;
};

const TriangleRule& triangle_rule_degree6();

// Gauss-Jacobi rule for integrals  int_0^1 s^(2b+1) g(s) ds  with b > -1:
// the power weight is built into the nodes and weights, so the rule is exact
// for polynomial g up to degree 2*order - 1.
struct PowerRadialRule {
  std::vector<double> s;  // nodes in (0, 1)
  std::vector<double> w;  // carry the s^(2b+1) weight
};

PowerRadialRule power_radial_rule(double b, int order);

}  // namespace conedet
