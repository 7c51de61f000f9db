#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conedet/special_functions.hpp"

namespace conedet {

// Divisor entry: point p = u + v sigma (u, v in [0,1)) carrying order b > -1.
struct DivisorPoint {
  double u = 0.0;
  double v = 0.0;
  double b = 0.0;
};

// Genus-1 flat conical metric rho(z) |dz|^2 on C / <1, sigma> built from a
// divisor with sum of orders zero:
//   rho(z) = c * prod_k |theta1(z - p_k | sigma)|^(2 b_k)
//              * exp(4 pi Im(z) sum_k b_k Im(p_k) / Im(sigma)).
// Doubly periodic, log rho harmonic away from the divisor, conical of angle
// 2 pi (b_k + 1) at p_k.
class ConicalTorusMetric {
 public:
  ConicalTorusMetric(Modulus sigma, double scale,
                     std::vector<DivisorPoint> divisor);

  const Modulus& modulus() const { return sigma_; }
  double scale() const { return scale_; }
  const std::vector<DivisorPoint>& divisor() const { return divisor_; }
  int num_points() const { return static_cast<int>(divisor_.size()); }
  cplx point(int k) const;

  ConicalTorusMetric scaled(double kappa) const;

  // Shortest distance from z to the divisor modulo the lattice.
  double lattice_distance_to_divisor(cplx z) const;

  double log_density(cplx z) const;
  double density(cplx z) const;

  // h_k = lim_{z->p_k} rho(z) / |z - p_k|^(2 b_k), the density coefficient at
  // the cone in the z chart.
  double log_density_limit_coeff(int k) const;

  // (|g_k|, |f_k|): sqrt(h_k) and the modulus of dz in the distinguished
  // parameter at p_k, h_k^(-1 / (2 (b_k + 1))).
  std::pair<double, double> distinguished_scale(int k) const;

  struct AreaResult {
    double value = 0.0;
    double error_estimate = 0.0;  // relative, from an order-bumped re-run
  };
  AreaResult area(int base_grid = 16, int order = 10) const;

 private:
  Modulus sigma_;
  double scale_;
  std::vector<DivisorPoint> divisor_;
};

// Right-hand side of the determinant-ratio formula without its constant:
//   (Area_1 / Area_2) * prod_l |g_l|^(b_l/6) / prod_k |f_k|^(a_k/6),
// where the cross scale factors express each metric in the other's
// distinguished parameters. Divisors must not intersect.
double polyakov_ratio(const ConicalTorusMetric& m1,
                      const ConicalTorusMetric& m2);

// |Im sigma| * Area * |eta(sigma)|^4 * prod_k |f_k|^(-b_k/6): the determinant
// predictor up to a constant depending only on the orders.
double mt_predictor(const ConicalTorusMetric& m);

// prod_i [l/m (R_i)]^(c_i) * prod_j [m/n (P_j)]^(a_j) * prod_k [n/l (Q_k)]^(b_k)
// over the three divisors; equals 1 for conformally equivalent flat conical
// metrics with pairwise disjoint divisors.
double three_polyhedra_product(const ConicalTorusMetric& l,
                               const ConicalTorusMetric& m,
                               const ConicalTorusMetric& n);

// JSON schema { "sigma":[re,im], "scale":c, "divisor":[{"u":..,"v":..,"b":..}] }
ConicalTorusMetric load_metric(const std::string& json_text);
ConicalTorusMetric load_metric_file(const std::string& path);
std::string metric_to_json(const ConicalTorusMetric& m);

}  // namespace conedet
