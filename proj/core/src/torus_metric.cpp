#include "conedet/torus_metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "conedet/errors.hpp"
#include "conedet/quadrature.hpp"

namespace conedet {

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

// Reduce z to the centered fundamental cell of <1, sigma>.
cplx lattice_reduce(cplx z, cplx sigma) {
  const double v = z.imag() / sigma.imag();
  const double u = z.real() - v * sigma.real();
  return (u - std::floor(u + 0.5)) + (v - std::floor(v + 0.5)) * sigma;
}

double lattice_distance(cplx z, cplx p, cplx sigma) {
  double d = 1e300;
  const cplx w = lattice_reduce(z - p, sigma);
  for (int du = -1; du <= 1; ++du)
    for (int dv = -1; dv <= 1; ++dv)
      d = std::min(d, std::abs(w + static_cast<double>(du) +
                               static_cast<double>(dv) * sigma));
  return d;
}

// Signed integral of rho over the triangle (p, q1, q2) where rho has the
// power 2b at p: radial rule exact in the power, Gauss in the sweep.
double singular_fan_triangle(const ConicalTorusMetric& metric, const cplx& p,
                             const cplx& q1, const cplx& q2, double b,
                             int order) {
  const cplx e1 = q1 - p;
  const cplx e2 = q2 - p;
  const double area2 = (std::conj(e1) * e2).imag();  // signed
  if (std::abs(area2) < 1e-300) return 0.0;

  const PowerRadialRule radial = power_radial_rule(b, order);
  const auto& gl = gauss_legendre(order);
  double sum = 0.0;
  for (std::size_t iu = 0; iu < gl.nodes.size(); ++iu) {
    const double u = 0.5 * (gl.nodes[iu] + 1.0);
    const double wu = 0.5 * gl.weights[iu];
    const cplx dir = (1.0 - u) * e1 + u * e2;
    const double dirn = std::abs(dir);
    for (std::size_t is = 0; is < radial.s.size(); ++is) {
      const double s = radial.s[is];
      const cplx z = p + s * dir;
      const double r = s * dirn;
      const double log_reg = metric.log_density(z) - 2.0 * b * std::log(r);
      sum += radial.w[is] * wu * std::exp(log_reg) * std::pow(dirn, 2.0 * b);
    }
  }
  return sum * area2;
}

}  // namespace

ConicalTorusMetric::ConicalTorusMetric(Modulus sigma, double scale,
                                       std::vector<DivisorPoint> divisor)
    : sigma_(sigma), scale_(scale), divisor_(std::move(divisor)) {
  require(scale_ > 0.0, ErrorCode::InvalidArgument, "scale must be positive");
  // Divisor points live on the torus: reduce to the canonical cell so the
  // normalization does not depend on the chosen lattice representative.
  for (auto& d : divisor_) {
    d.u -= std::floor(d.u);
    d.v -= std::floor(d.v);
  }
  double bsum = 0.0;
  for (const auto& d : divisor_) {
    require(d.b > -1.0, ErrorCode::InvalidArgument, "divisor order must be > -1");
    bsum += d.b;
  }
  require(std::abs(bsum) <= 1e-12 * std::max<std::size_t>(1, divisor_.size()),
          ErrorCode::InvalidArgument,
          "divisor orders must sum to zero on a torus");
  for (std::size_t i = 0; i < divisor_.size(); ++i)
    for (std::size_t j = i + 1; j < divisor_.size(); ++j) {
      const double d = lattice_distance(point(static_cast<int>(i)),
                                        point(static_cast<int>(j)),
                                        sigma_.sigma());
      require(d >= 1e-3, ErrorCode::InvalidArgument,
              "divisor points closer than the 1e-3 floor");
    }
}

cplx ConicalTorusMetric::point(int k) const {
  require(k >= 0 && k < num_points(), ErrorCode::IndexOutOfRange,
          "divisor index out of range");
  return divisor_[k].u + divisor_[k].v * sigma_.sigma();
}

ConicalTorusMetric ConicalTorusMetric::scaled(double kappa) const {
  require(kappa > 0.0, ErrorCode::InvalidArgument, "kappa must be positive");
  return ConicalTorusMetric(sigma_, kappa * scale_, divisor_);
}

double ConicalTorusMetric::lattice_distance_to_divisor(cplx z) const {
  double d = 1e300;
  for (int k = 0; k < num_points(); ++k)
    d = std::min(d, lattice_distance(z, point(k), sigma_.sigma()));
  return d;
}

double ConicalTorusMetric::log_density(cplx z) const {
  const cplx sigma = sigma_.sigma();
  double log_rho = std::log(scale_);
  double moment = 0.0;  // sum b_k Im p_k
  for (int k = 0; k < num_points(); ++k) {
    const double b = divisor_[k].b;
    if (b == 0.0) continue;
    const cplx th = theta1(z - point(k), sigma_);
    const double a = std::abs(th);
    require(a > 0.0, ErrorCode::EvaluationAtConePoint,
            "density evaluated at a divisor point");
    log_rho += 2.0 * b * std::log(a);
    moment += b * point(k).imag();
  }
  log_rho += 4.0 * kPi * z.imag() * moment / sigma.imag();
  return log_rho;
}

double ConicalTorusMetric::density(cplx z) const {
  // only genuine cones (b != 0) are singular; order-zero entries are inert
  for (int k = 0; k < num_points(); ++k)
    if (divisor_[k].b != 0.0)
      require(lattice_distance(z, point(k), sigma_.sigma()) > 1e-14,
              ErrorCode::EvaluationAtConePoint,
              "density evaluated at a cone point");
  return std::exp(log_density(z));
}

double ConicalTorusMetric::log_density_limit_coeff(int k) const {
  require(k >= 0 && k < num_points(), ErrorCode::IndexOutOfRange,
          "divisor index out of range");
  const cplx pk = point(k);
  double log_h = std::log(scale_);
  double moment = 0.0;
  for (int j = 0; j < num_points(); ++j) {
    const double b = divisor_[j].b;
    moment += b * point(j).imag();
    if (b == 0.0) continue;
    if (j == static_cast<int>(k)) {
      log_h += 2.0 * b * std::log(std::abs(theta1_prime0(sigma_)));
    } else {
      log_h += 2.0 * b * std::log(std::abs(theta1(pk - point(j), sigma_)));
    }
  }
  log_h += 4.0 * kPi * pk.imag() * moment / sigma_.sigma().imag();
  return log_h;
}

std::pair<double, double> ConicalTorusMetric::distinguished_scale(int k) const {
  const double log_h = log_density_limit_coeff(k);
  const double b = divisor_[k].b;
  const double g = std::exp(0.5 * log_h);
  const double f = std::exp(-log_h / (2.0 * (b + 1.0)));
  return {g, f};
}

ConicalTorusMetric::AreaResult ConicalTorusMetric::area(int base_grid,
                                                        int order) const {
  const cplx sigma = sigma_.sigma();
  const int m = std::max(base_grid, 4);

  // Assign each divisor point to the cell it is (nearly) in; cells near a
  // point integrate with a signed singular fan around it.
  auto run = [&](int q) {
    const auto& gl = gauss_legendre(q);
    double total = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double u0 = static_cast<double>(i) / m;
        const double v0 = static_cast<double>(j) / m;
        const double s = 1.0 / m;
        // closest divisor point to the cell center, in cell units
        int owner = -1;
        double best = 1e300;
        const cplx center = (u0 + 0.5 * s) + (v0 + 0.5 * s) * sigma;
        for (int k = 0; k < num_points(); ++k) {
          if (divisor_[k].b == 0.0) continue;
          const double d = lattice_distance(center, point(k), sigma);
          if (d < best) {
            best = d;
            owner = k;
          }
        }
        const double cell_scale = std::abs(s + s * sigma);
        if (owner >= 0 && best < 0.75 * cell_scale) {
          // fan around the owner's representative nearest to the cell center
          cplx p = point(owner);
          cplx best_rep = p;
          double bd = 1e300;
          for (int du = -1; du <= 1; ++du)
            for (int dv = -1; dv <= 1; ++dv) {
              const cplx rep = p + static_cast<double>(du) +
                               static_cast<double>(dv) * sigma;
              if (std::abs(rep - center) < bd) {
                bd = std::abs(rep - center);
                best_rep = rep;
              }
            }
          const cplx c00 = u0 + v0 * sigma;
          const cplx c10 = (u0 + s) + v0 * sigma;
          const cplx c11 = (u0 + s) + (v0 + s) * sigma;
          const cplx c01 = u0 + (v0 + s) * sigma;
          const double b = divisor_[owner].b;
          total += singular_fan_triangle(*this, best_rep, c00, c10, b, q);
          total += singular_fan_triangle(*this, best_rep, c10, c11, b, q);
          total += singular_fan_triangle(*this, best_rep, c11, c01, b, q);
          total += singular_fan_triangle(*this, best_rep, c01, c00, b, q);
        } else {
          const double jac = sigma.imag() * s * s;
          for (std::size_t a = 0; a < gl.nodes.size(); ++a)
            for (std::size_t c = 0; c < gl.nodes.size(); ++c) {
              const double u = u0 + s * 0.5 * (gl.nodes[a] + 1.0);
              const double v = v0 + s * 0.5 * (gl.nodes[c] + 1.0);
              total += 0.25 * gl.weights[a] * gl.weights[c] * jac *
                       std::exp(log_density(u + v * sigma));
            }
        }
      }
    return total;
  };

  AreaResult out;
  const double coarse = run(order);
  const double fine = run(order + 6);
  out.value = fine;
  out.error_estimate = std::abs(fine - coarse) / std::max(1e-300, std::abs(fine));
  require(out.error_estimate < 1e-6, ErrorCode::QuadratureFailure,
          "area quadrature did not converge");
  return out;
}

double polyakov_ratio(const ConicalTorusMetric& m1,
                      const ConicalTorusMetric& m2) {
  require(std::abs(m1.modulus().sigma() - m2.modulus().sigma()) <= 1e-12,
          ErrorCode::InvalidArgument, "metrics live on different tori");
  for (int i = 0; i < m1.num_points(); ++i)
    require(m2.lattice_distance_to_divisor(m1.point(i)) >= 1e-3,
            ErrorCode::DivisorsIntersect,
            "divisors of the two metrics intersect");

  double log_ratio = std::log(m1.area().value) - std::log(m2.area().value);
  // m2 in m1's distinguished parameters at m1's cones:
  // |f_k|^2 = rho_2(P_k) * h1_k^(-1/(a_k+1))
  for (int k = 0; k < m1.num_points(); ++k) {
    const double a = m1.divisor()[k].b;
    const double log_f = 0.5 * (m2.log_density(m1.point(k)) -
                                m1.log_density_limit_coeff(k) / (a + 1.0));
    log_ratio -= (a / 6.0) * log_f;
  }
  // m1 in m2's distinguished parameters at m2's cones
  for (int l = 0; l < m2.num_points(); ++l) {
    const double b = m2.divisor()[l].b;
    const double log_g = 0.5 * (m1.log_density(m2.point(l)) -
                                m2.log_density_limit_coeff(l) / (b + 1.0));
    log_ratio += (b / 6.0) * log_g;
  }
  return std::exp(log_ratio);
}

double mt_predictor(const ConicalTorusMetric& m) {
  const double im = m.modulus().sigma().imag();
  double log_p = std::log(im) + std::log(m.area().value) +
                 4.0 * std::log(std::abs(dedekind_eta(m.modulus())));
  for (int k = 0; k < m.num_points(); ++k) {
    const double b = m.divisor()[k].b;
    // |f_k|^(-b/6) with log|f_k| = -log h_k / (2 (b+1))
    log_p += (b / (12.0 * (b + 1.0))) * m.log_density_limit_coeff(k);
  }
  return std::exp(log_p);
}

double three_polyhedra_product(const ConicalTorusMetric& l,
                               const ConicalTorusMetric& m,
                               const ConicalTorusMetric& n) {
  require(std::abs(l.modulus().sigma() - m.modulus().sigma()) <= 1e-12 &&
              std::abs(m.modulus().sigma() - n.modulus().sigma()) <= 1e-12,
          ErrorCode::InvalidArgument, "metrics live on different tori");
  auto check_disjoint = [](const ConicalTorusMetric& x,
                           const ConicalTorusMetric& y) {
    for (int i = 0; i < x.num_points(); ++i)
      require(y.lattice_distance_to_divisor(x.point(i)) >= 1e-3,
              ErrorCode::DivisorsIntersect, "divisors intersect");
  };
  check_disjoint(l, m);
  check_disjoint(m, n);
  check_disjoint(n, l);

  double log_prod = 0.0;
  // [l/m](R_i)^(c_i) at n's cones
  for (int i = 0; i < n.num_points(); ++i)
    log_prod += n.divisor()[i].b *
                (l.log_density(n.point(i)) - m.log_density(n.point(i)));
  // [m/n](P_j)^(a_j) at l's cones
  for (int j = 0; j < l.num_points(); ++j)
    log_prod += l.divisor()[j].b *
                (m.log_density(l.point(j)) - n.log_density(l.point(j)));
  // [n/l](Q_k)^(b_k) at m's cones
  for (int k = 0; k < m.num_points(); ++k)
    log_prod += m.divisor()[k].b *
                (n.log_density(m.point(k)) - l.log_density(m.point(k)));
  return std::exp(log_prod);
}

ConicalTorusMetric load_metric(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::InvalidDocument, std::string("JSON parse error: ") + e.what());
  }
  require(j.contains("sigma"), ErrorCode::InvalidDocument, "missing 'sigma'");
  const Modulus sigma(cplx(j["sigma"][0].get<double>(), j["sigma"][1].get<double>()));
  const double scale = j.value("scale", 1.0);
  std::vector<DivisorPoint> divisor;
  if (j.contains("divisor"))
    for (const auto& jd : j["divisor"])
      divisor.push_back({jd["u"].get<double>(), jd["v"].get<double>(),
                         jd["b"].get<double>()});
  return ConicalTorusMetric(sigma, scale, divisor);
}

ConicalTorusMetric load_metric_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidDocument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_metric(ss.str());
}

std::string metric_to_json(const ConicalTorusMetric& m) {
  json j;
  j["sigma"] = {m.modulus().sigma().real(), m.modulus().sigma().imag()};
  j["scale"] = m.scale();
  j["divisor"] = json::array();
  for (const auto& d : m.divisor())
    j["divisor"].push_back({{"u", d.u}, {"v", d.v}, {"b", d.b}});
  return j.dump(2);
}

}  // namespace conedet
