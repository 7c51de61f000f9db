#include "conedet/cone_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "conedet/errors.hpp"
#include "conedet/quadrature.hpp"

namespace conedet {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

// cot on the complex plane, stable for large |Im z|.
cplx safe_cot(cplx z) {
  const double y = z.imag();
  if (y > 20.0) {
    const cplx e = std::exp(2.0 * kI * z);  // |e| = exp(-2y), tiny
    return -kI * (1.0 + e) / (1.0 - e);
  }
  if (y < -20.0) {
    const cplx e = std::exp(-2.0 * kI * z);
    return kI * (1.0 + e) / (1.0 - e);
  }
  return std::cos(z) / std::sin(z);
}

// Folded line integrand: 2 Re[ cot(pi(w - pi + iv)/beta) - cot(pi(w + pi + iv)/beta) ].
// The fold over +-v computes the principal value, so real poles on the
// contour do not blow this up.
double folded_bracket(double w, double beta, double v) {
  const cplx a = kPi * (cplx(w - kPi, v)) / beta;
  const cplx b = kPi * (cplx(w + kPi, v)) / beta;
  return 2.0 * (safe_cot(a) - safe_cot(b)).real();
}

// For beta = 2 pi / n the two contour cotangents differ by an argument shift
// of n pi, so the bracket vanishes identically and the image sum alone is the
// kernel.
bool line_integral_vanishes(double beta) {
  const double n = 2.0 * kPi / beta;
  return std::abs(n - std::round(n)) < 1e-12 * std::max(1.0, n);
}

// Distance from the nearest integrand pole to the contour base points
// w -+ pi (poles sit at w + k beta = +- pi).
double pole_distance(double w, double beta) {
  double dist = 1e300;
  for (double sgn : {-1.0, 1.0}) {
    const double target = (sgn * kPi - w) / beta;  // k with w + k beta = sgn pi
    for (double k : {std::floor(target), std::ceil(target)})
      dist = std::min(dist, std::abs(w + k * beta - sgn * kPi));
  }
  return dist;
}

// Panel layout on [0, vmax]: geometric growth from a pole-resolving start.
std::vector<double> panel_edges(double vmax, double pole_dist) {
  std::vector<double> edges = {0.0};
  double v = std::clamp(pole_dist, 1e-6, 1.0);
  while (edges.back() < vmax) {
    edges.push_back(std::min(vmax, edges.back() + v));
    v = std::min(2.0 * v, 1.5);
  }
  return edges;
}

struct LineIntegrand {
  // integrates f(v) * bracket(v) over [0, vmax] with a doubled-order check
  template <typename F>
  static double integrate(const F& f, double w, double beta, double vmax,
                          int order, double abs_tol) {
    const auto edges = panel_edges(vmax, pole_distance(w, beta));
    auto run = [&](int ord) {
      double sum = 0.0;
      const auto& gl = gauss_legendre(ord);
      for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double mid = 0.5 * (edges[p] + edges[p + 1]);
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
          const double v = mid + half * gl.nodes[i];
          sum += half * gl.weights[i] * f(v) * folded_bracket(w, beta, v);
        }
      }
      return sum;
    };
    const double coarse = run(order);
    const double fine = run(2 * order);
    require(std::abs(fine - coarse) <=
                std::max(abs_tol, 1e-11 * std::abs(fine)) + 1e-13,
            ErrorCode::QuadratureFailure,
            "contour quadrature failed its doubled-order check");
    return fine;
  }
};

}  // namespace

ConeParams ConeParams::for_angle(double beta) {
  require(beta > 0.0, ErrorCode::NonpositiveAngle, "cone angle must be positive");
  ConeParams p;
  p.beta = beta;
  return p;
}

double heat_kernel_plane(const Vec2& x, const Vec2& y, double t) {
  require(t > 0.0, ErrorCode::NonpositiveTime, "time must be positive");
  return std::exp(-(x - y).squaredNorm() / (4.0 * t)) / (4.0 * kPi * t);
}

double heat_kernel_cone(const ConeParams& params, double r, double theta,
                        double rho, double psi, double t) {
  const double beta = params.beta;
  require(beta > 0.0, ErrorCode::NonpositiveAngle, "cone angle must be positive");
  require(t > 0.0, ErrorCode::NonpositiveTime, "time must be positive");
  require(r >= 0.0 && rho >= 0.0, ErrorCode::InvalidArgument,
          "radii must be nonnegative");
  require(params.quadrature_order >= 16, ErrorCode::InvalidArgument,
          "quadrature order below contract minimum");

  const double w = std::remainder(theta - psi, beta);
  require(pole_distance(w, beta) > params.image_tol, ErrorCode::BoundaryPole,
          "image angle sits on the contour; perturb theta - psi");

  // Gaussian images: all integers k with |w + k beta| < pi.
  double images = 0.0;
  const int kmin = static_cast<int>(std::ceil((-kPi - w) / beta));
  const int kmax = static_cast<int>(std::floor((kPi - w) / beta));
  for (int k = kmin; k <= kmax; ++k) {
    const double ang = w + k * beta;
    if (std::abs(ang) >= kPi) continue;
    const double d2 = r * r + rho * rho - 2.0 * r * rho * std::cos(ang);
    images += std::exp(-d2 / (4.0 * t)) / (4.0 * kPi * t);
  }

  // Contour part (identically zero for beta = 2 pi / n).
  if (line_integral_vanishes(beta)) return images;
  const double rr = r * rho;
  const double vb = 40.0 * beta / (2.0 * kPi) + params.truncation_margin;
  double vmax = vb;
  if (rr > 0.0) {
    const double arg = 1.0 + 40.0 * t / rr;
    vmax = std::min(vb, std::acosh(arg) + params.truncation_margin);
  }
  const double pre = std::exp(-(r * r + rho * rho) / (4.0 * t)) /
                     (8.0 * kPi * beta * t);
  auto gauss = [&](double v) { return std::exp(-rr * std::cosh(v) / (2.0 * t)); };
  const double line = pre * LineIntegrand::integrate(
                                gauss, w, beta, vmax, params.quadrature_order,
                                1e-12 / std::max(pre, 1e-300));
  return images + line;
}

double trace_defect_closed(double beta) {
  require(beta > 0.0, ErrorCode::NonpositiveAngle, "cone angle must be positive");
  return (2.0 * kPi / beta - beta / (2.0 * kPi)) / 12.0;
}

double trace_defect_numeric(const ConeParams& params, double R, double t) {
  const double beta = params.beta;
  require(beta > 0.0, ErrorCode::NonpositiveAngle, "cone angle must be positive");
  require(t > 0.0, ErrorCode::NonpositiveTime, "time must be positive");
  require(R > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  require(t <= R * R / 20.0, ErrorCode::TimeTooLarge,
          "trace defect needs t <= R^2 / 20");

  // Image part. On the diagonal w = 0, so images are k != 0 with |k beta| < pi,
  // at squared distance 2 r^2 (1 - cos(k beta)); |k beta| = pi carries half
  // weight. The radial integral of exp(-a r^2) r dr is closed form.
  double total = 0.0;
  const double tol = std::max(params.image_tol, 1e-12);
  for (int k = 1; k * beta < kPi + tol; ++k) {
    const double ang = k * beta;
    double weight = 2.0;  // +-k
    if (std::abs(ang - kPi) <= tol)
      weight = 1.0;  // two half residues
    else if (ang > kPi)
      break;
    const double a = (1.0 - std::cos(ang)) / (2.0 * t);
    const double radial = (1.0 - std::exp(-a * R * R)) / (2.0 * a);
    total += beta * weight * radial / (4.0 * kPi * t);
  }

  // Contour part: beta * int_0^R line(r) r dr with
  // line(r) = pre(r) * int g0(v) exp(-r^2 cosh v / 2t) dv and the radial
  // integral folded in closed form. Vanishes identically for beta = 2 pi / n.
  if (line_integral_vanishes(beta)) return total;
  const double vmax = 40.0 * beta / (2.0 * kPi) + params.truncation_margin;
  auto radial_factor = [&](double v) {
    const double a = (1.0 + std::cosh(v)) / (2.0 * t);
    return (1.0 - std::exp(-a * R * R)) / (2.0 * a);
  };
  const double pre = beta / (8.0 * kPi * beta * t);
  total += pre * LineIntegrand::integrate(radial_factor, 0.0, beta, vmax,
                                          params.quadrature_order, 1e-12);
  return total;
}

cplx cone_harmonic(double beta, int k, int sign, double r, double theta) {
  require(beta > 0.0, ErrorCode::NonpositiveAngle, "cone angle must be positive");
  require(k >= 0, ErrorCode::InvalidArgument, "harmonic index must be >= 0");
  require(sign == 1 || sign == -1, ErrorCode::InvalidArgument,
          "sign must be +1 or -1");
  if (k == 0) {
    if (sign == 1) return cplx(1.0, 0.0);
    require(r > 0.0, ErrorCode::InvalidArgument, "log r needs r > 0");
    return cplx(std::log(r), 0.0);
  }
  require(sign == 1 || r > 0.0, ErrorCode::InvalidArgument,
          "negative-exponent harmonic needs r > 0");
  const double nu = 2.0 * kPi * k / beta;
  const double radial = std::pow(r, sign * nu);
  return radial * std::exp(kI * (nu * theta));
}

}  // namespace conedet
