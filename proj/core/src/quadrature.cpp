#include "conedet/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "conedet/errors.hpp"

namespace conedet {

namespace {

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on Legendre polynomials, symmetric pairs.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), derivative from the standard recurrence
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  require(order >= 1 && order <= 4096, ErrorCode::InvalidArgument,
          "Gauss-Legendre order out of range");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int order) {
  const auto& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

double gl_composite(const std::function<double(double)>& f, double a, double b,
                    int panels, int order) {
  require(panels >= 1, ErrorCode::InvalidArgument, "need at least one panel");
  double sum = 0.0;
  const double step = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    sum += gl_integrate(f, a + p * step, a + (p + 1) * step, order);
  return sum;
}

const TriangleRule& triangle_rule_degree6() {
  static const TriangleRule rule = [] {
    TriangleRule r;
    r.degree = 6;
    auto push3 = [&r](double a, double w) {
      const double c = 1.0 - 2.0 * a;
      r.points.push_back({c, a, a, w});
      r.points.push_back({a, c, a, w});
      r.points.push_back({a, a, c, w});
    };
    auto push6 = [&r](double a, double b, double w) {
      const double c = 1.0 - a - b;
      r.points.push_back({a, b, c, w});
      r.points.push_back({a, c, b, w});
      r.points.push_back({b, a, c, w});
      r.points.push_back({b, c, a, w});
      r.points.push_back({c, a, b, w});
      r.points.push_back({c, b, a, w});
    };
    // 12-point degree-6 rule (Dunavant). Weights normalized to sum to 1.
    push3(0.063089014491502, 0.050844906370207);
    push3(0.249286745170910, 0.116786275726379);
    push6(0.053145049844817, 0.310352451033784, 0.082851075618374);
    return r;
  }();
  return rule;
}

PowerRadialRule power_radial_rule(double b, int order) {
  require(b > -1.0, ErrorCode::DensityNotIntegrable,
          "radial power weight needs exponent > -1");
  require(order >= 1 && order <= 128, ErrorCode::InvalidArgument,
          "radial rule order out of range");
  // Gauss-Jacobi via Golub-Welsch for the weight (1+x)^beta on [-1,1],
  // beta = 2b+1, mapped to s = (1+x)/2.
  const double beta = 2.0 * b + 1.0;
  const int n = order;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double ab = beta;  // alpha + beta with alpha = 0
    const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    J(k, k) = den == 0.0 ? 0.0 : beta * beta / den;
    if (k >= 1) {
      const double m = 2.0 * k + ab;
      const double num = 4.0 * k * k * (k + beta) * (k + beta);
      const double off2 = num / (m * m * (m + 1.0) * (m - 1.0));
      J(k, k - 1) = J(k - 1, k) = std::sqrt(off2);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  require(es.info() == Eigen::Success, ErrorCode::QuadratureFailure,
          "Gauss-Jacobi eigensolve failed");
  // mu0 = int (1+x)^beta dx = 2^(beta+1) / (beta+1); the [0,1] map divides
  // the weights by 2^(beta+1)
  const double scale = 1.0 / (beta + 1.0) / 1.0;
  PowerRadialRule rule;
  rule.s.resize(n);
  rule.w.resize(n);
  double wsum = 0.0;
  for (int i = 0; i < n; ++i) {
    rule.s[i] = 0.5 * (es.eigenvalues()[i] + 1.0);
    const double v0 = es.eigenvectors()(0, i);
    rule.w[i] = v0 * v0;  // relative weights; normalized below
    wsum += rule.w[i];
  }
  for (int i = 0; i < n; ++i) rule.w[i] *= scale / wsum;
  return rule;
}

}  // namespace conedet
