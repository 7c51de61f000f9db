#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conedet/cone_kernel.hpp"
#include "conedet/errors.hpp"
#include "conedet/quadrature.hpp"

using namespace conedet;

namespace {
constexpr double kPi = std::numbers::pi;
std::mt19937_64 rng(987);
double uniform(double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}
}  // namespace

TEST_CASE("plane heat kernel values") {
  const Vec2 x(0.3, -0.4);
  CHECK(heat_kernel_plane(x, x, 1.0) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
  const Vec2 y = x + Vec2(2.0, 0.0);  // |x-y|^2 = 4
  CHECK(heat_kernel_plane(x, y, 1.0) ==
        doctest::Approx(std::exp(-1.0) / (4.0 * kPi)).epsilon(1e-14));
  for (int i = 0; i < 10; ++i) {
    const Vec2 a(uniform(-2, 2), uniform(-2, 2)), b(uniform(-2, 2), uniform(-2, 2));
    const double t = uniform(0.05, 1.0);
    CHECK(heat_kernel_plane(a, b, t) == heat_kernel_plane(b, a, t));
  }
  CHECK_THROWS_AS(heat_kernel_plane(x, y, 0.0), Error);
}

TEST_CASE("beta = 2 pi reduces to the plane kernel") {
  const ConeParams params = ConeParams::for_angle(2.0 * kPi);
  for (int i = 0; i < 50; ++i) {
    const double r = uniform(0.05, 2.0), rho = uniform(0.05, 2.0);
    const double th = uniform(0, 2 * kPi), ps = uniform(0, 2 * kPi);
    const double t = uniform(0.02, 0.8);
    const Vec2 x(r * std::cos(th), r * std::sin(th));
    const Vec2 y(rho * std::cos(ps), rho * std::sin(ps));
    CHECK(std::abs(heat_kernel_cone(params, r, th, rho, ps, t) -
                   heat_kernel_plane(x, y, t)) < 1e-10);
  }
}

TEST_CASE("beta = 2 pi / n matches the n-image rotation sum") {
  for (int n : {1, 2, 3, 4}) {
    const double beta = 2.0 * kPi / n;
    const ConeParams params = ConeParams::for_angle(beta);
    for (int i = 0; i < 25; ++i) {
      const double r = uniform(0.1, 1.6), rho = uniform(0.1, 1.6);
      const double th = uniform(0.01, beta * 0.99), ps = uniform(0.01, beta * 0.99);
      const double t = uniform(0.03, 0.5);
      double oracle = 0.0;
      const Vec2 x(r * std::cos(th), r * std::sin(th));
      for (int j = 0; j < n; ++j) {
        const double ang = ps + j * beta;
        const Vec2 yj(rho * std::cos(ang), rho * std::sin(ang));
        oracle += heat_kernel_plane(x, yj, t);
      }
      double got = 0.0;
      bool boundary = false;
      try {
        got = heat_kernel_cone(params, r, th, rho, ps, t);
      } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::BoundaryPole);
        boundary = true;  // measure-zero configuration, skip
      }
      if (!boundary) CHECK(std::abs(got - oracle) < 1e-12 * std::max(1.0, oracle));
    }
  }
}

TEST_CASE("kernel symmetry, positivity and angular periodicity") {
  for (double beta : {0.5 * kPi, kPi, 1.5 * kPi, 2.0 * kPi, 3.0 * kPi, 4.0 * kPi,
                      6.0 * kPi}) {
    const ConeParams params = ConeParams::for_angle(beta);
    for (int i = 0; i < 12; ++i) {
      const double r = uniform(0.1, 1.5), rho = uniform(0.1, 1.5);
      const double th = uniform(0, beta), ps = uniform(0, beta);
      const double t = uniform(0.05, 0.6);
      double v1;
      try {
        v1 = heat_kernel_cone(params, r, th, rho, ps, t);
      } catch (const Error&) {
        continue;  // boundary pole; measure zero
      }
      const double v2 = heat_kernel_cone(params, rho, ps, r, th, t);
      CHECK(std::abs(v1 - v2) <= 1e-12 * std::max(1.0, std::abs(v1)));
      CHECK(v1 > 0.0);
      const double v3 = heat_kernel_cone(params, r, th + beta, rho, ps, t);
      CHECK(std::abs(v1 - v3) <= 1e-12 * std::max(1.0, std::abs(v1)));
    }
  }
}

TEST_CASE("semigroup smoke test by quadrature composition") {
  const double beta = 3.0 * kPi;
  ConeParams params = ConeParams::for_angle(beta);
  const double t1 = 0.12, t2 = 0.08;
  const double r = 0.8, th = 0.37, rho = 0.6, ps = 2.11;
  const double target = heat_kernel_cone(params, r, th, rho, ps, t1 + t2);

  // integrate H(x,z;t1) H(z,y;t2) over the cone, truncated radially
  const double R = 6.0;
  const int nr = 48, na = 72;
  const auto& gl = gauss_legendre(nr);
  double total = 0.0;
  for (int ia = 0; ia < na; ++ia) {
    const double az = beta * (ia + 0.5) / na;
    for (int ir = 0; ir < nr; ++ir) {
      const double rz = 0.5 * R * (gl.nodes[ir] + 1.0);
      const double w = 0.5 * R * gl.weights[ir] * (beta / na) * rz;
      total += w * heat_kernel_cone(params, r, th, rz, az, t1) *
               heat_kernel_cone(params, rz, az, rho, ps, t2);
    }
  }
  CHECK(std::abs(total - target) < 1e-4);
}

TEST_CASE("trace defect matches the closed form") {
  struct Row {
    double beta, expect;
  };
  // (1/12)(2 pi / beta - beta / 2 pi)
  const Row rows[] = {{kPi, 0.125},
                      {1.5 * kPi, 7.0 / 144.0},
                      {4.0 * kPi, -0.125},
                      {6.0 * kPi, -2.0 / 9.0}};
  for (const Row& row : rows) {
    const ConeParams params = ConeParams::for_angle(row.beta);
    CHECK(trace_defect_closed(row.beta) == doctest::Approx(row.expect).epsilon(1e-14));
    const double numeric = trace_defect_numeric(params, 1.0, 0.01);
    CHECK(std::abs(numeric - row.expect) <= 1e-6);
  }
  CHECK(trace_defect_closed(2.0 * kPi) == doctest::Approx(0.0));
  CHECK(trace_defect_numeric(ConeParams::for_angle(2.0 * kPi), 1.0, 0.01) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("trace defect converges exponentially as t -> 0") {
  const ConeParams params = ConeParams::for_angle(3.0 * kPi);
  const double closed = trace_defect_closed(3.0 * kPi);
  double prev_err = 1e300;
  for (double t : {0.04, 0.02, 0.01}) {
    const double err = std::abs(trace_defect_numeric(params, 1.0, t) - closed);
    // at least linear decay of log|error| in 1/t, down to rounding noise
    CHECK((err <= prev_err * 0.05 || err < 5e-14));
    prev_err = std::max(err, 5e-14);
  }
}

TEST_CASE("trace defect guards") {
  const ConeParams params = ConeParams::for_angle(kPi);
  CHECK_THROWS_AS(trace_defect_numeric(params, 1.0, 0.2), Error);   // t > R^2/20
  CHECK_THROWS_AS(trace_defect_numeric(params, 1.0, -0.1), Error);  // t <= 0
  CHECK_THROWS_AS(trace_defect_closed(-1.0), Error);
  CHECK_THROWS_AS(ConeParams::for_angle(0.0), Error);
}

TEST_CASE("boundary pole refusal") {
  const ConeParams params = ConeParams::for_angle(3.0 * kPi);
  // theta - psi = pi puts the k = 0 image on the contour
  try {
    heat_kernel_cone(params, 1.0, kPi, 1.0, 0.0, 0.1);
    FAIL("expected BoundaryPole");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundaryPole);
  }
}

TEST_CASE("cone harmonics") {
  CHECK(cone_harmonic(3.0 * kPi, 0, +1, 0.7, 1.3) == cplx(1.0, 0.0));
  CHECK(cone_harmonic(3.0 * kPi, 0, -1, std::exp(1.0), 0.2).real() ==
        doctest::Approx(1.0).epsilon(1e-14));

  // five-point finite-difference harmonicity of Re V_+^1 on the beta = 3 pi
  // chart (angle coordinate scaled so the chart is locally Euclidean)
  const double beta = 3.0 * kPi;
  auto f = [&](double x, double y) {
    const double r = std::hypot(x, y);
    const double th = std::atan2(y, x);
    return cone_harmonic(beta, 1, +1, r, th).real();
  };
  const double x0 = 0.9, y0 = 0.5;
  double prev = 1e300;
  for (double h : {0.02, 0.01}) {
    const double lap = (f(x0 + h, y0) + f(x0 - h, y0) + f(x0, y0 + h) +
                        f(x0, y0 - h) - 4.0 * f(x0, y0)) /
                       (h * h);
    CHECK(std::abs(lap) < 0.01);
    CHECK(std::abs(lap) < prev * 0.3 + 1e-12);  // O(h^2) decay
    prev = std::abs(lap);
  }
  CHECK_THROWS_AS(cone_harmonic(kPi, 1, -1, 0.0, 0.0), Error);
  CHECK_THROWS_AS(cone_harmonic(kPi, -1, 1, 1.0, 0.0), Error);
}
