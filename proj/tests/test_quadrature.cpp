#include <doctest.h>

#include <cmath>

#include "conedet/quadrature.hpp"

using namespace conedet;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int order : {2, 5, 8, 16, 24}) {
    for (int k = 0; k <= 2 * order - 1; ++k) {
      const double got = gl_integrate([k](double x) { return std::pow(x, k); },
                                      0.0, 1.0, order);
      CHECK(got == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("composite rule matches a known transcendental integral") {
  const double got = gl_composite([](double x) { return std::exp(-x * x); },
                                  0.0, 3.0, 6, 16);
  CHECK(got == doctest::Approx(0.5 * std::sqrt(M_PI) * std::erf(3.0)).epsilon(1e-14));
}

TEST_CASE("degree-6 triangle rule is exact for monomials up to degree 6") {
  const auto& rule = triangle_rule_degree6();
  double wsum = 0.0;
  for (const auto& p : rule.points) wsum += p.weight;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));

  // int over the reference triangle of x^a y^b = a! b! / (a + b + 2)!
  auto factorial = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b) {
      double got = 0.0;
      for (const auto& p : rule.points)
        got += p.weight * std::pow(p.l1, a) * std::pow(p.l2, b);
      got *= 0.5;  // reference triangle area
      const double expect = factorial(a) * factorial(b) / factorial(a + b + 2);
      CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("power-weighted radial rule is exact for polynomial factors") {
  for (double b : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.0}) {
    const auto rule = power_radial_rule(b, 8);
    // g = s^k: int s^(2b+1+k) = 1/(2b+2+k), exact up to k = 15
    for (int k = 0; k <= 15; ++k) {
      double got = 0.0;
      for (std::size_t i = 0; i < rule.s.size(); ++i)
        got += rule.w[i] * std::pow(rule.s[i], k);
      CHECK(got == doctest::Approx(1.0 / (2.0 * b + 2.0 + k)).epsilon(1e-12));
    }
    // and high accuracy for a transcendental factor: the series oracle
    // int_0^1 s^beta e^(-s) ds = sum_k (-1)^k / (k! (beta + k + 1))
    double got = 0.0;
    for (std::size_t i = 0; i < rule.s.size(); ++i)
      got += rule.w[i] * std::exp(-rule.s[i]);
    const double beta = 2.0 * b + 1.0;
    double oracle = 0.0, factorial = 1.0;
    for (int k = 0; k < 30; ++k) {
      if (k > 0) factorial *= k;
      oracle += (k % 2 == 0 ? 1.0 : -1.0) / (factorial * (beta + k + 1.0));
    }
    CHECK(got == doctest::Approx(oracle).epsilon(1e-12));
  }
}
