#include "conedet/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "conedet/errors.hpp"

namespace conedet {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

// One move of the reduction walk towards the fundamental domain
// |Re| <= 1/2, |sigma| >= 1. Returns false once sigma is reduced.
struct Move {
  int shift = 0;     // sigma -> sigma - shift
  bool invert = false;  // sigma -> -1/sigma
};

bool next_move(cplx sigma, Move& mv) {
  const double re = sigma.real();
  if (std::abs(re) > 0.5 + 1e-15) {
    mv.shift = static_cast<int>(std::lround(re));
    mv.invert = false;
    return true;
  }
  if (std::abs(sigma) < 1.0 - 1e-15) {
    mv.shift = 0;
    mv.invert = true;
    return true;
  }
  return false;
}

// Kahan-compensated accumulation of complex terms.
struct CompensatedSum {
  cplx sum{0.0, 0.0};
  cplx comp{0.0, 0.0};
  void add(cplx term) {
    const cplx y = term - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Direct eta product; intended for sigma with Im >= sqrt(3)/2.
cplx eta_product(cplx sigma) {
  const cplx q = std::exp(2.0 * kPi * kI * sigma);
  CompensatedSum logsum;
  cplx qn = q;
  for (int n = 1; n <= 512; ++n) {
    if (std::abs(qn) < 1e-20) break;
    logsum.add(std::log(cplx(1.0, 0.0) - qn));
    qn *= q;
  }
  return std::exp(kPi * kI * sigma / 12.0 + logsum.sum);
}

// Reduce z modulo the lattice <1, sigma> to the centered cell and return the
// quasi-periodicity multiplier:
//   theta1(z | sigma) = mult * theta1(zr | sigma).
cplx lattice_reduce(cplx z, cplx sigma, cplx& zr) {
  const double v = z.imag() / sigma.imag();
  const double u = z.real() - v * sigma.real();
  const double m = std::floor(u + 0.5);
  const double n = std::floor(v + 0.5);
  zr = z - m - n * sigma;
  if (m == 0.0 && n == 0.0) return cplx(1.0, 0.0);
  // theta1(zr + m + n sigma) = (-1)^(m+n) exp(-i pi n^2 sigma - 2 pi i n zr) theta1(zr)
  cplx mult = std::exp(-kI * kPi * n * n * sigma - 2.0 * kPi * kI * n * zr);
  if (std::lround(m + n) % 2 != 0) mult = -mult;
  return mult;
}

cplx theta1_series(cplx z, cplx sigma) {
  CompensatedSum acc;
  double scale = 0.0;
  for (int n = 0; n < 64; ++n) {
    const double half = n + 0.5;
    cplx term = std::exp(kI * kPi * sigma * half * half) *
                std::sin((2.0 * n + 1.0) * kPi * z);
    if (n % 2 != 0) term = -term;
    acc.add(term);
    scale = std::max(scale, std::abs(acc.sum));
    if (n >= 2 && std::abs(term) < 1e-16 * std::max(scale, 1e-300)) break;
  }
  return 2.0 * acc.sum;
}

cplx theta1_prime0_series(cplx sigma) {
  CompensatedSum acc;
  double scale = 0.0;
  for (int n = 0; n < 64; ++n) {
    const double half = n + 0.5;
    cplx term = (2.0 * n + 1.0) * std::exp(kI * kPi * sigma * half * half);
    if (n % 2 != 0) term = -term;
    acc.add(term);
    scale = std::max(scale, std::abs(acc.sum));
    if (n >= 2 && std::abs(term) < 1e-16 * std::max(scale, 1e-300)) break;
  }
  return 2.0 * kPi * acc.sum;
}

}  // namespace

Modulus::Modulus(cplx sigma) : sigma_(sigma) {
  require(sigma.imag() > 0.0, ErrorCode::LowerHalfPlane,
          "modulus must have positive imaginary part");
}

cplx Modulus::nome() const { return std::exp(2.0 * kPi * kI * sigma_); }

cplx dedekind_eta(const Modulus& sigma) {
  cplx s = sigma.sigma();
  cplx pre(1.0, 0.0);
  Move mv;
  for (int guard = 0; guard < 256 && next_move(s, mv); ++guard) {
    if (mv.invert) {
      // eta(sigma) = eta(-1/sigma) / sqrt(-i sigma)
      pre /= std::sqrt(-kI * s);
      s = -1.0 / s;
    } else {
      // eta(sigma) = exp(i pi shift / 12) eta(sigma - shift)
      pre *= std::exp(kI * kPi * static_cast<double>(mv.shift) / 12.0);
      s -= static_cast<double>(mv.shift);
    }
  }
  return pre * eta_product(s);
}

cplx theta1(cplx z, const Modulus& sigma) {
  cplx s = sigma.sigma();
  // Keep z bounded before walking sigma so the Gaussian factors cannot blow up.
  cplx zr;
  cplx mult = lattice_reduce(z, s, zr);
  z = zr;

  Move mv;
  for (int guard = 0; guard < 256 && next_move(s, mv); ++guard) {
    if (mv.invert) {
      // theta1(z | sigma) = i (-i sigma)^(-1/2) exp(-i pi z^2 / sigma)
      //                     * theta1(z/sigma | -1/sigma)
      mult *= kI / std::sqrt(-kI * s) * std::exp(-kI * kPi * z * z / s);
      z /= s;
      s = -1.0 / s;
    } else {
      // theta1(z | sigma) = exp(i pi shift / 4) theta1(z | sigma - shift)
      mult *= std::exp(kI * kPi * static_cast<double>(mv.shift) / 4.0);
      s -= static_cast<double>(mv.shift);
    }
    cplx zr2;
    mult *= lattice_reduce(z, s, zr2);
    z = zr2;
  }
  return mult * theta1_series(z, s);
}

cplx theta1_prime0(const Modulus& sigma) {
  cplx s = sigma.sigma();
  cplx pre(1.0, 0.0);
  Move mv;
  for (int guard = 0; guard < 256 && next_move(s, mv); ++guard) {
    if (mv.invert) {
      // theta1'(0 | sigma) = (-i sigma)^(-3/2) theta1'(0 | -1/sigma)
      const cplx root = std::sqrt(-kI * s);
      pre /= root * root * root;
      s = -1.0 / s;
    } else {
      pre *= std::exp(kI * kPi * static_cast<double>(mv.shift) / 4.0);
      s -= static_cast<double>(mv.shift);
    }
  }
  return pre * theta1_prime0_series(s);
}

}  // namespace conedet
