#pragma once

#include <complex>

namespace conedet {

using cplx = std::complex<double>;

// Lattice modulus sigma with Im(sigma) > 0, the shape parameter of the
// lattice <1, sigma>. Construction validates the half-plane condition.
class Modulus {
 public:
  explicit Modulus(cplx sigma);

  cplx sigma() const { return sigma_; }
  // nome q = exp(2*pi*i*sigma), |q| < 1
  cplx nome() const;

 private:
  cplx sigma_;
};

// Dedekind eta(sigma) = q^(1/24) prod_{n>=1} (1 - q^n), q = exp(2*pi*i*sigma).
// sigma is mapped into the fundamental domain first (T: sigma+1, S: -1/sigma)
// so the product converges with a uniform budget; the eta multiplier system
// undoes the reduction. Relative accuracy ~1e-14 in practice.
cplx dedekind_eta(const Modulus& sigma);

// Jacobi theta_1(z | sigma) = 2 sum_{n>=0} (-1)^n qh^((n+1/2)^2) sin((2n+1) pi z),
// qh = exp(i*pi*sigma). z is reduced modulo the lattice <1, sigma> with the
// quasi-periodicity multipliers applied, so the series stays well conditioned
// for any z.
cplx theta1(cplx z, const Modulus& sigma);

// d/dz theta_1(z | sigma) at z = 0. Satisfies theta1'(0) = 2 pi eta(sigma)^3.
cplx theta1_prime0(const Modulus& sigma);

}  // namespace conedet
