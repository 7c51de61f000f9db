#pragma once

#include <complex>

#include <Eigen/Core>

namespace conedet {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;

// Parameters of the infinite cone C_beta and of the contour quadrature used
// to evaluate its heat kernel.
struct ConeParams {
  double beta = 2.0 * 3.14159265358979323846;
  int quadrature_order = 24;      // Gauss-Legendre order per panel (>= 16)
  double truncation_margin = 5.0; // added to the decay-based cutoff height
  double image_tol = 1e-9;        // pole-on-contour detection tolerance

  static ConeParams for_angle(double beta);
};

// (1/4 pi t) exp(-|x-y|^2 / 4t), the plane heat kernel.
double heat_kernel_plane(const Vec2& x, const Vec2& y, double t);

// Heat kernel of C_beta in polar coordinates: the sum of Gaussian image
// terms over rotations theta - psi + k beta inside (-pi, pi), plus two
// vertical-line contour integrals along Re(alpha - theta) = +/- pi where the
// integrand decays like exp(-r rho cosh(v) / 2t). Symmetric in the two
// points, beta-periodic in the angles. Refuses (BoundaryPole) when an image
// angle sits on the contour within image_tol.
double heat_kernel_cone(const ConeParams& params, double r, double theta,
                        double rho, double psi, double t);

// integral over C_beta(R) of (H_beta(x,x;t) - 1/4 pi t) dx. The radial
// integral of every term is done in closed form; the remaining contour
// integral uses the same graded Gauss-Legendre panels as the kernel. Angles
// theta - psi = 0 on the diagonal put poles exactly on the contour for
// beta = pi/k; those contribute half residues (the principal value is what
// the folded real part computes, and the half images are added explicitly).
double trace_defect_numeric(const ConeParams& params, double R, double t);

// (1/12)(2 pi / beta - beta / 2 pi)
double trace_defect_closed(double beta);

// Cone harmonics V_+-^k: r^(+-2 pi k / beta) exp(i 2 pi k theta / beta) for
// k > 0; V_+^0 = 1, V_-^0 = log r.
cplx cone_harmonic(double beta, int k, int sign, double r, double theta);

}  // namespace conedet
