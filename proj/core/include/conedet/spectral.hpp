#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "conedet/eigensolver.hpp"
#include "conedet/surface.hpp"

namespace conedet {

// Short-time heat trace coefficients of a flat conical surface:
//   Tr exp(t Delta) = a_minus1 / t + a_0 + O(exp(-eps/t)).
struct HeatCoefficients {
  double a_minus1 = 0.0;  // Area / 4 pi
  double a_0 = 0.0;       // (1/12) sum_k (2 pi / beta_k - beta_k / 2 pi)
};

HeatCoefficients heat_coefficients(double area,
                                   const std::vector<ConePoint>& cones);

// zeta_Delta(0) in both closed forms; they must agree to rounding or the
// input cones are inconsistent:
//   (1/12) sum (2 pi/beta - beta/2 pi) - 1
//   = (chi/6 - 1) + (1/12) sum (2 pi/beta + beta/2 pi - 2).
double zeta_zero(const std::vector<ConePoint>& cones, int genus);

// Exponent of det under metric scaling m -> kappa m; equals -zeta_zero
// (identity enforced).
double rescaling_exponent(const std::vector<ConePoint>& cones, int genus);

// Heat trace sum_k exp(-lambda_k t) over the whole computed spectrum
// (zero mode included) with a Weyl tail bound. The spectrum must reach
// lambda_max * t >= 30 or the truncation is uncertified.
struct HeatTraceValue {
  double value = 0.0;
  double tail_bound = 0.0;
};
HeatTraceValue heat_trace(const Spectrum& spectrum, double area, double t);

// Split evaluation of zeta'(0) for a spectrum whose positive-mode heat trace
// expands as sum_i c_i t^(p_i) with powers p_i in [-1, 0] near t = 0:
//   zeta'(0) = gamma c_0 + c_0 ln T + sum_{p<0} c_p T^p / p
//              + sum_{lambda>0} E_1(lambda T).
// `expansion` lists (p_i, c_i) pairs including the constant term.
double zeta_prime_zero_split(
    const std::vector<double>& positive_eigs,
    const std::vector<std::pair<double, double>>& expansion, double T);

struct ZetaDetResult {
  double zeta0_numeric = 0.0;
  double zeta0_closed = 0.0;
  double zeta0_error = 0.0;  // error bar on the numeric extraction
  double log_det = 0.0;
  double split_time = 0.0;
  double lambda_max = 0.0;
  double lambda_max_T = 0.0;
  double tail_bound = 0.0;  // Weyl bound on the truncated E_1 tail
};

// log det = -zeta'(0) by the split representation. The spectrum must contain
// the zero mode at index 0; the split time defaults to 35 / lambda_max.
ZetaDetResult log_det(const Spectrum& spectrum, const HeatCoefficients& coeffs,
                      std::optional<double> split_time = {});

// N(lambda) = #{0 < lambda_k <= lambda} plus the crude slope N/lambda.
struct CountingResult {
  int count = 0;
  double slope = 0.0;
};
CountingResult counting_function(const Spectrum& spectrum, double lambda);

// Least-squares slope of N(lambda) over [lo, hi], for comparison with the
// Weyl value Area / 4 pi.
double weyl_slope_fit(const Spectrum& spectrum, double lambda_lo,
                      double lambda_hi);

}  // namespace conedet
