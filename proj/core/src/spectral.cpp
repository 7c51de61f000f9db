#include "conedet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conedet/errors.hpp"

namespace conedet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209;

double exp_integral_e1(double x) {
  require(x > 0.0, ErrorCode::InvalidArgument, "E1 needs a positive argument");
  return -std::expint(-x);
}

void check_gauss_bonnet(const std::vector<ConePoint>& cones, int genus) {
  double sum = 0.0;
  for (const auto& c : cones) {
    require(c.angle > 0.0, ErrorCode::NonpositiveAngle, "cone angle <= 0");
    sum += c.order;
  }
  require(std::abs(sum - (2.0 * genus - 2.0)) < 1e-9,
          ErrorCode::GaussBonnetViolation,
          "sum of cone orders does not match 2g - 2");
}

std::vector<double> positive_modes(const Spectrum& spectrum) {
  require(spectrum.count() >= 2, ErrorCode::InvalidArgument,
          "spectrum too short");
  // index 0 is the zero mode by the Spectrum contract
  return {spectrum.eigenvalues.begin() + 1, spectrum.eigenvalues.end()};
}

}  // namespace

HeatCoefficients heat_coefficients(double area,
                                   const std::vector<ConePoint>& cones) {
  HeatCoefficients c;
  c.a_minus1 = area / (4.0 * kPi);
  c.a_0 = 0.0;
  for (const auto& cone : cones)
    c.a_0 += (2.0 * kPi / cone.angle - cone.angle / (2.0 * kPi)) / 12.0;
  return c;
}

double zeta_zero(const std::vector<ConePoint>& cones, int genus) {
  check_gauss_bonnet(cones, genus);
  double direct = -1.0;
  for (const auto& c : cones)
    direct += (2.0 * kPi / c.angle - c.angle / (2.0 * kPi)) / 12.0;

  const double chi = 2.0 - 2.0 * genus;
  double euler_form = chi / 6.0 - 1.0;
  for (const auto& c : cones)
    euler_form += (2.0 * kPi / c.angle + c.angle / (2.0 * kPi) - 2.0) / 12.0;

  require(std::abs(direct - euler_form) <= 1e-12 * std::max(1.0, std::abs(direct)),
          ErrorCode::InconsistentCoefficients,
          "the two closed forms of zeta(0) disagree");
  return direct;
}

double rescaling_exponent(const std::vector<ConePoint>& cones, int genus) {
  check_gauss_bonnet(cones, genus);
  const double chi = 2.0 - 2.0 * genus;
  double exponent = -(chi / 6.0 - 1.0);
  for (const auto& c : cones)
    exponent -= (2.0 * kPi / c.angle + c.angle / (2.0 * kPi) - 2.0) / 12.0;
  require(std::abs(exponent + zeta_zero(cones, genus)) <=
              1e-12 * std::max(1.0, std::abs(exponent)),
          ErrorCode::InconsistentCoefficients,
          "rescaling exponent does not match -zeta(0)");
  return exponent;
}

HeatTraceValue heat_trace(const Spectrum& spectrum, double area, double t) {
  require(t > 0.0, ErrorCode::NonpositiveTime, "time must be positive");
  const double lmax = spectrum.max_eigenvalue();
  require(lmax * t >= 30.0, ErrorCode::TruncationUncertified,
          "need lambda_max * t >= 30 for a certified truncation");
  HeatTraceValue out;
  // summed smallest-first for stable rounding
  for (int i = spectrum.count() - 1; i >= 0; --i)
    out.value += std::exp(-spectrum.eigenvalues[i] * t);
  out.tail_bound = area / (4.0 * kPi) * std::exp(-lmax * t) / t;
  return out;
}

double zeta_prime_zero_split(
    const std::vector<double>& positive_eigs,
    const std::vector<std::pair<double, double>>& expansion, double T) {
  require(T > 0.0, ErrorCode::InvalidArgument, "split time must be positive");
  double c0 = 0.0;
  double sum = 0.0;
  for (const auto& [p, c] : expansion) {
    require(p <= 1e-12 && p >= -1.0 - 1e-12, ErrorCode::InvalidArgument,
            "expansion powers must lie in [-1, 0]");
    if (std::abs(p) < 1e-12)
      c0 += c;
    else
      sum += c * std::pow(T, p) / p;
  }
  sum += kEulerGamma * c0 + c0 * std::log(T);
  for (double l : positive_eigs) {
    require(l > 0.0, ErrorCode::InvalidArgument,
            "positive spectrum contains a nonpositive value");
    sum += exp_integral_e1(l * T);
  }
  return sum;
}

ZetaDetResult log_det(const Spectrum& spectrum, const HeatCoefficients& coeffs,
                      std::optional<double> split_time) {
  const std::vector<double> eigs = positive_modes(spectrum);
  const double lmax = eigs.back();
  const double T = split_time.value_or(35.0 / lmax);
  require(lmax * T >= 30.0, ErrorCode::TruncationUncertified,
          "split time too small for the computed spectrum");

  const double c0 = coeffs.a_0 - 1.0;
  const double zp = zeta_prime_zero_split(
      eigs, {{-1.0, coeffs.a_minus1}, {0.0, c0}}, T);

  ZetaDetResult out;
  out.zeta0_closed = c0;
  out.log_det = -zp;
  out.split_time = T;
  out.lambda_max = lmax;
  out.lambda_max_T = lmax * T;
  // Weyl bound on the dropped tail sum_{lambda > lmax} E1(lambda T):
  // (Area / 4 pi T) * (exp(-x) - x E1(x)) at x = lmax T.
  const double x = lmax * T;
  out.tail_bound = (coeffs.a_minus1 / T) *
                   (std::exp(-x) - x * exp_integral_e1(x));

  // zeta(0) extracted from the same data: Tr - a_minus1 / t - 1 at t = T and
  // a drift check at 2T.
  auto zeta0_at = [&](double t) {
    double tr = 1.0;  // zero mode
    for (auto it = eigs.rbegin(); it != eigs.rend(); ++it)
      tr += std::exp(-*it * t);
    return tr - coeffs.a_minus1 / t - 1.0;
  };
  const double z1 = zeta0_at(T);
  const double z2 = zeta0_at(2.0 * T);
  out.zeta0_numeric = z1;
  out.zeta0_error = 3.0 * std::abs(z1 - z2) + out.tail_bound + 1e-10;
  return out;
}

CountingResult counting_function(const Spectrum& spectrum, double lambda) {
  require(lambda <= spectrum.max_eigenvalue(), ErrorCode::InvalidArgument,
          "threshold above the certified spectral range");
  CountingResult out;
  // index 0 is the zero mode by the Spectrum contract
  for (int i = 1; i < spectrum.count(); ++i)
    if (spectrum.eigenvalues[i] <= lambda) ++out.count;
  out.slope = lambda > 0.0 ? out.count / lambda : 0.0;
  return out;
}

double weyl_slope_fit(const Spectrum& spectrum, double lambda_lo,
                      double lambda_hi) {
  require(lambda_hi > lambda_lo && lambda_lo > 0.0, ErrorCode::InvalidArgument,
          "bad Weyl window");
  require(lambda_hi <= spectrum.max_eigenvalue(), ErrorCode::InvalidArgument,
          "Weyl window above the certified spectral range");
  const int samples = 64;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < samples; ++i) {
    const double lam = lambda_lo + (lambda_hi - lambda_lo) * i / (samples - 1.0);
    double count = 0.0;
    for (int k = 1; k < spectrum.count(); ++k)
      if (spectrum.eigenvalues[k] <= lam) count += 1.0;
    sx += lam;
    sy += count;
    sxx += lam * lam;
    sxy += lam * count;
  }
  return (samples * sxy - sx * sy) / (samples * sxx - sx * sx);
}

}  // namespace conedet
