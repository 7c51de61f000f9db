#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "conedet/report.hpp"
#include "conedet/spectral.hpp"
#include "conedet/torus_metric.hpp"

namespace conedet::suites {

struct PipelineOptions {
  int levels = 4;    // refinements; the spectrum is extrapolated from
                     // levels-1 and levels
  int count = 220;   // eigenvalues per level
  int base_n = 8;    // torus grid for metric pipelines
  double min_angle_floor_deg = 0.2;
  std::optional<double> split_time;  // determinant split time override
  EigenOptions eigen{};
};

// Mesh + assemble + eigensolve across the two finest levels.
struct SpectrumBundle {
  Spectrum extrapolated;
  Spectrum fine;
  Spectrum coarse;
  double area = 0.0;  // metric-weighted for conical metrics
  std::vector<ConePoint> cones;
  int genus = 0;
  double mesh_h = 0.0;
  double min_angle_deg = 0.0;
};

SpectrumBundle surface_spectrum(const PolyhedralSurface& surface,
                                const PipelineOptions& opts);
SpectrumBundle metric_spectrum(const ConicalTorusMetric& metric,
                               const PipelineOptions& opts);

ZetaDetResult det_from_bundle(const SpectrumBundle& bundle,
                              std::optional<double> split_time);
ZetaDetResult det_for_surface(const PolyhedralSurface& surface,
                              const PipelineOptions& opts);
ZetaDetResult det_for_metric(const ConicalTorusMetric& metric,
                             const PipelineOptions& opts);

// a_0 fitted from the computed heat trace at the smallest certified time
// above t_floor; compare with heat_coefficients().a_0.
double fitted_a0(const SpectrumBundle& bundle, double t_floor);

// Pinned per-suite pipeline parameters (the CLI starts from these and lets
// flags override).
PipelineOptions ray_singer_defaults();
PipelineOptions mt_defaults();
PipelineOptions rescaling_defaults();
PipelineOptions weyl_defaults();

// ---- verification suites (the acceptance criteria call these) ----

VerificationReport verify_cone_defect(double beta, double t, double radius,
                                      double tol = 1e-6);
VerificationReport verify_cone_defect_standard();  // beta in {pi, 3pi/2, 4pi, 6pi}

VerificationReport verify_carslaw_reduction(std::uint64_t seed = 20240901);

VerificationReport verify_zeta_zero_surface(const PolyhedralSurface& surface,
                                            const PipelineOptions& opts,
                                            double tol = 1e-2);

VerificationReport verify_ray_singer(const PipelineOptions& opts,
                                     double rel_tol = 0.02);

VerificationReport verify_rescaling(const PipelineOptions& opts,
                                    double tol = 1e-3);

VerificationReport verify_mt_constancy(const PipelineOptions& opts,
                                       double rel_spread_tol = 0.02);

VerificationReport verify_three_polyhedra(int trials = 50,
                                          std::uint64_t seed = 20240902,
                                          double tol = 1e-8);
VerificationReport verify_three_polyhedra_files(const std::string& l_path,
                                                const std::string& m_path,
                                                const std::string& n_path,
                                                double tol = 1e-8);

VerificationReport verify_weyl(const PipelineOptions& opts,
                               double rel_tol = 0.05);

// MT check against an externally computed determinant report.
VerificationReport verify_mt_single(const ConicalTorusMetric& metric,
                                    double fem_log_det, double rel_tol);

}  // namespace conedet::suites
