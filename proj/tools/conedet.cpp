// conedet: spectra, heat traces and zeta determinants of Laplacians on
// compact polyhedral surfaces, plus the formula verification suites.

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "conedet/cone_kernel.hpp"
#include "conedet/errors.hpp"
#include "conedet/parallel.hpp"
#include "conedet/special_functions.hpp"
#include "conedet/suites.hpp"
#include "conedet/surface.hpp"

namespace {

using json = nlohmann::json;
using namespace conedet;

cplx parse_complex(const std::string& s) {
  std::istringstream ss(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  ss >> re >> comma >> im;
  require(!ss.fail() && comma == ',', ErrorCode::InvalidArgument,
          "expected 're,im', got '" + s + "'");
  return {re, im};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text << "\n";
  else
    write_file_atomic(out_path, text + "\n");
}

struct Timing {
  bool enabled = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

int finish_report(VerificationReport rep, const std::string& out_path,
                  const Timing& timing) {
  if (timing.enabled) {
    const double per = rep.checks.empty() ? 0.0 : timing.ms() / rep.checks.size();
    for (auto& c : rep.checks) c.runtime_ms = per;
  }
  emit(rep.to_json(), out_path);
  return rep.overall_pass() ? 0 : 1;
}

json det_to_json(const ZetaDetResult& det, std::optional<double> tol) {
  json j;
  j["log_det"] = det.log_det;
  j["det"] = std::exp(det.log_det);
  j["zeta0_numeric"] = det.zeta0_numeric;
  j["zeta0_closed"] = det.zeta0_closed;
  j["zeta0_error"] = det.zeta0_error;
  j["split_time"] = det.split_time;
  j["lambda_max"] = det.lambda_max;
  j["lambda_max_T"] = det.lambda_max_T;
  j["tail_bound"] = det.tail_bound;
  if (tol) {
    j["requested_tol"] = *tol;
    j["tail_within_tol"] = det.tail_bound < *tol;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplacian spectra and zeta determinants on flat conical surfaces"};
  app.require_subcommand(1);

  int threads = 0;
  if (const char* env = std::getenv("CONEDET_THREADS")) threads = std::atoi(env);
  app.add_option("--threads", threads,
                 "worker thread cap (0 = hardware concurrency; env CONEDET_THREADS)");
  bool timing = false;
  app.add_flag("--timing", timing,
               "include runtime_ms in reports (off by default so identical "
               "inputs give byte-identical output)");

  std::string surface_path, metric_path, out_path;
  suites::PipelineOptions pipe;

  auto add_pipeline_flags = [&](CLI::App* cmd, const suites::PipelineOptions& defaults) {
    pipe = defaults;
    cmd->add_option("--levels", pipe.levels, "mesh refinement levels");
    cmd->add_option("--count", pipe.count, "eigenvalue count per level");
    cmd->add_option("--base-n", pipe.base_n, "base torus grid for metric runs");
  };

  // ---- surface info ----
  auto* cmd_surface = app.add_subcommand("surface", "surface inspection");
  auto* cmd_info = cmd_surface->add_subcommand("info", "validate and describe a surface");
  cmd_info->add_option("--surface", surface_path, "surface JSON")->required();
  cmd_info->add_option("--out", out_path, "write JSON here instead of stdout");

  // ---- spectrum ----
  auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenvalues to CSV");
  cmd_spectrum->add_option("--surface", surface_path, "surface JSON")->required();
  add_pipeline_flags(cmd_spectrum, {});
  std::string csv_path;
  cmd_spectrum->add_option("--out", csv_path, "CSV output path");

  // ---- heat-trace ----
  auto* cmd_trace = app.add_subcommand("heat-trace", "heat trace at given times");
  cmd_trace->add_option("--surface", surface_path, "surface JSON")->required();
  std::vector<double> trace_times{0.05};
  cmd_trace->add_option("--t", trace_times, "times");
  cmd_trace->add_option("--levels", pipe.levels, "mesh refinement levels");
  cmd_trace->add_option("--count", pipe.count, "eigenvalue count per level");
  cmd_trace->add_option("--out", out_path, "write JSON here instead of stdout");

  // ---- det ----
  auto* cmd_det = app.add_subcommand("det", "zeta-regularized determinant");
  cmd_det->add_option("--surface", surface_path, "surface JSON (flat metric)");
  cmd_det->add_option("--metric", metric_path, "conical torus metric JSON");
  std::optional<double> det_tol;
  double det_tol_val = 0.0;
  auto* tol_opt = cmd_det->add_option("--tol", det_tol_val, "requested tail tolerance");
  int det_levels = 4, det_count = 220, det_base_n = 8;
  double det_split = 0.0;
  cmd_det->add_option("--levels", det_levels, "mesh refinement levels");
  cmd_det->add_option("--count", det_count, "eigenvalue count per level");
  cmd_det->add_option("--base-n", det_base_n, "base torus grid for metric runs");
  cmd_det->add_option("--split-time", det_split, "zeta split time (0 = auto)");
  cmd_det->add_option("--out", out_path, "write JSON here instead of stdout");

  // ---- special functions ----
  auto* cmd_eta = app.add_subcommand("eta", "Dedekind eta");
  std::string sigma_str = "0,1", z_str = "0.1,0.1";
  cmd_eta->add_option("--sigma", sigma_str, "modulus re,im")->required();
  auto* cmd_theta = app.add_subcommand("theta1", "Jacobi theta_1");
  cmd_theta->add_option("--z", z_str, "argument re,im")->required();
  cmd_theta->add_option("--sigma", sigma_str, "modulus re,im")->required();

  // ---- cone kernel ----
  auto* cmd_kernel = app.add_subcommand("cone-kernel", "heat kernel on the cone");
  double kb = 2.0 * std::numbers::pi, kr = 1.0, kth = 0.0, krho = 1.0, kps = 0.5,
         kt = 0.1;
  cmd_kernel->add_option("--beta", kb, "cone angle")->required();
  cmd_kernel->add_option("--r", kr)->required();
  cmd_kernel->add_option("--theta", kth)->required();
  cmd_kernel->add_option("--rho", krho)->required();
  cmd_kernel->add_option("--psi", kps)->required();
  cmd_kernel->add_option("--t", kt)->required();

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  cmd_verify->require_subcommand(1);

  auto* v_defect = cmd_verify->add_subcommand("cone-defect", "cone trace defect");
  double vd_beta = 0.0, vd_t = 0.01, vd_radius = 1.0;
  auto* vd_beta_opt = v_defect->add_option("--beta", vd_beta, "cone angle (absent: standard set)");
  v_defect->add_option("--t", vd_t, "time");
  v_defect->add_option("--radius", vd_radius, "truncation radius");
  v_defect->add_option("--out", out_path, "report path");

  auto* v_zeta = cmd_verify->add_subcommand("zeta-zero", "a0 fit vs closed zeta(0)");
  v_zeta->add_option("--surface", surface_path, "surface JSON")->required();
  add_pipeline_flags(v_zeta, [] {
    suites::PipelineOptions o;
    o.levels = 5;
    o.count = 80;
    return o;
  }());
  v_zeta->add_option("--out", out_path, "report path");

  auto* v_rescale = cmd_verify->add_subcommand("rescaling", "kappa-scaling of log det");
  add_pipeline_flags(v_rescale, suites::rescaling_defaults());
  v_rescale->add_option("--out", out_path, "report path");

  auto* v_weyl = cmd_verify->add_subcommand("weyl", "counting-function slope");
  add_pipeline_flags(v_weyl, suites::weyl_defaults());
  v_weyl->add_option("--out", out_path, "report path");

  auto* v_rs = cmd_verify->add_subcommand("ray-singer", "sigma-dependence of log det");
  add_pipeline_flags(v_rs, suites::ray_singer_defaults());
  v_rs->add_option("--out", out_path, "report path");

  auto* v_mt = cmd_verify->add_subcommand("mt", "determinant / predictor constancy");
  std::string fem_det_path;
  v_mt->add_option("--metric", metric_path, "metric JSON (with --fem-det)");
  v_mt->add_option("--fem-det", fem_det_path, "det JSON computed by `conedet det`");
  add_pipeline_flags(v_mt, suites::mt_defaults());
  v_mt->add_option("--out", out_path, "report path");

  auto* v_three = cmd_verify->add_subcommand("three-polyhedra", "product identity");
  std::string l_path, m_path, n_path;
  int trials = 50;
  std::uint64_t seed = 20240902;
  v_three->add_option("--l", l_path, "metric JSON");
  v_three->add_option("--m", m_path, "metric JSON");
  v_three->add_option("--n", n_path, "metric JSON");
  v_three->add_option("--trials", trials, "random trials when no files given");
  v_three->add_option("--seed", seed, "random seed");
  v_three->add_option("--out", out_path, "report path");

  auto* v_carslaw = cmd_verify->add_subcommand("carslaw", "kernel reduction checks");
  v_carslaw->add_option("--seed", seed, "random seed");
  v_carslaw->add_option("--out", out_path, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }
  set_max_threads(threads);
  Timing tm;
  tm.enabled = timing;

  try {
    if (*cmd_info) {
      PolyhedralSurface s = load_any_surface_file(surface_path);
      json j;
      j["genus"] = s.genus();
      j["area"] = s.area();
      j["triangles"] = s.num_triangles();
      j["vertex_classes"] = s.num_vertex_classes();
      j["gauss_bonnet_residual"] = s.gauss_bonnet_residual();
      j["cone_points"] = json::array();
      for (const auto& c : s.cone_points())
        j["cone_points"].push_back(
            {{"vertex_class", c.vertex_class}, {"angle", c.angle}, {"order", c.order}});
      emit(j.dump(2), out_path);
      return 0;
    }
    if (*cmd_spectrum) {
      PolyhedralSurface s = load_any_surface_file(surface_path);
      suites::SpectrumBundle b = suites::surface_spectrum(s, pipe);
      std::ostringstream csv;
      csv << "index,eigenvalue,error_estimate\n";
      for (int i = 0; i < b.extrapolated.count(); ++i) {
        char line[96];
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", i,
                      b.extrapolated.eigenvalues[i],
                      b.extrapolated.error_estimate[i]);
        csv << line;
      }
      emit(csv.str(), csv_path);
      return 0;
    }
    if (*cmd_trace) {
      PolyhedralSurface s = load_any_surface_file(surface_path);
      suites::SpectrumBundle b = suites::surface_spectrum(s, pipe);
      json j;
      j["area"] = b.area;
      j["traces"] = json::array();
      for (double t : trace_times) {
        const HeatTraceValue v = heat_trace(b.extrapolated, b.area, t);
        j["traces"].push_back(
            {{"t", t}, {"value", v.value}, {"tail_bound", v.tail_bound}});
      }
      emit(j.dump(2), out_path);
      return 0;
    }
    if (*cmd_det) {
      require(surface_path.empty() != metric_path.empty(),
              ErrorCode::InvalidArgument,
              "pass exactly one of --surface or --metric");
      if (tol_opt->count() > 0) det_tol = det_tol_val;
      suites::PipelineOptions o;
      o.levels = det_levels;
      o.count = det_count;
      o.base_n = det_base_n;
      if (det_split > 0.0) o.split_time = det_split;
      ZetaDetResult det =
          surface_path.empty()
              ? suites::det_for_metric(load_metric_file(metric_path), o)
              : suites::det_for_surface(load_any_surface_file(surface_path), o);
      emit(det_to_json(det, det_tol).dump(2), out_path);
      return 0;
    }
    if (*cmd_eta) {
      const cplx v = dedekind_eta(Modulus(parse_complex(sigma_str)));
      std::printf("%.17g %+.17gi\n", v.real(), v.imag());
      return 0;
    }
    if (*cmd_theta) {
      const cplx v = theta1(parse_complex(z_str), Modulus(parse_complex(sigma_str)));
      std::printf("%.17g %+.17gi\n", v.real(), v.imag());
      return 0;
    }
    if (*cmd_kernel) {
      const ConeParams params = ConeParams::for_angle(kb);
      std::printf("%.17g\n", heat_kernel_cone(params, kr, kth, krho, kps, kt));
      return 0;
    }
    if (*v_defect) {
      VerificationReport rep = vd_beta_opt->count() > 0
                                   ? suites::verify_cone_defect(vd_beta, vd_t, vd_radius)
                                   : suites::verify_cone_defect_standard();
      return finish_report(std::move(rep), out_path, tm);
    }
    if (*v_zeta)
      return finish_report(
          suites::verify_zeta_zero_surface(load_any_surface_file(surface_path), pipe),
          out_path, tm);
    if (*v_rescale)
      return finish_report(suites::verify_rescaling(pipe), out_path, tm);
    if (*v_weyl) return finish_report(suites::verify_weyl(pipe), out_path, tm);
    if (*v_rs) return finish_report(suites::verify_ray_singer(pipe), out_path, tm);
    if (*v_mt) {
      if (!metric_path.empty() && !fem_det_path.empty()) {
        std::ifstream in(fem_det_path);
        require(in.good(), ErrorCode::InvalidDocument, "cannot open " + fem_det_path);
        json j = json::parse(in);
        return finish_report(
            suites::verify_mt_single(load_metric_file(metric_path),
                                     j.at("log_det").get<double>(), 0.02),
            out_path, tm);
      }
      return finish_report(suites::verify_mt_constancy(pipe), out_path, tm);
    }
    if (*v_three) {
      const bool files = !l_path.empty() || !m_path.empty() || !n_path.empty();
      if (files)
        require(!l_path.empty() && !m_path.empty() && !n_path.empty(),
                ErrorCode::InvalidArgument, "--l, --m, --n must be given together");
      VerificationReport rep =
          files ? suites::verify_three_polyhedra_files(l_path, m_path, n_path)
                : suites::verify_three_polyhedra(trials, seed);
      return finish_report(std::move(rep), out_path, tm);
    }
    if (*v_carslaw)
      return finish_report(suites::verify_carslaw_reduction(seed), out_path, tm);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
