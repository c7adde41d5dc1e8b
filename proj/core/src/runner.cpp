#include "solgeo/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "solgeo/classify.hpp"
#include "solgeo/geometry.hpp"
#include "solgeo/grid.hpp"
#include "solgeo/report.hpp"
#include "solgeo/verify.hpp"

namespace solgeo {

namespace {

constexpr double kVolumeRelTolerance = 1e-4;

struct SuiteFailure {
  std::string model;
  std::string suite;
  std::string item;
};

std::string suites_string(const SuiteSelection& s) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ' ';
    out += name;
  };
  add(s.identities, "identities");
  add(s.elliptic, "elliptic");
  add(s.spectra, "spectra");
  add(s.classify, "classify");
  add(s.volume, "volume");
  return out.empty() ? "none" : out;
}

void echo_manifest(ReportWriter& w, const RunManifest& m) {
  w.begin("manifest");
  w.begin("models");
  for (const auto& model : m.models) {
    w.begin_item();
    if (!model.is_warped) {
      w.kv("builder", model.builder);
      if (!model.params.empty()) {
        w.begin("params");
        for (const auto& [key, value] : model.params) w.kv(key, value);
        w.end();
      }
    } else {
      w.begin("warped");
      w.kv("warp", radial_profile_name(model.warped.warp));
      w.kv("fiber", fiber_kind_name(model.warped.fiber));
      w.kv("fiber_dim", model.warped.fiber_dim);
      w.kv("fiber_radius", model.warped.fiber_radius);
      w.kv("potential", radial_profile_name(model.warped.potential));
      w.kv("lambda", model.warped.lambda);
      w.kv("r_domain",
           ReportWriter::format_double(model.warped.r_domain[0]) + " " +
               ReportWriter::format_double(model.warped.r_domain[1]));
      w.end();
      if (!model.warped_label.empty()) w.kv("label", model.warped_label);
    }
    w.end_item();
  }
  w.end();
  w.kv("suites", suites_string(m.suites));
  w.begin("grid");
  w.kv("seed", static_cast<long long>(m.grid.seed));
  w.kv("count", m.grid.count);
  if (m.has_bounds) {
    std::string bounds;
    for (const auto& axis : m.bounds.axes) {
      if (!bounds.empty()) bounds += " x ";
      bounds += "[" + ReportWriter::format_double(axis[0]) + ", " +
                ReportWriter::format_double(axis[1]) + "]";
    }
    w.kv("bounds", bounds);
  }
  w.end();
  w.begin("tolerances");
  w.kv("algebraic", m.tol_algebraic);
  w.kv("elliptic", m.tol_elliptic);
  w.end();
  if (m.suites.volume) w.kv("volume_resolution", m.volume_resolution);
  if (!m.output_path.empty()) w.kv("output_path", m.output_path);
  w.end();
}

void write_residual_reports(ReportWriter& w, const std::string& model,
                            const std::string& suite,
                            const std::vector<ResidualReport>& reports,
                            std::vector<SuiteFailure>& failures) {
  for (const auto& rep : reports) {
    w.begin_item();
    w.kv("identity", identity_id_name(rep.identity_id));
    w.kv("description", rep.description);
    w.kv("max_residual", rep.max_residual);
    w.kv("tolerance", rep.tolerance);
    w.kv("verdict", rep.verdict ? "pass" : "fail");
    w.end_item();
    if (!rep.verdict) failures.push_back({model, suite, identity_id_name(rep.identity_id)});
  }
}

void write_gate_failed_suite(ReportWriter& w, const std::string& model,
                             const char* suite, std::vector<SuiteFailure>& failures) {
  w.begin(suite);
  w.kv("verdict", "fail");
  w.kv("reason", "soliton-residual-failed");
  w.end();
  failures.push_back({model, suite, "soliton-residual-failed"});
}

struct Aggregate {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  void absorb(double v) {
    min = std::min(min, v);
    max = std::max(max, v);
  }
};

}  // namespace

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::bad_manifest ? 2 : 3;
}

RunOutcome run_manifest(const RunManifest& manifest) {
  ReportWriter w;
  echo_manifest(w, manifest);

  std::vector<SuiteFailure> failures;
  const SuiteSelection& suites = manifest.suites;

  VerifyOptions vopt;
  vopt.tol_algebraic = manifest.tol_algebraic;
  vopt.tol_elliptic = manifest.tol_elliptic;
  vopt.gate_soliton = false;  // the runner gates once per model, below

  w.begin("models");
  for (const auto& entry : manifest.models) {
    SolitonInstance inst = instantiate_model(entry);
    const int n = inst.family.dim();

    SampleGrid grid;
    if (manifest.has_bounds) {
      if (manifest.bounds.dim() != n)
        fail(ErrorKind::bad_manifest,
             "grid.bounds: dimension " + std::to_string(manifest.bounds.dim()) +
                 " does not match model '" + inst.label + "' (dimension " +
                 std::to_string(n) + ")");
      grid.points = sample_points(inst.family.chart, manifest.bounds, manifest.grid);
      grid.seed = manifest.grid.seed;
      grid.margin = manifest.grid.margin;
    } else {
      grid = make_sample_grid(inst, manifest.grid);
    }

    // Every identity in the suites is derived from the soliton equation, so
    // the equation itself is checked once per model; a failing gate fails
    // every selected suite rather than producing meaningless residuals.
    double gate_worst = 0.0;
    for (const auto& x : grid.points) {
      PointGeometry P = point_geometry(inst.family, x);
      gate_worst = std::max(gate_worst, soliton_residual(inst.family, P));
    }
    const bool gate_ok = gate_worst <= vopt.gate_tolerance;

    w.begin_item();
    w.kv("label", inst.label);
    w.kv("kind", soliton_kind_name(inst.kind));
    w.kv("dimension", n);
    w.kv("points", grid.points.size());
    w.begin("soliton_gate");
    w.kv("max_residual", gate_worst);
    w.kv("tolerance", vopt.gate_tolerance);
    w.kv("passed", gate_ok);
    w.end();

    if (suites.identities) {
      if (!gate_ok) {
        write_gate_failed_suite(w, inst.label, "identities", failures);
      } else {
        w.begin("identities");
        write_residual_reports(w, inst.label, "identities",
                               verify_pointwise_identities(inst, grid, vopt), failures);
        w.end();
      }
    }

    if (suites.elliptic) {
      if (!gate_ok) {
        write_gate_failed_suite(w, inst.label, "elliptic", failures);
      } else {
        std::vector<ResidualReport> reports = verify_elliptic_equations(
            inst, grid, applicable_elliptic_equations(n), vopt);
        if (n >= 3) reports.push_back(verify_sharp_trace_consistency(inst, grid, vopt));
        w.begin("elliptic");
        write_residual_reports(w, inst.label, "elliptic", reports, failures);
        w.end();
      }
    }

    if (suites.spectra) {
      if (!gate_ok) {
        write_gate_failed_suite(w, inst.label, "spectra", failures);
      } else {
        SpectralDiagnostics diag = spectral_diagnostics(inst, grid);
        Aggregate scal, rho_low, rho_high, gap;
        for (std::size_t i = 0; i < diag.points.size(); ++i) {
          scal.absorb(diag.scal[i]);
          rho_low.absorb(diag.ricci_eigenvalues[i][0]);
          rho_high.absorb(diag.ricci_eigenvalues[i][n - 1]);
          gap.absorb(diag.cauchy_schwarz_gap[i]);
        }
        w.begin("spectra");
        w.kv("scal_min", scal.min);
        w.kv("scal_max", scal.max);
        w.kv("ricci_lowest_min", rho_low.min);
        w.kv("ricci_lowest_max", rho_low.max);
        w.kv("ricci_highest_min", rho_high.min);
        w.kv("ricci_highest_max", rho_high.max);
        w.kv("cauchy_schwarz_gap_max", gap.max);
        bool ok = true;
        if (inst.kind == SolitonKind::shrinking) {
          SecondEigenvalueReport sec = second_eigenvalue_check(inst, grid);
          w.begin("second_eigenvalue");
          w.kv("audit_points", sec.audit_points);
          w.kv("audit_passed", sec.audit_passed);
          w.kv("cross_check_max", sec.cross_check_max);
          w.end();
          ok = sec.audit_passed;
        }
        if (n >= 3) {
          WeylRadialRatioReport weyl = weyl_radial_ratio(inst, grid);
          w.begin("weyl_radial_ratio");
          w.kv("max_ratio", weyl.max_ratio);
          w.kv("skipped_points", weyl.skipped);
          w.end();
        }
        w.kv("verdict", ok ? "pass" : "fail");
        w.end();
        if (!ok) failures.push_back({inst.label, "spectra", "second-eigenvalue-audit"});
      }
    }

    if (suites.classify) {
      ClassifyOptions copt;
      copt.gate_tolerance = vopt.gate_tolerance;
      ClassificationResult result = classify(inst, grid, copt);
      const bool expected_known = !inst.expected_class.empty();
      const bool ok = gate_ok && (!expected_known || result.label == inst.expected_class);
      w.begin("classification");
      w.kv("label", result.label);
      w.kv("expected", expected_known ? inst.expected_class : "(unspecified)");
      w.begin("evidence");
      for (const auto& item : result.evidence) {
        w.begin_item();
        w.kv("diagnostic", item.diagnostic);
        w.kv("value", item.value);
        w.kv("threshold", item.threshold);
        w.kv("passed", item.passed);
        w.end_item();
      }
      w.end();
      RicciBarrierReport barrier = ricci_barrier_check(inst, grid);
      w.begin("ricci_barrier");
      w.kv("applicable", barrier.applicable);
      if (!barrier.applicable) {
        w.kv("reason", barrier.reason);
      } else {
        w.kv("checked_points", barrier.checked);
        w.kv("skipped_points", barrier.skipped);
        w.kv("max_violation", barrier.max_violation);
        w.kv("satisfied", barrier.satisfied);
      }
      w.end();
      w.kv("verdict", ok ? "pass" : "fail");
      w.end();
      if (!ok)
        failures.push_back({inst.label, "classify",
                            gate_ok ? "unexpected-label:" + result.label
                                    : "soliton-residual-failed"});
    }

    if (suites.volume) {
      if (!gate_ok) {
        write_gate_failed_suite(w, inst.label, "volume", failures);
      } else {
        VolumeEstimate est =
            f_volume_estimate(inst.family, inst.volume_box, manifest.volume_resolution);
        const bool has_reference = std::isfinite(inst.closed_form_f_volume);
        bool ok = true;
        w.begin("volume");
        w.kv("value", est.value);
        w.kv("doubled_box_value", est.doubled_value);
        w.kv("divergent", est.divergent);
        if (has_reference) {
          const double rel =
              std::abs(est.value - inst.closed_form_f_volume) /
              std::abs(inst.closed_form_f_volume);
          w.kv("reference", inst.closed_form_f_volume);
          w.kv("relative_error", rel);
          ok = !est.divergent && rel <= kVolumeRelTolerance;
        }
        w.kv("verdict", ok ? "pass" : "fail");
        w.end();
        if (!ok) failures.push_back({inst.label, "volume", "reference-mismatch"});
      }
    }

    w.end_item();
  }
  w.end();

  if (failures.empty()) {
    w.kv("failures", "none");
  } else {
    w.begin("failures");
    for (const auto& f : failures) {
      w.begin_item();
      w.kv("model", f.model);
      w.kv("suite", f.suite);
      w.kv("identity", f.item);
      w.end_item();
    }
    w.end();
  }

  w.begin("summary");
  w.kv("models", manifest.models.size());
  w.kv("suites", suites_string(suites));
  w.kv("exit_status", failures.empty() ? "pass" : "fail");
  w.end();

  RunOutcome outcome;
  outcome.passed = failures.empty();
  outcome.exit_code = outcome.passed ? 0 : 1;
  outcome.report_text = w.str();
  return outcome;
}

}  // namespace solgeo
