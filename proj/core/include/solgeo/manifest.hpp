/// @file manifest.hpp
/// @brief Run manifests: which models, which suites, which grid, where to write.
///
/// A manifest is a small JSON document drives one verification run:
///
///   {
///     "models": [
///       {"builder": "gaussian", "params": {"n": 3, "lambda": 0.5}},
///       {"warped": {"warp": "tanh", "fiber": "circle", "fiber_dim": 1,
///                   "potential": "minus_two_log_cosh", "lambda": 0.0,
///                   "r_domain": [0.0, 3.5], "topology": "plane_like"}}
///     ],
///     "suites": ["identities", "elliptic", "spectra", "classify", "volume"],
///     "grid": {"seed": 20240817, "count": 40},
///     "tolerances": {"algebraic": 1e-8, "elliptic": 1e-5},
///     "output_path": "report.txt"
///   }
///
/// Builder params may also carry the option keys `perturb_f_cubic`,
/// `perturb_g_conformal` and `metric_scale`.  An optional `"bounds"` array of
/// [lo, hi] pairs inside "grid" overrides each model's default sample box.
/// Every malformed input is rejected with a bad_manifest error that names
/// the offending location.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "solgeo/grid.hpp"
#include "solgeo/models.hpp"

namespace solgeo {

struct ManifestModel {
  bool is_warped = false;
  // builder form
  std::string builder;
  std::map<std::string, double> params;
  // warped form
  WarpedProductSpec warped;
  std::string warped_label;  ///< optional label override
};

/// Suite switches, reported in this canonical order.
struct SuiteSelection {
  bool identities = false;
  bool elliptic = false;
  bool spectra = false;
  bool classify = false;
  bool volume = false;
};

struct RunManifest {
  std::vector<ManifestModel> models;
  SuiteSelection suites;
  GridOptions grid;  ///< seed and count; margin fixed by the stencil contract
  bool has_bounds = false;
  Box bounds;  ///< optional sample-box override (must match each model's dim)
  double tol_algebraic = 1e-8;
  double tol_elliptic = 1e-5;
  int volume_resolution = 48;
  std::string output_path;  ///< empty: report goes to stdout only
};

/// Parse and validate a manifest document.  `origin` names the source (file
/// path or "<inline>") in error messages.
RunManifest parse_manifest(const std::string& json_text, const std::string& origin);

/// Read the file and parse it.
RunManifest load_manifest_file(const std::string& path);

/// Build the instance a manifest entry describes (builder or warped form).
SolitonInstance instantiate_model(const ManifestModel& model);

}  // namespace solgeo
