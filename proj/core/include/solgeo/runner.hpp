/// @file runner.hpp
/// @brief Executes a run manifest: builds models, runs the selected suites,
///        assembles the report, and derives the process exit code.
///
/// Exit-code contract (shared with the CLI):
///   0  manifest ran and every suite verdict passed
///   1  at least one verification verdict failed (failures listed in report)
///   2  manifest parse/validation error (raised as bad_manifest before running)
///   3  model construction error (unknown model, bad parameters, bad profile)
///
/// Codes 2 and 3 surface as exceptions from parsing/instantiation; callers
/// map Error kinds onto them.  run_manifest itself returns 0 or 1.

#pragma once

#include <string>

#include "solgeo/manifest.hpp"

namespace solgeo {

struct RunOutcome {
  std::string report_text;
  bool passed = false;
  int exit_code = 1;  ///< 0 iff passed
};

/// Run all selected suites on all models, in manifest order.  Deterministic:
/// identical manifests produce byte-identical report text.
RunOutcome run_manifest(const RunManifest& manifest);

/// Map an error kind onto the process exit code (2 for manifest errors,
/// 3 for model-construction errors).
int exit_code_for(ErrorKind kind);

}  // namespace solgeo
