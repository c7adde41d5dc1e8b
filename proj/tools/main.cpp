// solgeo command-line runner.
//
//   solgeo verify <manifest.json>    run the suites selected by the manifest
//   solgeo classify <manifest.json>  spectra + classification only
//   solgeo models                    list the model catalog
//
// Exit codes: 0 all verdicts pass, 1 verification failure, 2 manifest error,
// 3 model-construction error.  If SOLGEO_REPORT_DIR is set, relative report
// paths are resolved inside it.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "solgeo/manifest.hpp"
#include "solgeo/models.hpp"
#include "solgeo/runner.hpp"

namespace {

struct CommonFlags {
  std::string manifest_path;
  std::string out_override;
  long long seed = -1;
  double tol_algebraic = 0.0;
  double tol_elliptic = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("manifest", manifest_path, "run manifest (JSON)")->required();
    cmd->add_option("--out", out_override, "report output path (overrides manifest)");
    cmd->add_option("--seed", seed, "grid seed override")->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol-algebraic", tol_algebraic,
                    "tolerance override for exact-derivative identities")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol-elliptic", tol_elliptic,
                    "tolerance override for stencil-based identities")
        ->check(CLI::PositiveNumber);
  }

  void apply(solgeo::RunManifest& manifest) const {
    if (!out_override.empty()) manifest.output_path = out_override;
    if (seed >= 0) manifest.grid.seed = static_cast<std::uint64_t>(seed);
    if (tol_algebraic > 0.0) manifest.tol_algebraic = tol_algebraic;
    if (tol_elliptic > 0.0) manifest.tol_elliptic = tol_elliptic;
  }
};

/// Relative output paths land in $SOLGEO_REPORT_DIR when it is set.
std::filesystem::path resolve_output_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("SOLGEO_REPORT_DIR"))
    return std::filesystem::path(dir) / p;
  return p;
}

int run_from_manifest(const CommonFlags& flags, bool classification_only) {
  solgeo::RunManifest manifest = solgeo::load_manifest_file(flags.manifest_path);
  flags.apply(manifest);
  if (classification_only) {
    manifest.suites = {};
    manifest.suites.spectra = true;
    manifest.suites.classify = true;
  }

  solgeo::RunOutcome outcome = solgeo::run_manifest(manifest);
  std::cout << outcome.report_text;

  if (!manifest.output_path.empty()) {
    const std::filesystem::path out = resolve_output_path(manifest.output_path);
    if (out.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(out.parent_path(), ec);
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write report to " << out << "\n";
      return 3;
    }
    file << outcome.report_text;
  }
  return outcome.exit_code;
}

int list_models() {
  std::printf("%-20s %-36s %-18s %s\n", "name", "defaults", "expected_class",
              "summary");
  for (const auto& info : solgeo::model_registry()) {
    std::string defaults;
    for (const auto& [key, value] : info.defaults) {
      if (!defaults.empty()) defaults += ", ";
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%s=%g", key.c_str(), value);
      defaults += buf;
    }
    if (defaults.empty()) defaults = "-";
    std::printf("%-20s %-36s %-18s %s\n", info.name.c_str(), defaults.c_str(),
                info.expected_class.c_str(), info.summary.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradient Ricci soliton verification runner"};
  app.require_subcommand(1);

  CommonFlags verify_flags;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the verification suites from a manifest");
  verify_flags.attach(verify_cmd);

  CommonFlags classify_flags;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "run spectra and classification from a manifest");
  classify_flags.attach(classify_cmd);

  CLI::App* models_cmd = app.add_subcommand("models", "list the model catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (models_cmd->parsed()) return list_models();
    if (verify_cmd->parsed()) return run_from_manifest(verify_flags, false);
    return run_from_manifest(classify_flags, true);
  } catch (const solgeo::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return solgeo::exit_code_for(err.kind());
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
}
