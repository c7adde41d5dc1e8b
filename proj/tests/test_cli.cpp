// End-to-end tests of the command-line driver: subcommands, manifest
// round-trips, report determinism, option overrides, output-path resolution,
// and the exit-code contract (0 pass, 1 verification failure, 2 manifest
// error, 3 model-construction error).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return SOLGEO_CLI_PATH; }

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("solgeo-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const fs::path err_file = scratch_dir() / "stderr.txt";
  std::string cmd = env_prefix + "\"" + std::string(cli_path()) + "\" " + args +
                    " 2>" + err_file.string();
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  res.exit_code = WEXITSTATUS(status);
  std::ifstream err_in(err_file);
  std::stringstream err_ss;
  err_ss << err_in.rdbuf();
  res.err = err_ss.str();
  return res;
}

fs::path write_manifest(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size()))
    ++n;
  return n;
}

const char* kGaussianIdentities = R"({
  "models": [{"builder": "gaussian", "params": {"n": 3, "lambda": 0.5}}],
  "suites": ["identities"],
  "grid": {"seed": 7, "count": 20}
})";

}  // namespace

TEST_CASE("models subcommand lists the full registry") {
  const RunResult res = run_cli("models");
  CHECK(res.exit_code == 0);
  std::size_t rows = 0;
  std::istringstream lines(res.out);
  for (std::string line; std::getline(lines, line);)
    if (!line.empty()) ++rows;
  CHECK(rows >= 8);  // header + at least 7 builders
  CHECK(res.out.find("gaussian") != std::string::npos);
  CHECK(res.out.find("cigar") != std::string::npos);
  CHECK(res.out.find("steady") != std::string::npos);
  CHECK(res.out.find("tanh") != std::string::npos);
  CHECK(res.out.find("expected_class") != std::string::npos);
}

TEST_CASE("verify: passing manifest exits 0 with one verdict per identity") {
  const fs::path m = write_manifest("gauss.json", kGaussianIdentities);
  const RunResult res = run_cli("verify " + m.string());
  CHECK(res.exit_code == 0);
  CHECK(count_occurrences(res.out, "verdict: pass") == 5);
  CHECK(res.out.find("failures: none") != std::string::npos);
  CHECK(res.out.find("exit_status: pass") != std::string::npos);
  CHECK(res.out.find("schema_version: 1") != std::string::npos);
  CHECK(res.out.find("seed: 7") != std::string::npos);
}

TEST_CASE("verify: reports are byte-identical across runs") {
  const fs::path m = write_manifest("gauss.json", kGaussianIdentities);
  const RunResult a = run_cli("verify " + m.string());
  const RunResult b = run_cli("verify " + m.string());
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("verify: --seed overrides the manifest grid seed") {
  const fs::path m = write_manifest("gauss.json", kGaussianIdentities);
  const RunResult res = run_cli("verify " + m.string() + " --seed 99");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("seed: 99") != std::string::npos);
  CHECK(res.out.find("seed: 7") == std::string::npos);
}

TEST_CASE("verify: broken soliton exits 1 and names the gate failure") {
  const fs::path m = write_manifest("perturbed.json", R"({
    "models": [{"builder": "gaussian",
                "params": {"n": 3, "lambda": 0.5, "perturb_f_cubic": 0.01}}],
    "suites": ["identities", "classify"],
    "grid": {"seed": 7, "count": 20}
  })");
  const RunResult res = run_cli("verify " + m.string());
  CHECK(res.exit_code == 1);
  CHECK(res.out.find("soliton-residual-failed") != std::string::npos);
  CHECK(res.out.find("exit_status: fail") != std::string::npos);
  // the classifier still runs and reports inconclusive
  CHECK(res.out.find("label: inconclusive") != std::string::npos);
}

TEST_CASE("verify: malformed JSON exits 2 and locates the error") {
  const fs::path m = write_manifest("syntax.json", "{\"models\": [\n");
  const RunResult res = run_cli("verify " + m.string());
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("bad-manifest") != std::string::npos);
  CHECK(res.err.find("parse error at byte") != std::string::npos);
  CHECK(res.err.find(m.string()) != std::string::npos);
}

TEST_CASE("verify: schema violations exit 2 with a field path") {
  const fs::path unknown = write_manifest("unknown.json", R"({
    "models": [{"builder": "torus"}], "suites": ["identities"]
  })");
  const RunResult r1 = run_cli("verify " + unknown.string());
  CHECK(r1.exit_code == 2);
  CHECK(r1.err.find("models[0].builder") != std::string::npos);
  CHECK(r1.err.find("unknown builder 'torus'") != std::string::npos);

  const fs::path badsuite = write_manifest("badsuite.json", R"({
    "models": [{"builder": "gaussian"}], "suites": ["spectral"]
  })");
  const RunResult r2 = run_cli("verify " + badsuite.string());
  CHECK(r2.exit_code == 2);
  CHECK(r2.err.find("suites") != std::string::npos);
}

TEST_CASE("verify: bad builder parameters exit 3") {
  const fs::path m = write_manifest("badparam.json", R"({
    "models": [{"builder": "round_sphere", "params": {"n": 1}}],
    "suites": ["identities"]
  })");
  const RunResult res = run_cli("verify " + m.string());
  CHECK(res.exit_code == 3);
  CHECK(res.err.find("builder-error") != std::string::npos);
}

TEST_CASE("verify: --out writes the same report that goes to stdout") {
  const fs::path m = write_manifest("gauss.json", kGaussianIdentities);
  const fs::path out = scratch_dir() / "report-out.txt";
  const RunResult res = run_cli("verify " + m.string() + " --out " + out.string());
  CHECK(res.exit_code == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == res.out);
}

TEST_CASE("verify: relative --out resolves under SOLGEO_REPORT_DIR") {
  const fs::path m = write_manifest("gauss.json", kGaussianIdentities);
  const fs::path dir = scratch_dir() / "reports";
  const RunResult res =
      run_cli("verify " + m.string() + " --out nested/run.txt",
              "SOLGEO_REPORT_DIR=\"" + dir.string() + "\" ");
  CHECK(res.exit_code == 0);
  CHECK(fs::exists(dir / "nested" / "run.txt"));
}

TEST_CASE("verify: inline warped specification round-trips") {
  const fs::path m = write_manifest("warped.json", R"({
    "models": [{"warped": {"warp": "tanh", "fiber": "circle",
                           "potential": "minus_two_log_cosh", "lambda": 0.0,
                           "r_domain": [0.0, 3.5], "topology": "plane_like"}}],
    "suites": ["identities"],
    "grid": {"seed": 5, "count": 15}
  })");
  const RunResult res = run_cli("verify " + m.string());
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("exit_status: pass") != std::string::npos);
}

TEST_CASE("classify subcommand runs the spectra and classification suites") {
  const fs::path m = write_manifest("sphere.json", R"({
    "models": [{"builder": "round_sphere", "params": {"n": 3}}],
    "suites": ["identities"],
    "grid": {"seed": 3, "count": 12}
  })");
  const RunResult res = run_cli("classify " + m.string());
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("suites: spectra classify") != std::string::npos);
  CHECK(res.out.find("label: Sn-Einstein") != std::string::npos);
  // the identities suite was replaced, not run
  CHECK(res.out.find("identity: scal-gradient") == std::string::npos);
}

TEST_CASE("unknown tolerance values are rejected by the option parser") {
  const fs::path m = write_manifest("gauss.json", kGaussianIdentities);
  const RunResult res = run_cli("verify " + m.string() + " --tol-algebraic -1");
  CHECK(res.exit_code != 0);
}
