#include "solgeo/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "solgeo/errors.hpp"

namespace solgeo {

namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& origin, const std::string& path,
                         const std::string& what) {
  fail(ErrorKind::bad_manifest, origin + ": " + path + ": " + what);
}

std::string type_name(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return "null";
    case json::value_t::object: return "object";
    case json::value_t::array: return "array";
    case json::value_t::string: return "string";
    case json::value_t::boolean: return "boolean";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::number_float: return "number";
    default: return "binary";
  }
}

void require_object(const json& j, const std::string& origin, const std::string& path) {
  if (!j.is_object()) reject(origin, path, "expected an object, got " + type_name(j));
}

void require_known_keys(const json& j, const std::set<std::string>& known,
                        const std::string& origin, const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) reject(origin, path + "." + key, "unknown field");
  }
}

double as_number(const json& j, const std::string& origin, const std::string& path) {
  if (!j.is_number()) reject(origin, path, "expected a number, got " + type_name(j));
  return j.get<double>();
}

double as_positive(const json& j, const std::string& origin, const std::string& path) {
  const double v = as_number(j, origin, path);
  if (!(v > 0.0)) reject(origin, path, "expected a positive number");
  return v;
}

long long as_integer(const json& j, const std::string& origin, const std::string& path) {
  if (j.is_number_integer() || j.is_number_unsigned()) return j.get<long long>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    const auto r = static_cast<long long>(v);
    if (static_cast<double>(r) == v) return r;
  }
  reject(origin, path, "expected an integer, got " + type_name(j));
}

std::string as_string(const json& j, const std::string& origin, const std::string& path) {
  if (!j.is_string()) reject(origin, path, "expected a string, got " + type_name(j));
  return j.get<std::string>();
}

bool builder_exists(const std::string& name) {
  for (const auto& info : model_registry())
    if (info.name == name) return true;
  return false;
}

ManifestModel parse_builder_model(const json& entry, const std::string& origin,
                                  const std::string& path) {
  require_known_keys(entry, {"builder", "params"}, origin, path);
  ManifestModel model;
  model.builder = as_string(entry.at("builder"), origin, path + ".builder");
  if (!builder_exists(model.builder))
    reject(origin, path + ".builder", "unknown builder '" + model.builder + "'");
  if (entry.contains("params")) {
    const json& params = entry.at("params");
    require_object(params, origin, path + ".params");
    for (const auto& [key, value] : params.items())
      model.params[key] = as_number(value, origin, path + ".params." + key);
  }
  return model;
}

ManifestModel parse_warped_model(const json& entry, const std::string& origin,
                                 const std::string& path) {
  require_known_keys(entry, {"warped", "label"}, origin, path);
  const json& w = entry.at("warped");
  require_object(w, origin, path + ".warped");
  require_known_keys(w,
                     {"warp", "fiber", "fiber_dim", "fiber_radius", "potential",
                      "lambda", "r_domain", "topology"},
                     origin, path + ".warped");
  if (!w.contains("warp")) reject(origin, path + ".warped.warp", "missing field");
  if (!w.contains("fiber")) reject(origin, path + ".warped.fiber", "missing field");

  ManifestModel model;
  model.is_warped = true;
  WarpedProductSpec& spec = model.warped;
  // Name lookups raise invalid_profile; rewrap so the caller sees a manifest
  // error that points at the offending field.
  auto lookup = [&](const std::string& field, auto&& fn) {
    try {
      return fn();
    } catch (const Error& err) {
      reject(origin, path + ".warped." + field, err.what());
    }
  };
  const std::string warp_name = as_string(w.at("warp"), origin, path + ".warped.warp");
  spec.warp = lookup("warp", [&] { return radial_profile_from_name(warp_name); });
  const std::string fiber_name =
      as_string(w.at("fiber"), origin, path + ".warped.fiber");
  spec.fiber = lookup("fiber", [&] { return fiber_kind_from_name(fiber_name); });
  if (w.contains("fiber_dim")) {
    const long long d = as_integer(w.at("fiber_dim"), origin, path + ".warped.fiber_dim");
    if (d < 1 || d > 5) reject(origin, path + ".warped.fiber_dim", "expected 1..5");
    spec.fiber_dim = static_cast<int>(d);
  }
  if (w.contains("fiber_radius"))
    spec.fiber_radius =
        as_positive(w.at("fiber_radius"), origin, path + ".warped.fiber_radius");
  if (w.contains("potential")) {
    const std::string pot =
        as_string(w.at("potential"), origin, path + ".warped.potential");
    spec.potential = lookup("potential", [&] { return radial_profile_from_name(pot); });
  }
  if (w.contains("lambda"))
    spec.lambda = as_number(w.at("lambda"), origin, path + ".warped.lambda");
  if (w.contains("r_domain")) {
    const json& dom = w.at("r_domain");
    if (!dom.is_array() || dom.size() != 2)
      reject(origin, path + ".warped.r_domain", "expected an array [lo, hi]");
    spec.r_domain[0] = as_number(dom[0], origin, path + ".warped.r_domain[0]");
    spec.r_domain[1] = as_number(dom[1], origin, path + ".warped.r_domain[1]");
    if (!(spec.r_domain[0] < spec.r_domain[1]))
      reject(origin, path + ".warped.r_domain", "expected lo < hi");
  }
  if (w.contains("topology")) {
    const std::string topo =
        as_string(w.at("topology"), origin, path + ".warped.topology");
    if (topo == "plane_like")
      spec.topology = WarpedProductSpec::Topology::plane_like;
    else if (topo == "sphere_like")
      spec.topology = WarpedProductSpec::Topology::sphere_like;
    else if (topo == "cylinder_like")
      spec.topology = WarpedProductSpec::Topology::cylinder_like;
    else
      reject(origin, path + ".warped.topology",
             "expected plane_like, sphere_like, or cylinder_like");
  }
  if (entry.contains("label"))
    model.warped_label = as_string(entry.at("label"), origin, path + ".label");
  return model;
}

SuiteSelection parse_suites(const json& j, const std::string& origin) {
  if (!j.is_array()) reject(origin, "suites", "expected an array of suite names");
  SuiteSelection sel;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "suites[" + std::to_string(i) + "]";
    const std::string name = as_string(j[i], origin, path);
    if (name == "identities")
      sel.identities = true;
    else if (name == "elliptic")
      sel.elliptic = true;
    else if (name == "spectra")
      sel.spectra = true;
    else if (name == "classify")
      sel.classify = true;
    else if (name == "volume")
      sel.volume = true;
    else
      reject(origin, path, "unknown suite '" + name + "'");
  }
  return sel;
}

void parse_grid(const json& j, const std::string& origin, RunManifest& out) {
  require_object(j, origin, "grid");
  require_known_keys(j, {"seed", "count", "bounds"}, origin, "grid");
  if (j.contains("seed")) {
    const long long seed = as_integer(j.at("seed"), origin, "grid.seed");
    if (seed < 0) reject(origin, "grid.seed", "expected a nonnegative integer");
    out.grid.seed = static_cast<std::uint64_t>(seed);
  }
  if (j.contains("count")) {
    const long long count = as_integer(j.at("count"), origin, "grid.count");
    if (count < 1 || count > 100000) reject(origin, "grid.count", "expected 1..100000");
    out.grid.count = static_cast<int>(count);
  }
  if (j.contains("bounds")) {
    const json& bounds = j.at("bounds");
    if (!bounds.is_array() || bounds.empty())
      reject(origin, "grid.bounds", "expected a non-empty array of [lo, hi] pairs");
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      const std::string path = "grid.bounds[" + std::to_string(i) + "]";
      const json& pair = bounds[i];
      if (!pair.is_array() || pair.size() != 2)
        reject(origin, path, "expected an array [lo, hi]");
      const double lo = as_number(pair[0], origin, path + "[0]");
      const double hi = as_number(pair[1], origin, path + "[1]");
      if (!(lo < hi)) reject(origin, path, "expected lo < hi");
      out.bounds.axes.push_back({lo, hi});
    }
    out.has_bounds = true;
  }
}

}  // namespace

RunManifest parse_manifest(const std::string& json_text, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    fail(ErrorKind::bad_manifest,
         origin + ": parse error at byte " + std::to_string(err.byte) + ": " +
             err.what());
  }
  require_object(root, origin, "document root");
  require_known_keys(root,
                     {"models", "suites", "grid", "tolerances", "volume_resolution",
                      "output_path"},
                     origin, "document root");

  RunManifest manifest;

  if (!root.contains("models")) reject(origin, "models", "missing field");
  const json& models = root.at("models");
  if (!models.is_array() || models.empty())
    reject(origin, "models", "expected a non-empty array");
  for (std::size_t i = 0; i < models.size(); ++i) {
    const std::string path = "models[" + std::to_string(i) + "]";
    const json& entry = models[i];
    require_object(entry, origin, path);
    const bool has_builder = entry.contains("builder");
    const bool has_warped = entry.contains("warped");
    if (has_builder == has_warped)
      reject(origin, path, "expected exactly one of 'builder' or 'warped'");
    manifest.models.push_back(has_builder ? parse_builder_model(entry, origin, path)
                                          : parse_warped_model(entry, origin, path));
  }

  if (root.contains("suites")) {
    manifest.suites = parse_suites(root.at("suites"), origin);
  } else {
    manifest.suites = {true, true, true, true, true};
  }

  if (root.contains("grid")) parse_grid(root.at("grid"), origin, manifest);

  if (root.contains("tolerances")) {
    const json& tol = root.at("tolerances");
    require_object(tol, origin, "tolerances");
    require_known_keys(tol, {"algebraic", "elliptic"}, origin, "tolerances");
    if (tol.contains("algebraic"))
      manifest.tol_algebraic =
          as_positive(tol.at("algebraic"), origin, "tolerances.algebraic");
    if (tol.contains("elliptic"))
      manifest.tol_elliptic =
          as_positive(tol.at("elliptic"), origin, "tolerances.elliptic");
  }

  if (root.contains("volume_resolution")) {
    const long long res =
        as_integer(root.at("volume_resolution"), origin, "volume_resolution");
    if (res < 2 || res > 512) reject(origin, "volume_resolution", "expected 2..512");
    manifest.volume_resolution = static_cast<int>(res);
  }

  if (root.contains("output_path"))
    manifest.output_path = as_string(root.at("output_path"), origin, "output_path");

  return manifest;
}

RunManifest load_manifest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::bad_manifest, path + ": cannot open manifest file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str(), path);
}

SolitonInstance instantiate_model(const ManifestModel& model) {
  if (!model.is_warped) return build_model(model.builder, model.params);
  SolitonInstance inst = warped_instance(model.warped);
  if (!model.warped_label.empty()) inst.label = model.warped_label;
  return inst;
}

}  // namespace solgeo
