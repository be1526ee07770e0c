#include "fracplap/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "fracplap/error.hpp"
#include "fracplap/io.hpp"

namespace fracplap {
namespace {

using nlohmann::json;

// Typed, key-checked access to one JSON object.
class Section {
 public:
  Section(const json& root, const std::string& key, std::initializer_list<const char*> allowed)
      : path_("/" + key) {
    if (!root.contains(key)) {
      obj_ = json::object();
      return;
    }
    obj_ = root.at(key);
    if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : obj_.items())
      if (!ok.count(item.key())) throw ConfigError(path_ + "/" + item.key(), "unknown key");
  }

  std::string at(const std::string& key) const { return path_ + "/" + key; }
  bool has(const std::string& key) const { return obj_.contains(key); }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number()) throw ConfigError(at(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(at(key), "must be finite");
    return d;
  }

  std::optional<double> maybe_number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return number(key, 0.0);
  }

  long long integer(const std::string& key, long long fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) throw ConfigError(at(key), "expected an integer");
    return v.get<long long>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number_unsigned()) throw ConfigError(at(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_string()) throw ConfigError(at(key), "expected a string");
    return v.get<std::string>();
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key) const {
    if (!has(key)) return {};
    const json& v = obj_.at(key);
    if (!v.is_array()) throw ConfigError(at(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(at(key) + "/" + std::to_string(i), "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

 private:
  std::string path_;
  json obj_;
};

template <typename Parse>
auto parse_enum(const Section& s, const std::string& key, const std::string& fallback, Parse parse) {
  const std::string name = s.text(key, fallback);
  try {
    return parse(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(s.at(key), e.what());
  }
}

InitialKind initial_kind_from_string(const std::string& name) {
  if (name == "constant") return InitialKind::constant;
  if (name == "gaussian_bump") return InitialKind::gaussian_bump;
  if (name == "random") return InitialKind::random;
  if (name == "file") return InitialKind::file;
  throw std::invalid_argument("unknown initial kind '" + name + "'");
}

void parse_model(const json& root, RunManifest& m) {
  const Section s(root, "model", {"alpha", "p", "mu", "k", "gamma", "m", "dim", "coupling"});
  ModelParameters& p = m.model;
  p.coupling = parse_enum(s, "coupling", "kernel", coupling_from_string);
  p.alpha = s.number("alpha", 0.5);
  p.p = s.number("p", 1.5);
  const bool global = p.coupling == CouplingMode::global_mass;
  p.mu = s.number("mu", 1.0);
  p.k = s.number("k", 1.0);
  p.gamma = s.number("gamma", global ? 1.0 : 0.1);
  p.m = s.number("m", global ? 2.0 : 1.0);
  p.dim = static_cast<int>(s.integer("dim", 1));
  const auto violations = validate_params(p, Regime::numerical);
  if (!violations.empty()) throw ConfigError(s.at(violations.front().field), violations.front().message);
}

void parse_domain(const json& root, RunManifest& m) {
  const Section s(root, "domain", {"half_width", "points_per_axis"});
  m.domain.half_width = s.number("half_width", 8.0);
  m.domain.points_per_axis = static_cast<int>(s.integer("points_per_axis", 64));
  m.domain.dim = m.model.dim;
  if (!(m.domain.half_width > 0.0)) throw ConfigError(s.at("half_width"), "must be positive");
  if (m.domain.points_per_axis < 8 || m.domain.points_per_axis % 2 != 0)
    throw ConfigError(s.at("points_per_axis"), "must be an even integer >= 8");
}

void parse_solver(const json& root, RunManifest& m) {
  const Section s(root, "solver", {"dt", "t_final", "eps_reg", "blowup_threshold", "scheme", "record_every",
                                   "snapshot_times", "record_fields"});
  SolverConfig& c = m.solver;
  c.dt = s.number("dt", 1e-3);
  c.t_final = s.number("t_final", 1.0);
  c.eps_reg = s.number("eps_reg", 1e-6);
  c.blowup_threshold = s.number("blowup_threshold", 1e8);
  c.scheme = parse_enum(s, "scheme", "lagged_implicit", scheme_from_string);
  c.record_every = static_cast<int>(s.integer("record_every", 1));
  c.snapshot_times = s.numbers("snapshot_times");
  c.record_fields = s.flag("record_fields", false);
  if (!(c.dt > 0.0)) throw ConfigError(s.at("dt"), "must be positive");
  if (!(c.t_final > 0.0)) throw ConfigError(s.at("t_final"), "must be positive");
  if (!(c.dt < c.t_final)) throw ConfigError(s.at("dt"), "must be smaller than t_final");
  if (!(c.eps_reg > 0.0)) throw ConfigError(s.at("eps_reg"), "must be positive");
  if (!(c.blowup_threshold > 1.0)) throw ConfigError(s.at("blowup_threshold"), "must exceed 1");
  if (c.record_every < 1) throw ConfigError(s.at("record_every"), "must be at least 1");
  for (std::size_t i = 0; i < c.snapshot_times.size(); ++i)
    if (!(c.snapshot_times[i] >= 0.0 && c.snapshot_times[i] <= c.t_final))
      throw ConfigError(s.at("snapshot_times") + "/" + std::to_string(i), "must lie in [0, t_final]");
}

void parse_kernel(const json& root, RunManifest& m) {
  const Section s(root, "kernel", {"shape", "delta0", "eta"});
  m.kernel.shape = parse_enum(s, "shape", "box", kernel_shape_from_string);
  m.kernel.delta0 = s.maybe_number("delta0");
  m.kernel.eta = s.maybe_number("eta");
  const double delta0 = m.kernel.delta0.value_or(m.domain.half_width / 8.0);
  if (!(delta0 > 0.0 && delta0 < 0.25 * m.domain.half_width))
    throw ConfigError(s.at("delta0"), "must lie in (0, half_width / 4)");
  const Field profile = kernel_profile(m.kernel.shape, delta0, m.domain);
  const double core = kernel_core_min(profile, delta0);
  const double eta = m.kernel.eta.value_or(0.5 * core);
  if (!(eta > 0.0)) throw ConfigError(s.at("eta"), "must be positive");
  if (!(core > eta))
    throw ConfigError(s.at("eta"), "kernel minimum " + std::to_string(core) +
                                       " on |x| <= delta0 does not exceed eta; choose a smaller eta");
  m.analysis.delta0 = delta0;
  m.analysis.eta = eta;
}

void parse_analysis(const json& root, RunManifest& m) {
  const Section s(root, "analysis", {"c_gn", "c4", "c1", "c2", "delta", "tau"});
  AnalysisConstants& a = m.analysis;
  a.c_gn = s.number("c_gn", 1.0);
  a.c4 = s.number("c4", 1.0);
  a.c1 = s.number("c1", 1.0);
  a.c2 = s.number("c2", 1.0);
  a.delta = s.maybe_number("delta");
  a.tau = s.maybe_number("tau");
  const auto violations = a.validate();
  if (!violations.empty()) throw ConfigError(s.at(violations.front().field), violations.front().message);
}

void parse_initial(const json& root, RunManifest& m) {
  const Section s(root, "initial",
                  {"kind", "value", "center", "width", "height", "seed", "amplitude", "path"});
  InitialSpec& i = m.initial;
  i.kind = parse_enum(s, "kind", "constant", initial_kind_from_string);
  i.value = s.number("value", 0.0);
  i.center = s.numbers("center");
  if (!s.has("center")) i.center.assign(static_cast<std::size_t>(m.model.dim), 0.0);
  i.width = s.number("width", 1.0);
  i.height = s.number("height", 1.0);
  i.seed = s.unsigned_integer("seed", 0);
  i.amplitude = s.number("amplitude", 1.0);
  i.path = s.text("path", "");
  if (i.center.size() != static_cast<std::size_t>(m.model.dim))
    throw ConfigError(s.at("center"), "needs one coordinate per dimension");
  if (!(i.width > 0.0)) throw ConfigError(s.at("width"), "must be positive");
  if (!(i.amplitude >= 0.0)) throw ConfigError(s.at("amplitude"), "must be non-negative");
  if (i.kind == InitialKind::file && i.path.empty()) throw ConfigError(s.at("path"), "required for kind 'file'");
}

void parse_output(const json& root, RunManifest& m) {
  const Section s(root, "output", {"directory", "snapshots"});
  m.output.directory = s.text("directory", "out");
  m.output.snapshots = s.flag("snapshots", true);
  if (m.output.directory.empty()) throw ConfigError(s.at("directory"), "must not be empty");
}

}  // namespace

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::constant:
      return "constant";
    case InitialKind::gaussian_bump:
      return "gaussian_bump";
    case InitialKind::random:
      return "random";
    case InitialKind::file:
      return "file";
  }
  return "constant";
}

RunManifest parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "top level must be an object");
  static const std::set<std::string> sections{"model", "domain", "solver", "analysis", "kernel", "initial", "output"};
  for (const auto& item : root.items())
    if (!sections.count(item.key())) throw ConfigError("/" + item.key(), "unknown key");

  RunManifest m;
  parse_model(root, m);
  parse_domain(root, m);
  parse_solver(root, m);
  parse_kernel(root, m);
  parse_analysis(root, m);
  parse_initial(root, m);
  parse_output(root, m);
  return m;
}

RunManifest load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunManifest& m) {
  json root;
  root["model"] = {{"alpha", m.model.alpha}, {"p", m.model.p},         {"mu", m.model.mu},
                   {"k", m.model.k},         {"gamma", m.model.gamma}, {"m", m.model.m},
                   {"dim", m.model.dim},     {"coupling", to_string(m.model.coupling)}};
  root["domain"] = {{"half_width", m.domain.half_width}, {"points_per_axis", m.domain.points_per_axis}};
  root["solver"] = {{"dt", m.solver.dt},
                    {"t_final", m.solver.t_final},
                    {"eps_reg", m.solver.eps_reg},
                    {"blowup_threshold", m.solver.blowup_threshold},
                    {"scheme", to_string(m.solver.scheme)},
                    {"record_every", m.solver.record_every},
                    {"snapshot_times", m.solver.snapshot_times},
                    {"record_fields", m.solver.record_fields}};
  json kernel = {{"shape", to_string(m.kernel.shape)}};
  if (m.kernel.delta0) kernel["delta0"] = *m.kernel.delta0;
  if (m.kernel.eta) kernel["eta"] = *m.kernel.eta;
  root["kernel"] = kernel;
  json analysis = {{"c_gn", m.analysis.c_gn}, {"c4", m.analysis.c4}, {"c1", m.analysis.c1}, {"c2", m.analysis.c2}};
  if (m.analysis.delta) analysis["delta"] = *m.analysis.delta;
  if (m.analysis.tau) analysis["tau"] = *m.analysis.tau;
  root["analysis"] = analysis;
  root["initial"] = {{"kind", to_string(m.initial.kind)}, {"value", m.initial.value},
                     {"center", m.initial.center},        {"width", m.initial.width},
                     {"height", m.initial.height},        {"seed", m.initial.seed},
                     {"amplitude", m.initial.amplitude},  {"path", m.initial.path}};
  root["output"] = {{"directory", m.output.directory}, {"snapshots", m.output.snapshots}};
  return root.dump(2) + "\n";
}

std::optional<KernelGrid> build_kernel(const RunManifest& m) {
  if (m.model.coupling != CouplingMode::kernel) return std::nullopt;
  return discretize_kernel(m.kernel.shape, m.analysis.delta0, m.analysis.eta, m.domain);
}

std::vector<double> uniform_samples(std::uint64_t seed, std::size_t count, double amplitude) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  // Fixed 53-bit mapping so the stream is identical on every platform.
  for (double& v : out) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 * amplitude;
  return out;
}

Field initial_field(const RunManifest& m) {
  const DomainSpec& d = m.domain;
  const InitialSpec& spec = m.initial;
  switch (spec.kind) {
    case InitialKind::constant:
      return Field(d, spec.value);
    case InitialKind::random:
      return Field(d, uniform_samples(spec.seed, d.total_points(), spec.amplitude));
    case InitialKind::file: {
      Field f = read_snapshot(spec.path);
      if (!(f.domain() == d)) throw ConfigError("/initial/path", "snapshot grid does not match the domain");
      return f;
    }
    case InitialKind::gaussian_bump:
      break;
  }
  Field f(d);
  const int n = d.points_per_axis;
  const double inv = 1.0 / (2.0 * spec.width * spec.width);
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    double r2 = 0.0;
    if (d.dim == 1) {
      const double x = d.coordinate(static_cast<int>(idx)) - spec.center[0];
      r2 = x * x;
    } else {
      const double x = d.coordinate(static_cast<int>(idx) / n) - spec.center[0];
      const double y = d.coordinate(static_cast<int>(idx) % n) - spec.center[1];
      r2 = x * x + y * y;
    }
    f[idx] = spec.height * std::exp(-r2 * inv);
  }
  return f;
}

std::uint64_t manifest_hash(const RunManifest& manifest) {
  const std::string text = serialize_config(manifest);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace fracplap
