#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracplap/field.hpp"
#include "fracplap/integrator.hpp"
#include "fracplap/model.hpp"
#include "fracplap/spatial.hpp"

namespace fracplap {

enum class InitialKind { constant, gaussian_bump, random, file };

std::string to_string(InitialKind kind);

struct InitialSpec {
  InitialKind kind = InitialKind::constant;
  double value = 0.0;           ///< constant
  std::vector<double> center;   ///< gaussian_bump; defaults to the origin
  double width = 1.0;           ///< gaussian_bump standard deviation
  double height = 1.0;          ///< gaussian_bump peak
  std::uint64_t seed = 0;       ///< random
  double amplitude = 1.0;       ///< random: samples uniform in [0, amplitude)
  std::string path;             ///< file: snapshot written by write_snapshot

  bool operator==(const InitialSpec&) const = default;
};

struct KernelSpec {
  KernelShape shape = KernelShape::box;
  std::optional<double> delta0;  ///< default L/8
  std::optional<double> eta;     ///< default half the kernel minimum on |x| <= delta0

  bool operator==(const KernelSpec&) const = default;
};

struct OutputSpec {
  std::string directory = "out";
  bool snapshots = true;

  bool operator==(const OutputSpec&) const = default;
};

/// Everything needed to reproduce one run. `analysis.delta0` and
/// `analysis.eta` always hold the resolved kernel values.
struct RunManifest {
  ModelParameters model;
  DomainSpec domain;
  SolverConfig solver;
  AnalysisConstants analysis;
  KernelSpec kernel;
  InitialSpec initial;
  OutputSpec output;

  bool operator==(const RunManifest&) const = default;
};

/// Parses and validates a JSON manifest. Throws ConfigError whose path()
/// is a JSON pointer to the offending key.
RunManifest parse_config(const std::string& text);

/// Reads `path` and parses it; unreadable files raise ConfigError at "".
RunManifest load_config(const std::string& path);

/// Canonical JSON text; parse_config(serialize_config(m)) == m.
std::string serialize_config(const RunManifest& manifest);

/// Builds the competition kernel (kernel coupling only).
std::optional<KernelGrid> build_kernel(const RunManifest& manifest);

/// Builds u0 from the initial-condition spec.
Field initial_field(const RunManifest& manifest);

/// Uniform samples in [0, amplitude) from a 64-bit Mersenne Twister.
std::vector<double> uniform_samples(std::uint64_t seed, std::size_t count, double amplitude);

/// 64-bit FNV-1a hash of the canonical serialization.
std::uint64_t manifest_hash(const RunManifest& manifest);

}  // namespace fracplap
