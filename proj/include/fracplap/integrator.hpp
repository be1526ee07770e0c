#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fracplap/field.hpp"
#include "fracplap/fractional.hpp"
#include "fracplap/model.hpp"
#include "fracplap/spatial.hpp"

namespace fracplap {

enum class Scheme { explicit_step, lagged_implicit };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct SolverConfig {
  double dt = 1e-3;
  double t_final = 1.0;
  double eps_reg = 1e-6;
  double blowup_threshold = 1e8;
  Scheme scheme = Scheme::lagged_implicit;
  int record_every = 1;
  std::vector<double> snapshot_times;
  /// Keep the field at every recorded step (needed by lyapunov_monitor).
  bool record_fields = false;

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
  std::size_t step_count() const;

  bool operator==(const SolverConfig&) const = default;
};

enum class RunStatus { completed, blowup, nonfinite };

std::string to_string(RunStatus status);

struct NormRecord {
  double t = 0.0;
  double sup_norm = 0.0;
  double l2_norm = 0.0;
  double l1_norm = 0.0;
  double min_value = 0.0;

  bool operator==(const NormRecord&) const = default;
};

NormRecord measure(const Field& u, double t);

struct Snapshot {
  double t = 0.0;
  Field field;
};

struct RunReport {
  RunStatus status = RunStatus::completed;
  double status_time = 0.0;  ///< time of blow-up or non-finite detection
  std::vector<NormRecord> series;
  std::vector<Field> recorded_fields;  ///< parallel to series when record_fields is set
  Field final_field;
  std::vector<Snapshot> snapshots;
  std::size_t steps = 0;
  double final_time = 0.0;
  double wall_time = 0.0;
  std::vector<std::string> warnings;

  double max_sup_norm() const;
};

/// Pieces of the right-hand side that stay fixed for a run.
struct StepContext {
  ModelParameters params;
  SolverConfig config;
  L1Weights weights;
  const KernelGrid* kernel = nullptr;  ///< required in kernel mode when k != 0
};

/// mu max(u,0)^2 (1 - k C[u]) - gamma u with C the kernel convolution or
/// the global mass.
Field reaction_field(const Field& u, const ModelParameters& params, const KernelGrid* kernel);

/// Full right-hand side: p-Laplacian of u^m plus reaction.
Field rhs_field(const Field& u, const ModelParameters& params, const KernelGrid* kernel, double eps_reg);

/// Advances one step: returns u^n given u^0 .. u^{n-1} in `history`.
/// Throws SolverError when the lagged-implicit linear solve does not
/// converge within 10 * (grid points) iterations.
Field step(const HistoryBuffer& history, const StepContext& ctx);

/// Integrates from u0 to t_final. Throws std::invalid_argument for invalid
/// inputs (parameters outside the numerical regime, missing kernel).
RunReport run(const Field& u0, const ModelParameters& params, const SolverConfig& config,
              const KernelGrid* kernel = nullptr);

/// -sum_a (2 sin(pi k_a / n) / h)^2, the symbol of the 2 dim + 1 point Laplacian.
double laplacian_symbol(const DomainSpec& domain, int k0, int k1);

/// Exact-in-time solution of the semi-discrete D^a u = Lap_h u - gamma u,
/// mode by mode via the Mittag-Leffler function, at each requested time.
std::vector<Field> linear_spectral_reference(const Field& u0, double gamma, double alpha,
                                             const std::vector<double>& times);

enum class FieldStatus { ok, blowup, nonfinite };

FieldStatus detect_blowup(const Field& field, double threshold);

}  // namespace fracplap
