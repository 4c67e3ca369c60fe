#pragma once

#include <optional>

#include "pushpull/scenario.hpp"

namespace pushpull {

enum class DirectionSelect { kPush, kPull, kBoth };

struct RunOptions {
  std::optional<int> quadrature_order;  // override the config when set
  std::optional<int> sup_samples;
  std::uint64_t seed = 0;
};

/// One requested (direction, k, p) tuple: either a certificate or the error
/// that aborted it.  Errors never abort sibling tuples.
struct TupleRecord {
  Direction direction = Direction::kPushforward;
  int k = 0;
  double p = 0.0;
  std::optional<BoundCertificate> certificate;
  std::string error_kind;
  std::string error_message;
};

struct RunReport {
  std::string scenario;
  int quadrature_order = 16;
  int sup_samples = 4096;
  double eps_sup = 1e-6;
  std::uint64_t seed = 0;
  std::vector<TupleRecord> tuples;

  int requested() const { return static_cast<int>(tuples.size()); }
  int passed() const;
  int failed() const;
  int errored() const;
  bool all_passed() const { return passed() == requested(); }
};

Json to_json(const RunReport& report);

/// Execute every (direction, degree, p) tuple of the scenario.  The report is
/// written to `output_path` (atomically) before returning when the path is
/// nonempty.
RunReport run(const ScenarioConfig& config, DirectionSelect select,
              const RunOptions& options = {}, const std::string& output_path = "");

/// Per-certificate CSV companion of the report.
void write_certificates_csv(const RunReport& report, const std::string& path);

/// Pointwise diagnostic export on a uniform grid.  Fields: any of alpha_i,
/// beta_i, jacobian, pointwise_norm, factor_integrands.  Numbers carry 17
/// significant digits.
void emit_pointwise_csv(const ScenarioConfig& config,
                        const std::vector<std::string>& fields, int resolution,
                        const std::string& path);

}  // namespace pushpull
