#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "pushpull/bounds.hpp"

namespace pushpull {

enum class Direction { kPushforward, kPullback };

std::string to_string(Direction direction);

struct CertifyOptions {
  int quadrature_order = 16;
  int sup_samples = 4096;
  double eps_sup = 1e-6;  // sampling tolerance for sup-norm factors
  std::uint64_t seed = 0;
};

/// One certified theorem instance.  The pass rule is
/// r_low >= 1 - eps and r_up <= 1 + eps with
/// r_low = ||pushed||_p / (lower * ||omega||_p),
/// r_up  = ||pushed||_p / (upper * ||omega||_p).
struct BoundCertificate {
  std::string scenario;
  Direction direction = Direction::kPushforward;
  int k = 0;
  double p = 0.0;
  double norm_source = 0.0;   // at the configured order
  double norm_pushed = 0.0;
  double norm_source_fine = 0.0;  // at twice the order
  double norm_pushed_fine = 0.0;
  BoundFactors factors;
  double r_low = 0.0;
  double r_up = 0.0;
  double eps_quad = 0.0;
  double eps_sup = 0.0;
  double eps = 0.0;
  bool pass = false;
};

/// Precomputed transport state for one diffeomorphism: matched sup-sample
/// sets (target samples are the forward images of the source samples, and
/// source samples include the pulled-back target samples), the forward and
/// inverse spectra there, and the two quadrature rules per chart.
class TransportContext {
 public:
  TransportContext(std::string scenario_id, Diffeomorphism phi, CertifyOptions options);
  ~TransportContext();
  TransportContext(TransportContext&&) noexcept;
  TransportContext& operator=(TransportContext&&) noexcept;

  const Diffeomorphism& phi() const { return phi_; }
  const CertifyOptions& options() const { return options_; }
  const std::string& scenario_id() const { return scenario_id_; }

  const std::vector<Vector>& source_points() const { return source_points_; }
  const std::vector<Vector>& target_points() const { return target_points_; }
  const std::vector<Vector>& forward_spectra() const { return forward_spectra_; }
  const std::vector<Vector>& inverse_spectra() const { return inverse_spectra_; }

  const QuadratureRule& source_rule() const { return source_rule_; }
  const QuadratureRule& source_rule_fine() const { return source_rule_fine_; }
  const QuadratureRule& target_rule() const { return target_rule_; }
  const QuadratureRule& target_rule_fine() const { return target_rule_fine_; }

  /// Certify one (direction, p) tuple for a form of the matching degree:
  /// pushforward expects the form on the source chart, pullback on the
  /// target chart.
  BoundCertificate certify(const FormField& form, Direction direction, double p) const;

 private:
  struct FieldCache;
  const FieldCache& field_cache(const FormField& form, Direction direction) const;
  Vector field_fingerprint(const FormField& form) const;

  std::string scenario_id_;
  Diffeomorphism phi_;
  CertifyOptions options_;
  std::vector<Vector> source_points_;
  std::vector<Vector> target_points_;
  std::vector<std::uint8_t> fine_only_;
  std::vector<Vector> forward_spectra_;
  std::vector<Vector> inverse_spectra_;
  QuadratureRule source_rule_, source_rule_fine_;
  QuadratureRule target_rule_, target_rule_fine_;
  mutable std::map<std::pair<int, Direction>, std::unique_ptr<FieldCache>> cache_;
};

/// Convenience wrapper around TransportContext for a single tuple.
BoundCertificate certify(const std::string& scenario_id, const Diffeomorphism& phi,
                         const FormField& form, Direction direction, double p,
                         const CertifyOptions& options = {});

}  // namespace pushpull
