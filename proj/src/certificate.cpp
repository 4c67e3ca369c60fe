#include "pushpull/certificate.hpp"

#include <cmath>

namespace pushpull {

std::string to_string(Direction direction) {
  return direction == Direction::kPushforward ? "pushforward" : "pullback";
}

namespace {

struct RuleDensities {
  Vector values;  // sqrt(det g) at the rule nodes
};

RuleDensities densities_for(const ChartDomain& chart, const QuadratureRule& rule) {
  RuleDensities result;
  result.values.resize(rule.nodes.size());
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    result.values[i] = volume_density(chart, rule.nodes[i]);
  }
  return result;
}

constexpr double kTiny = 1e-300;

}  // namespace

/// Per-(form, direction) evaluations shared across all exponents p.
struct TransportContext::FieldCache {
  // |field| at the rule nodes of its own chart, coarse and fine.
  std::vector<double> field_rule, field_rule_fine;
  // |transported field| at the other chart's rule nodes.
  std::vector<double> moved_rule, moved_rule_fine;
  // Matched sup sets: field at its chart's points, transported field at the
  // image points (index-aligned).
  std::vector<double> field_sup, moved_sup;
  // Flags marking sup points that belong only to the fine node set.
  std::vector<std::uint8_t> fine_only;
  // Support mask evaluated at the field's chart points.
  std::vector<std::uint8_t> mask;
  RuleDensities field_density, field_density_fine, moved_density, moved_density_fine;
  Vector fingerprint;
  const ChartDomain* field_chart = nullptr;
  const ChartDomain* moved_chart = nullptr;
  const QuadratureRule *field_rule_ptr = nullptr, *field_rule_fine_ptr = nullptr;
  const QuadratureRule *moved_rule_ptr = nullptr, *moved_rule_fine_ptr = nullptr;
};

TransportContext::~TransportContext() = default;
TransportContext::TransportContext(TransportContext&&) noexcept = default;
TransportContext& TransportContext::operator=(TransportContext&&) noexcept = default;

TransportContext::TransportContext(std::string scenario_id, Diffeomorphism phi,
                                   CertifyOptions options)
    : scenario_id_(std::move(scenario_id)), phi_(std::move(phi)), options_(options) {
  const int order = options_.quadrature_order;
  source_rule_ = quadrature_nodes(phi_.source, order);
  source_rule_fine_ = quadrature_nodes(phi_.source, 2 * order);
  target_rule_ = quadrature_nodes(phi_.target, order);
  target_rule_fine_ = quadrature_nodes(phi_.target, 2 * order);

  // Matched sample sets: every target-side candidate that pulls back into the
  // source box is represented by its preimage, so suprema on the two charts
  // range over corresponding points.
  std::vector<std::uint8_t> fine_flags;
  auto add_source = [&](const Vector& x, bool fine) {
    source_points_.push_back(x);
    fine_flags.push_back(fine ? 1 : 0);
  };
  for (const Vector& x : halton_points(phi_.source, options_.sup_samples)) {
    add_source(x, false);
  }
  for (const Vector& x : source_rule_.nodes) add_source(x, false);
  for (const Vector& x : source_rule_fine_.nodes) add_source(x, true);
  auto pull_in = [&](const Vector& y, bool fine) {
    const Vector x = phi_.map_inverse(y);
    if (phi_.source.contains(x)) add_source(x, fine);
  };
  for (const Vector& y : halton_points(phi_.target, options_.sup_samples)) {
    pull_in(y, false);
  }
  for (const Vector& y : target_rule_.nodes) pull_in(y, false);
  for (const Vector& y : target_rule_fine_.nodes) pull_in(y, true);

  target_points_.reserve(source_points_.size());
  forward_spectra_.reserve(source_points_.size());
  inverse_spectra_.reserve(source_points_.size());
  for (size_t i = 0; i < source_points_.size(); ++i) {
    const Vector& x = source_points_[i];
    const Vector y = phi_.map_forward(x);
    target_points_.push_back(y);
    forward_spectra_.push_back(singular_spectrum(phi_, x).alphas);
    inverse_spectra_.push_back(inverse_spectrum(phi_, y).alphas);
  }
  fine_only_ = std::move(fine_flags);
}

Vector TransportContext::field_fingerprint(const FormField& form) const {
  // Coefficients sampled at fixed probe points distinguish distinct forms of
  // the same degree, so the cache never serves stale evaluations.
  const auto probes = halton_points(form.chart, 3);
  Vector print(3 * (form.coeffs_at(probes[0]).size() + 1));
  int at = 0;
  for (const Vector& x : probes) {
    const Vector c = form.coeffs_at(x);
    for (int i = 0; i < c.size(); ++i) print[at++] = c[i];
    print[at++] = form.supported_at(x) ? 1.0 : 0.0;
  }
  return print;
}

const TransportContext::FieldCache& TransportContext::field_cache(
    const FormField& form, Direction direction) const {
  const auto key = std::make_pair(form.degree, direction);
  const Vector fingerprint = field_fingerprint(form);
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    if (it->second->fingerprint.size() == fingerprint.size() &&
        (it->second->fingerprint - fingerprint).cwiseAbs().maxCoeff() == 0.0) {
      return *it->second;
    }
    cache_.erase(it);
  }

  auto cache = std::make_unique<FieldCache>();
  cache->fingerprint = fingerprint;
  const bool push = direction == Direction::kPushforward;
  const FormField moved = push ? pushforward(phi_, form) : pullback(phi_, form);

  cache->field_chart = push ? &phi_.source : &phi_.target;
  cache->moved_chart = push ? &phi_.target : &phi_.source;
  cache->field_rule_ptr = push ? &source_rule_ : &target_rule_;
  cache->field_rule_fine_ptr = push ? &source_rule_fine_ : &target_rule_fine_;
  cache->moved_rule_ptr = push ? &target_rule_ : &source_rule_;
  cache->moved_rule_fine_ptr = push ? &target_rule_fine_ : &source_rule_fine_;

  auto eval_at = [](const FormField& f, const std::vector<Vector>& points,
                    std::vector<double>& out) {
    out.resize(points.size());
    for (size_t i = 0; i < points.size(); ++i) out[i] = pointwise_norm(f, points[i]);
  };
  eval_at(form, cache->field_rule_ptr->nodes, cache->field_rule);
  eval_at(form, cache->field_rule_fine_ptr->nodes, cache->field_rule_fine);
  eval_at(moved, cache->moved_rule_ptr->nodes, cache->moved_rule);
  eval_at(moved, cache->moved_rule_fine_ptr->nodes, cache->moved_rule_fine);

  const auto& field_points = push ? source_points_ : target_points_;
  const auto& moved_points = push ? target_points_ : source_points_;
  eval_at(form, field_points, cache->field_sup);
  eval_at(moved, moved_points, cache->moved_sup);
  cache->fine_only = fine_only_;

  cache->mask.resize(field_points.size());
  for (size_t i = 0; i < field_points.size(); ++i) {
    cache->mask[i] = form.supported_at(field_points[i]) ? 1 : 0;
  }

  cache->field_density = densities_for(*cache->field_chart, *cache->field_rule_ptr);
  cache->field_density_fine =
      densities_for(*cache->field_chart, *cache->field_rule_fine_ptr);
  cache->moved_density = densities_for(*cache->moved_chart, *cache->moved_rule_ptr);
  cache->moved_density_fine =
      densities_for(*cache->moved_chart, *cache->moved_rule_fine_ptr);

  auto [inserted, ok] = cache_.emplace(key, std::move(cache));
  return *inserted->second;
}

namespace {

double lp_from_values(const std::vector<double>& values, const QuadratureRule& rule,
                      const RuleDensities& density, double p) {
  double sum = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    sum += rule.weights[i] * density.values[i] * std::pow(values[i], p);
  }
  return std::pow(sum, 1.0 / p);
}

double sup_from_values(const std::vector<double>& values,
                       const std::vector<std::uint8_t>& fine_only, bool include_fine) {
  double result = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!include_fine && fine_only[i]) continue;
    result = std::max(result, values[i]);
  }
  return result;
}

}  // namespace

BoundCertificate TransportContext::certify(const FormField& form, Direction direction,
                                           double p) const {
  conjugate_exponent(p);  // validates p
  const bool push = direction == Direction::kPushforward;
  if (push && form.chart.dim() != phi_.source.dim()) {
    throw ShapeError("pushforward certificate expects a form on the source chart");
  }
  if (!push && form.chart.dim() != phi_.target.dim()) {
    throw ShapeError("pullback certificate expects a form on the target chart");
  }
  const auto& cache = field_cache(form, direction);

  BoundCertificate cert;
  cert.scenario = scenario_id_;
  cert.direction = direction;
  cert.k = form.degree;
  cert.p = p;
  cert.eps_sup = options_.eps_sup;

  if (std::isinf(p)) {
    // Sup norms range over the full matched sample sets on both charts, so
    // the pointwise inequalities transfer to the estimates exactly; the
    // sampling gap to the true essential sup is budgeted by eps_sup alone.
    cert.norm_source = sup_from_values(cache.field_sup, cache.fine_only, true);
    cert.norm_pushed = sup_from_values(cache.moved_sup, cache.fine_only, true);
    cert.norm_source_fine = cert.norm_source;
    cert.norm_pushed_fine = cert.norm_pushed;
  } else {
    cert.norm_source =
        lp_from_values(cache.field_rule, *cache.field_rule_ptr, cache.field_density, p);
    cert.norm_source_fine = lp_from_values(cache.field_rule_fine, *cache.field_rule_fine_ptr,
                                           cache.field_density_fine, p);
    cert.norm_pushed =
        lp_from_values(cache.moved_rule, *cache.moved_rule_ptr, cache.moved_density, p);
    cert.norm_pushed_fine = lp_from_values(cache.moved_rule_fine, *cache.moved_rule_fine_ptr,
                                           cache.moved_density_fine, p);
  }
  if (cert.norm_source <= kTiny) {
    throw NumericError("source norm vanishes; certificate ratios are undefined");
  }

  const auto& spectra = push ? forward_spectra_ : inverse_spectra_;
  std::vector<Vector> masked;
  masked.reserve(spectra.size());
  for (size_t i = 0; i < spectra.size(); ++i) {
    if (cache.mask[i]) masked.push_back(spectra[i]);
  }
  cert.factors =
      factors_from_spectra(masked, cert.k, p, static_cast<bool>(form.support_mask));

  cert.r_low = cert.norm_pushed / (cert.factors.lower * cert.norm_source);
  cert.r_up = cert.norm_pushed / (cert.factors.upper * cert.norm_source);

  const double quad_src = std::abs(cert.norm_source - cert.norm_source_fine) /
                          std::max(cert.norm_source_fine, kTiny);
  const double quad_push = std::abs(cert.norm_pushed - cert.norm_pushed_fine) /
                           std::max(cert.norm_pushed_fine, kTiny);
  cert.eps_quad = std::max(quad_src, quad_push);
  cert.eps = cert.eps_quad + cert.eps_sup;
  cert.pass = cert.r_low >= 1.0 - cert.eps && cert.r_up <= 1.0 + cert.eps;
  return cert;
}

BoundCertificate certify(const std::string& scenario_id, const Diffeomorphism& phi,
                         const FormField& form, Direction direction, double p,
                         const CertifyOptions& options) {
  TransportContext context(scenario_id, phi, options);
  return context.certify(form, direction, p);
}

}  // namespace pushpull
