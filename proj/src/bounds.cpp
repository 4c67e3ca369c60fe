#include "pushpull/bounds.hpp"

#include <cmath>
#include <limits>

namespace pushpull {

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (!(p >= 1.0)) throw ArgumentError("exponent p must satisfy p >= 1");
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

namespace {

// Reciprocal Hoelder exponents with the endpoint conventions t^{1/inf} = 1.
struct ExponentPair {
  double inv_p;
  double inv_q;
};

ExponentPair exponents(double p) {
  conjugate_exponent(p);  // validates
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return {inv_p, 1.0 - inv_p};
}

double spectrum_product(const Vector& alphas, int first, int last) {
  double result = 1.0;
  for (int i = first; i <= last; ++i) result *= alphas[i - 1];
  return result;
}

}  // namespace

BoundFactors factors_from_spectra(const std::vector<Vector>& spectra, int k, double p,
                                  bool masked) {
  if (spectra.empty()) {
    throw EmptySupportError("support mask excludes every sample point");
  }
  const int n = static_cast<int>(spectra.front().size());
  if (k < 0 || k > n) throw DegreeRangeError("factor degree out of range");
  const auto [inv_p, inv_q] = exponents(p);

  double lower_sup = 0.0, upper_sup = 0.0;
  for (const Vector& alphas : spectra) {
    const double lower_term = std::pow(spectrum_product(alphas, 1, k), inv_q) *
                              std::pow(spectrum_product(alphas, k + 1, n), -inv_p);
    const double upper_term = std::pow(spectrum_product(alphas, 1, n - k), inv_p) *
                              std::pow(spectrum_product(alphas, n - k + 1, n), -inv_q);
    lower_sup = std::max(lower_sup, lower_term);
    upper_sup = std::max(upper_sup, upper_term);
  }

  BoundFactors factors;
  factors.lower = 1.0 / lower_sup;
  factors.upper = upper_sup;
  factors.k = k;
  factors.p = p;
  factors.q = conjugate_exponent(p);
  factors.masked = masked;
  if (!std::isfinite(factors.lower) || !std::isfinite(factors.upper) ||
      factors.lower <= 0.0 || factors.upper <= 0.0) {
    throw NumericError("bound factors are not positive finite");
  }
  return factors;
}

namespace {

std::vector<Vector> masked_spectra(const Diffeomorphism& phi, const MaskFn& mask,
                                   const std::vector<Vector>& samples) {
  std::vector<Vector> spectra;
  spectra.reserve(samples.size());
  for (const Vector& x : samples) {
    if (mask && !mask(phi.source.wrap(x))) continue;
    spectra.push_back(singular_spectrum(phi, x).alphas);
  }
  if (spectra.empty()) {
    throw EmptySupportError("support mask excludes every sample point");
  }
  return spectra;
}

BoundFactors jacobian_power_factors(const std::vector<Vector>& spectra, int k, double p,
                                    double lower_exp, double upper_exp, bool masked) {
  double lower_sup = 0.0, upper_sup = 0.0;
  const int n = static_cast<int>(spectra.front().size());
  for (const Vector& alphas : spectra) {
    const double jac = spectrum_product(alphas, 1, n);
    lower_sup = std::max(lower_sup, std::pow(jac, lower_exp));
    upper_sup = std::max(upper_sup, std::pow(jac, upper_exp));
  }
  BoundFactors factors;
  factors.lower = 1.0 / lower_sup;
  factors.upper = upper_sup;
  factors.k = k;
  factors.p = p;
  factors.q = conjugate_exponent(p);
  factors.masked = masked;
  return factors;
}

}  // namespace

BoundFactors kform_factors(const Diffeomorphism& phi, const MaskFn& support_mask, int k,
                           double p, const std::vector<Vector>& samples) {
  return factors_from_spectra(masked_spectra(phi, support_mask, samples), k, p,
                              static_cast<bool>(support_mask));
}

BoundFactors scalar_factors(const Diffeomorphism& phi, const MaskFn& support_mask,
                            double p, const std::vector<Vector>& samples) {
  const auto [inv_p, inv_q] = exponents(p);
  return jacobian_power_factors(masked_spectra(phi, support_mask, samples), 0, p,
                                -inv_p, inv_p, static_cast<bool>(support_mask));
}

BoundFactors density_factors(const Diffeomorphism& phi, const MaskFn& support_mask,
                             double p, const std::vector<Vector>& samples) {
  const auto [inv_p, inv_q] = exponents(p);
  const auto spectra = masked_spectra(phi, support_mask, samples);
  auto factors = jacobian_power_factors(spectra, 0, p, inv_q, -inv_q,
                                        static_cast<bool>(support_mask));
  factors.k = static_cast<int>(spectra.front().size());
  return factors;
}

BoundFactors pullback_factors(const Diffeomorphism& phi, const MaskFn& eta_support_mask,
                              int k, double p, const std::vector<Vector>& target_samples) {
  return kform_factors(phi.inverted(), eta_support_mask, k, p, target_samples);
}

BoundFactors pullback_factors_alpha(const Diffeomorphism& phi,
                                    const MaskFn& eta_support_mask, int k, double p,
                                    const std::vector<Vector>& source_samples) {
  const int n = phi.source.dim();
  const auto [inv_p, inv_q] = exponents(p);

  double lower_sup = 0.0, upper_sup = 0.0;
  bool any = false;
  for (const Vector& x : source_samples) {
    if (eta_support_mask && !eta_support_mask(phi.target.wrap(phi.forward(x)))) continue;
    any = true;
    const Vector alphas = singular_spectrum(phi, x).alphas;
    // beta_i = alpha_{n-i+1}^{-1} o phi^{-1} turns the beta-route suprema into
    // forward-spectrum expressions on the source chart.
    const double lower_term = std::pow(spectrum_product(alphas, 1, n - k), inv_p) *
                              std::pow(spectrum_product(alphas, n - k + 1, n), -inv_q);
    const double upper_term = std::pow(spectrum_product(alphas, 1, k), inv_q) *
                              std::pow(spectrum_product(alphas, k + 1, n), -inv_p);
    lower_sup = std::max(lower_sup, lower_term);
    upper_sup = std::max(upper_sup, upper_term);
  }
  if (!any) throw EmptySupportError("support mask excludes every sample point");

  BoundFactors factors;
  factors.lower = 1.0 / lower_sup;
  factors.upper = upper_sup;
  factors.k = k;
  factors.p = p;
  factors.q = conjugate_exponent(p);
  factors.masked = static_cast<bool>(eta_support_mask);
  return factors;
}

}  // namespace pushpull
