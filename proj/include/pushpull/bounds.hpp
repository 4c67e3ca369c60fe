#pragma once

#include <vector>

#include "pushpull/diffeo.hpp"
#include "pushpull/form_field.hpp"

namespace pushpull {

/// Conjugate exponent: 1/p + 1/q = 1, with 1 <-> infinity at the endpoints.
double conjugate_exponent(double p);

/// Two-sided L^p bound factors for one transport instance.  `lower` already
/// includes the outer inversion: lower * ||omega||_p <= ||transported||_p
/// <= upper * ||omega||_p.
struct BoundFactors {
  double lower = 0.0;
  double upper = 0.0;
  int k = 0;
  double p = 0.0;
  double q = 0.0;
  bool masked = false;
};

/// Factor algebra shared by all theorem variants, evaluated on precomputed
/// singular spectra (each entry: one sample's descending spectrum).  Spectra
/// must already be restricted to the support mask.
BoundFactors factors_from_spectra(const std::vector<Vector>& spectra, int k, double p,
                                  bool masked);

/// k-form pushforward factors over masked source samples:
/// lower = ||1_S (a_1..a_k)^{1/q} (a_{k+1}..a_n)^{-1/p}||_inf^{-1},
/// upper = ||1_S (a_1..a_{n-k})^{1/p} (a_{n-k+1}..a_n)^{-1/q}||_inf.
BoundFactors kform_factors(const Diffeomorphism& phi, const MaskFn& support_mask, int k,
                           double p, const std::vector<Vector>& samples);

/// Function (degree-0) factors, phrased through the Jacobian determinant
/// J = a_1...a_n; agrees with kform_factors at k = 0.
BoundFactors scalar_factors(const Diffeomorphism& phi, const MaskFn& support_mask,
                            double p, const std::vector<Vector>& samples);

/// Density (degree-n) factors J^{1/q} / J^{-1/q}; agrees with kform_factors
/// at k = n.
BoundFactors density_factors(const Diffeomorphism& phi, const MaskFn& support_mask,
                             double p, const std::vector<Vector>& samples);

/// Pullback factors from the inverse spectra (beta route), over masked
/// samples on the target chart.
BoundFactors pullback_factors(const Diffeomorphism& phi, const MaskFn& eta_support_mask,
                              int k, double p, const std::vector<Vector>& target_samples);

/// The same pullback factors rewritten through the forward spectra via
/// beta_i = alpha_{n-i+1}^{-1} o phi^{-1}, evaluated on the source chart.
/// Samples are masked through the map: x counts iff phi(x) is in supp eta.
BoundFactors pullback_factors_alpha(const Diffeomorphism& phi,
                                    const MaskFn& eta_support_mask, int k, double p,
                                    const std::vector<Vector>& source_samples);

}  // namespace pushpull
