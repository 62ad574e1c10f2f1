#ifndef SPHREG_SCALING_HPP
#define SPHREG_SCALING_HPP

#include <cmath>
#include <stdexcept>

#include "sphreg/norms.hpp"

namespace sphreg {

/// Rescaling of a regularized field against its observed source.
///
/// The discrepancy of the scaled field is the quadratic
///   q(gamma) = ||a^o||^2 - 2 gamma c + gamma^2 ||a^r||^2,
/// with c = sum_l A_l^o A_l^r >= 0, valid because a^r is blockwise a
/// non-negative real multiple of a^o.
template <typename Scalar>
struct ScalingReportT {
  /// ||a^o||_2 / ||a^r||_2: equates the l2 norms.
  Scalar gamma_norm{};
  /// c / ||a^r||^2: minimizes q.
  Scalar gamma_opt{};
  Scalar observed_power{};     // ||a^o||^2
  Scalar cross_term{};         // c
  Scalar regularized_power{};  // ||a^r||^2

  Scalar discrepancy_at(Scalar gamma) const {
    return observed_power - Scalar(2) * gamma * cross_term +
           gamma * gamma * regularized_power;
  }
};

/// gamma = ||a^o||_2 / ||a^r||_2. Undefined for a fully thresholded
/// (all-zero) a^r.
template <typename Scalar>
Scalar scaling_factor(const CoefficientSetT<Scalar>& observed,
                      const CoefficientSetT<Scalar>& regularized) {
  detail::require_same_band_limit(observed, regularized, "scaling_factor");
  const Scalar reg_norm = regularized.entries().stableNorm();
  if (!(reg_norm > Scalar(0)))
    throw std::domain_error("scaling undefined: regularized coefficients are zero");
  return observed.entries().stableNorm() / reg_norm;
}

/// Builds the full report. Rejects pairs that are not blockwise collinear
/// with a non-negative real factor (such pairs cannot come from the
/// degree-block regularizer and make the real cross term meaningless).
template <typename Scalar>
ScalingReportT<Scalar> make_scaling_report(const CoefficientSetT<Scalar>& observed,
                                           const CoefficientSetT<Scalar>& regularized,
                                           Scalar collinearity_tol = Scalar(1e-9)) {
  detail::require_same_band_limit(observed, regularized, "make_scaling_report");

  ScalingReportT<Scalar> report;
  report.regularized_power = regularized.entries().squaredNorm();
  if (!(report.regularized_power > Scalar(0)))
    throw std::domain_error("scaling undefined: regularized coefficients are zero");
  report.observed_power = observed.entries().squaredNorm();

  Scalar cross = Scalar(0);
  for (int l = 0; l <= observed.band_limit(); ++l) {
    const Scalar reg_norm = regularized.block(l).stableNorm();
    if (reg_norm == Scalar(0)) continue;
    const Scalar obs_norm = observed.block(l).stableNorm();
    const std::complex<Scalar> inner = observed.block(l).dot(regularized.block(l));
    if (obs_norm == Scalar(0) ||
        std::abs(inner - std::complex<Scalar>(obs_norm * reg_norm)) >
            collinearity_tol * obs_norm * reg_norm)
      throw std::domain_error(
          "scaling rejected: degree blocks are not non-negative collinear");
    cross += obs_norm * reg_norm;
  }
  report.cross_term = cross;
  report.gamma_norm = scaling_factor(observed, regularized);
  report.gamma_opt = cross / report.regularized_power;
  return report;
}

/// argmin_gamma ||a^o - gamma a^r||_2^2 for blockwise-collinear pairs.
template <typename Scalar>
Scalar optimal_scaling(const CoefficientSetT<Scalar>& observed,
                       const CoefficientSetT<Scalar>& regularized) {
  return make_scaling_report(observed, regularized).gamma_opt;
}

/// Entrywise multiplication by gamma > 0; preserves the zero pattern and all
/// block directions, scales every degree norm by gamma.
template <typename Scalar>
CoefficientSetT<Scalar> scaled_field(const CoefficientSetT<Scalar>& a, Scalar gamma) {
  if (!(gamma > Scalar(0)))
    throw std::domain_error("scaled_field needs gamma > 0");
  return CoefficientSetT<Scalar>(a.band_limit(), (a.entries() * gamma).eval(),
                                 a.real_field());
}

}  // namespace sphreg

#endif  // SPHREG_SCALING_HPP
