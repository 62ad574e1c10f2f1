#ifndef SPHREG_NORMS_HPP
#define SPHREG_NORMS_HPP

#include <cmath>
#include <stdexcept>

#include "sphreg/coefficients.hpp"

namespace sphreg {

/// Per-degree block norms A_l. A_l = 0 iff every coefficient of degree l is
/// zero (stableNorm avoids underflow for denormal entries).
template <typename Scalar>
DegreeNormsT<Scalar> degree_norms(const CoefficientSetT<Scalar>& a) {
  RealVector<Scalar> out(a.band_limit() + 1);
  for (int l = 0; l <= a.band_limit(); ++l) out[l] = a.block(l).stableNorm();
  return DegreeNormsT<Scalar>(std::move(out));
}

/// Weighted hybrid norm sum_l beta_l A_l.
template <typename Scalar>
Scalar hybrid_norm(const CoefficientSetT<Scalar>& a, const DegreeWeightsT<Scalar>& beta) {
  detail::require_same_band_limit(a, beta, "hybrid_norm");
  const DegreeNormsT<Scalar> norms = degree_norms(a);
  return beta.values().dot(norms.values());
}

/// Plain coefficientwise l1 norm sum_{l,m} |a_{l,m}|. Unlike the hybrid norm
/// this depends on the orientation of the coordinate axes.
template <typename Scalar>
Scalar l1_norm(const CoefficientSetT<Scalar>& a) {
  return a.entries().template lpNorm<1>();
}

/// Squared l2 distance sum_{l,m} |a_{l,m} - b_{l,m}|^2.
template <typename Scalar>
Scalar discrepancy(const CoefficientSetT<Scalar>& a, const CoefficientSetT<Scalar>& b) {
  detail::require_same_band_limit(a, b, "discrepancy");
  return (a.entries() - b.entries()).squaredNorm();
}

/// Per-coefficient complex soft threshold: each entry becomes
/// a_{l,m} * max(1 - lambda/|a_{l,m}|, 0). Minimizes
/// (1/2)||a - a_o||^2 + lambda * sum|a_{l,m}| over a. Baseline only; the
/// zero pattern it produces depends on the coordinate axes.
template <typename Scalar>
CoefficientSetT<Scalar> l1_soft_threshold(const CoefficientSetT<Scalar>& a, Scalar lambda) {
  if (!(lambda >= Scalar(0)))
    throw std::domain_error("soft threshold needs lambda >= 0");
  CoefficientSetT<Scalar> out(a.band_limit());
  out.set_real_field(a.real_field());
  auto& dst = out.entries();
  const auto& src = a.entries();
  for (Eigen::Index i = 0; i < src.size(); ++i) {
    const Scalar r = std::abs(src[i]);
    const Scalar shrink = r > lambda ? (r - lambda) / r : Scalar(0);
    dst[i] = src[i] * shrink;
  }
  return out;
}

}  // namespace sphreg

#endif  // SPHREG_NORMS_HPP
