#ifndef SPHREG_REGULARIZE_HPP
#define SPHREG_REGULARIZE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sphreg/norms.hpp"

namespace sphreg {

/// Closed-form solution of
///   minimize (1/2)||a - a_o||_2^2 + lambda * sum_l beta_l A_l.
///
/// Degrees with A_l^o / beta_l > lambda survive with every coefficient
/// multiplied by alpha_l = (A_l^o - lambda beta_l) / A_l^o; all other degrees
/// are zeroed.
template <typename Scalar>
struct RegularizationResultT {
  Scalar lambda{};
  /// Surviving degrees, ascending.
  std::vector<int> active_set;
  /// alpha_l for every degree; zero off the active set.
  RealVector<Scalar> shrink_factors;
  /// Regularized coefficients a^r.
  CoefficientSetT<Scalar> coefficients;
  /// Degree norms A^r of the regularized coefficients.
  DegreeNormsT<Scalar> norms;
  /// sum_{l active} beta_l A_l^r = sum_{l active} beta_l (A_l^o - lambda beta_l).
  Scalar hybrid_norm_value{};
  /// ||a^r - a^o||_2^2 = lambda^2 sum_{active} beta_l^2 + sum_{inactive} (A_l^o)^2.
  Scalar discrepancy_value{};
  /// Fraction of exactly-zero coefficients among all (L+1)^2.
  Scalar sparsity{};

  bool is_active(int l) const { return shrink_factors[l] > Scalar(0); }
};

template <typename Scalar>
RegularizationResultT<Scalar> regularize(const CoefficientSetT<Scalar>& observed,
                                         const DegreeWeightsT<Scalar>& weights,
                                         Scalar lambda) {
  detail::require_same_band_limit(observed, weights, "regularize");
  if (!(lambda >= Scalar(0)))
    throw std::domain_error("regularize needs lambda >= 0");

  const int band_limit = observed.band_limit();
  const DegreeNormsT<Scalar> observed_norms = degree_norms(observed);

  RegularizationResultT<Scalar> result;
  result.lambda = lambda;
  result.shrink_factors = RealVector<Scalar>::Zero(band_limit + 1);
  result.coefficients = CoefficientSetT<Scalar>(band_limit);
  result.coefficients.set_real_field(observed.real_field());

  Scalar hybrid = Scalar(0);
  Scalar disc = Scalar(0);
  for (int l = 0; l <= band_limit; ++l) {
    const Scalar block_norm = observed_norms[l];
    const Scalar beta = weights[l];
    // Activity uses the ratio, matching the knot values of the frontier; a
    // boundary tie A_l^o = lambda beta_l zeroes the block.
    const Scalar shrunk_norm = block_norm - lambda * beta;
    if (block_norm / beta > lambda && shrunk_norm > Scalar(0)) {
      const Scalar alpha = shrunk_norm / block_norm;
      result.coefficients.block(l) = alpha * observed.block(l);
      result.shrink_factors[l] = alpha;
      result.active_set.push_back(l);
      hybrid += beta * shrunk_norm;
      disc += lambda * lambda * beta * beta;
    } else {
      disc += block_norm * block_norm;
    }
  }

  result.norms = degree_norms(result.coefficients);
  result.hybrid_norm_value = hybrid;
  result.discrepancy_value = disc;
  result.sparsity = static_cast<Scalar>(result.coefficients.zero_count()) /
                    static_cast<Scalar>(result.coefficients.size());
  return result;
}

/// Objective of the penalized problem at a candidate a:
/// (1/2)||a - a_o||_2^2 + lambda ||a||_{1,2,beta}.
template <typename Scalar>
Scalar objective(const CoefficientSetT<Scalar>& a, const CoefficientSetT<Scalar>& observed,
                 const DegreeWeightsT<Scalar>& weights, Scalar lambda) {
  detail::require_same_band_limit(a, observed, "objective");
  return Scalar(0.5) * discrepancy(a, observed) + lambda * hybrid_norm(a, weights);
}

/// Largest usable regularization parameter for a target l2 error.
template <typename Scalar>
struct ErrorBoundT {
  /// Open bound: any lambda < lambda_max keeps ||a^o - a^r||_2 below the
  /// requested error.
  Scalar lambda_max{};
  /// Smallest degree whose spectral tail sum_{l > ell_star} (A_l^o)^2 is at
  /// most epsilon^2/4.
  int ell_star{};
};

template <typename Scalar>
ErrorBoundT<Scalar> lambda_bound_for_error(const CoefficientSetT<Scalar>& observed,
                                           const DegreeWeightsT<Scalar>& weights,
                                           Scalar epsilon) {
  detail::require_same_band_limit(observed, weights, "lambda_bound_for_error");
  if (!(epsilon > Scalar(0)))
    throw std::domain_error("lambda_bound_for_error needs epsilon > 0");

  const int band_limit = observed.band_limit();
  const DegreeNormsT<Scalar> norms = degree_norms(observed);

  // tail[k] = sum_{l >= k} A_l^2, accumulated from the high end.
  RealVector<Scalar> tail = RealVector<Scalar>::Zero(band_limit + 2);
  for (int l = band_limit; l >= 0; --l) tail[l] = tail[l + 1] + norms[l] * norms[l];

  const Scalar target = epsilon * epsilon / Scalar(4);
  int ell_star = band_limit;
  for (int k = 0; k <= band_limit; ++k) {
    if (tail[k + 1] <= target) {
      ell_star = k;
      break;
    }
  }

  Scalar weight_sq = Scalar(0);
  for (int l = 0; l <= ell_star; ++l) weight_sq += weights[l] * weights[l];

  ErrorBoundT<Scalar> bound;
  bound.ell_star = ell_star;
  bound.lambda_max = epsilon / (Scalar(2) * std::sqrt(weight_sq));
  return bound;
}

}  // namespace sphreg

#endif  // SPHREG_REGULARIZE_HPP
