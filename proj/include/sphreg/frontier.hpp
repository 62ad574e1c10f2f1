#ifndef SPHREG_FRONTIER_HPP
#define SPHREG_FRONTIER_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sphreg/norms.hpp"

namespace sphreg {

/// Pareto frontier of (||a^r||_{1,2,beta}, ||a^r - a^o||_2^2) as lambda varies.
///
/// The curve is piecewise quadratic with knots at the distinct ratios
/// A_l^o / beta_l. On a segment with constant active set G,
///   discrepancy(lambda) = lambda^2 S2(G) + R(G),
///   hybrid_norm(lambda) = N1(G) - lambda S2(G),
/// where S2 = sum_G beta_l^2, N1 = sum_G beta_l A_l^o and R = sum_{not G} (A_l^o)^2.
template <typename Scalar>
class FrontierT {
 public:
  struct Segment {
    /// Active set is constant for lambda in [lambda_lo, lambda_hi); the
    /// discrepancy/norm formulas extend continuously to both endpoints.
    Scalar lambda_lo{};
    Scalar lambda_hi{};
    int active_degrees{};
    Scalar weight_sq{};      // S2(G)
    Scalar weighted_norm{};  // N1(G)
    Scalar residual{};       // R(G)
  };

  struct Point {
    Scalar discrepancy{};
    Scalar hybrid_norm{};
    int active_degrees{};
  };

  FrontierT() = default;

  int band_limit() const { return band_limit_; }

  /// Distinct knot values A_l^o / beta_l, strictly decreasing.
  const std::vector<Scalar>& knots() const { return knots_descending_; }

  /// Segments ordered by increasing lambda; segments()[i].lambda_hi is the
  /// i-th smallest knot.
  const std::vector<Segment>& segments() const { return segments_; }

  /// Smallest lambda with a^r = 0 (0 for an all-zero input).
  Scalar lambda_zero() const { return lambda_zero_; }

  /// ||a^o||_2^2, the discrepancy at lambda >= lambda_zero.
  Scalar total_power() const { return total_power_; }

  /// ||a^o||_{1,2,beta}, the norm at lambda = 0.
  Scalar total_hybrid_norm() const { return total_hybrid_norm_; }

  Point evaluate(Scalar lambda) const {
    if (!(lambda >= Scalar(0)))
      throw std::domain_error("frontier evaluation needs lambda >= 0");
    if (segments_.empty() || lambda >= lambda_zero_)
      return Point{total_power_, Scalar(0), 0};
    const Segment& seg = segments_[locate(lambda)];
    return Point{lambda * lambda * seg.weight_sq + seg.residual,
                 seg.weighted_norm - lambda * seg.weight_sq, seg.active_degrees};
  }

  /// #G(lambda) with the strict inequality A_l^o / beta_l > lambda.
  int active_count(Scalar lambda) const { return evaluate(lambda).active_degrees; }

  template <typename S>
  friend FrontierT<S> build_frontier(const CoefficientSetT<S>&, const DegreeWeightsT<S>&);

  template <typename S>
  friend LambdaSolutionT<S> lambda_from_sigma(const FrontierT<S>&, S);

  template <typename S>
  friend LambdaSolutionT<S> lambda_from_kappa(const FrontierT<S>&, S);

 private:
  std::size_t locate(Scalar lambda) const {
    // First knot strictly above lambda indexes the containing segment.
    const auto it =
        std::upper_bound(knots_ascending_.begin(), knots_ascending_.end(), lambda);
    return static_cast<std::size_t>(it - knots_ascending_.begin());
  }

  Scalar discrepancy_at_hi(std::size_t i) const {
    const Segment& s = segments_[i];
    return s.lambda_hi * s.lambda_hi * s.weight_sq + s.residual;
  }

  Scalar hybrid_norm_at_hi(std::size_t i) const {
    const Segment& s = segments_[i];
    return s.weighted_norm - s.lambda_hi * s.weight_sq;
  }

  int band_limit_ = 0;
  std::vector<Scalar> knots_ascending_;
  std::vector<Scalar> knots_descending_;
  std::vector<Segment> segments_;
  Scalar lambda_zero_ = Scalar(0);
  Scalar total_power_ = Scalar(0);
  Scalar total_hybrid_norm_ = Scalar(0);
};

template <typename Scalar>
FrontierT<Scalar> build_frontier(const CoefficientSetT<Scalar>& observed,
                                 const DegreeWeightsT<Scalar>& weights) {
  detail::require_same_band_limit(observed, weights, "build_frontier");
  const DegreeNormsT<Scalar> norms = degree_norms(observed);

  struct Entry {
    Scalar ratio;
    Scalar beta;
    Scalar block_norm;
  };
  std::vector<Entry> entries;
  for (int l = 0; l <= observed.band_limit(); ++l) {
    if (norms[l] > Scalar(0))
      entries.push_back({norms[l] / weights[l], weights[l], norms[l]});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.ratio < b.ratio; });

  FrontierT<Scalar> frontier;
  frontier.band_limit_ = observed.band_limit();
  if (entries.empty()) return frontier;

  // Group exact ratio ties: tied degrees enter and leave the active set
  // together, so they form a single knot.
  struct Group {
    Scalar ratio;
    int count = 0;
    Scalar beta_sq = Scalar(0);
    Scalar beta_norm = Scalar(0);
    Scalar norm_sq = Scalar(0);
  };
  std::vector<Group> groups;
  for (const Entry& e : entries) {
    if (groups.empty() || groups.back().ratio != e.ratio) {
      groups.push_back(Group{e.ratio, 0, Scalar(0), Scalar(0), Scalar(0)});
    }
    Group& g = groups.back();
    ++g.count;
    g.beta_sq += e.beta * e.beta;
    g.beta_norm += e.beta * e.block_norm;
    g.norm_sq += e.block_norm * e.block_norm;
  }

  const std::size_t n = groups.size();
  // Suffix sums over groups with ratio >= knot_i give the per-segment
  // coefficients; the prefix of dropped groups gives the residual directly,
  // avoiding cancellation.
  std::vector<Scalar> suffix_beta_sq(n + 1, Scalar(0));
  std::vector<Scalar> suffix_beta_norm(n + 1, Scalar(0));
  std::vector<int> suffix_count(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    suffix_beta_sq[i] = suffix_beta_sq[i + 1] + groups[i].beta_sq;
    suffix_beta_norm[i] = suffix_beta_norm[i + 1] + groups[i].beta_norm;
    suffix_count[i] = suffix_count[i + 1] + groups[i].count;
  }

  frontier.knots_ascending_.reserve(n);
  frontier.segments_.reserve(n);
  Scalar prefix_norm_sq = Scalar(0);
  for (std::size_t i = 0; i < n; ++i) {
    typename FrontierT<Scalar>::Segment seg;
    seg.lambda_lo = (i == 0) ? Scalar(0) : groups[i - 1].ratio;
    seg.lambda_hi = groups[i].ratio;
    seg.active_degrees = suffix_count[i];
    seg.weight_sq = suffix_beta_sq[i];
    seg.weighted_norm = suffix_beta_norm[i];
    seg.residual = prefix_norm_sq;
    frontier.segments_.push_back(seg);
    frontier.knots_ascending_.push_back(groups[i].ratio);
    prefix_norm_sq += groups[i].norm_sq;
  }

  frontier.knots_descending_.assign(frontier.knots_ascending_.rbegin(),
                                    frontier.knots_ascending_.rend());
  frontier.lambda_zero_ = frontier.knots_ascending_.back();
  frontier.total_power_ = prefix_norm_sq;
  frontier.total_hybrid_norm_ = suffix_beta_norm[0];
  return frontier;
}

/// How a constrained-model solution relates to the penalized model.
enum class ConstraintStatus {
  /// The constraint is active; the returned lambda reproduces it.
  active,
  /// sigma^2 >= ||a^o||_2^2: the solution is a = 0 and the recovered
  /// parameter is not unique (any lambda >= lambda_zero works).
  inactive_all_zero,
  /// kappa >= ||a^o||_{1,2,beta}: the solution is a = a^o with multiplier 0.
  inactive_identity,
};

template <typename Scalar>
struct LambdaSolutionT {
  ConstraintStatus status{ConstraintStatus::active};
  Scalar lambda{};
};

/// Parameter recovery for the discrepancy-constrained model
/// minimize ||a||_{1,2,beta} subject to ||a - a_o||_2^2 <= sigma^2.
template <typename Scalar>
LambdaSolutionT<Scalar> lambda_from_sigma(const FrontierT<Scalar>& frontier, Scalar sigma) {
  if (!(sigma >= Scalar(0)))
    throw std::domain_error("lambda_from_sigma needs sigma >= 0");
  const Scalar target = sigma * sigma;
  if (target >= frontier.total_power())
    return {ConstraintStatus::inactive_all_zero, frontier.lambda_zero()};
  if (sigma == Scalar(0)) return {ConstraintStatus::active, Scalar(0)};

  const std::size_t n = frontier.segments_.size();
  std::size_t lo = 0, hi = n - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (frontier.discrepancy_at_hi(mid) >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  const auto& seg = frontier.segments_[lo];
  Scalar lambda = std::sqrt((target - seg.residual) / seg.weight_sq);
  lambda = std::clamp(lambda, seg.lambda_lo, seg.lambda_hi);
  return {ConstraintStatus::active, lambda};
}

/// Parameter recovery for the norm-constrained model
/// minimize (1/2)||a - a_o||_2^2 subject to ||a||_{1,2,beta} <= kappa.
template <typename Scalar>
LambdaSolutionT<Scalar> lambda_from_kappa(const FrontierT<Scalar>& frontier, Scalar kappa) {
  if (!(kappa >= Scalar(0)))
    throw std::domain_error("lambda_from_kappa needs kappa >= 0");
  if (kappa >= frontier.total_hybrid_norm())
    return {ConstraintStatus::inactive_identity, Scalar(0)};
  if (kappa == Scalar(0)) return {ConstraintStatus::active, frontier.lambda_zero()};

  const std::size_t n = frontier.segments_.size();
  std::size_t lo = 0, hi = n - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (frontier.hybrid_norm_at_hi(mid) <= kappa)
      hi = mid;
    else
      lo = mid + 1;
  }
  const auto& seg = frontier.segments_[lo];
  Scalar lambda = (seg.weighted_norm - kappa) / seg.weight_sq;
  lambda = std::clamp(lambda, seg.lambda_lo, seg.lambda_hi);
  return {ConstraintStatus::active, lambda};
}

/// Staircase of active-degree counts against the discrepancy.
template <typename Scalar>
struct L0FrontierT {
  struct Step {
    Scalar lambda_lo{};
    Scalar lambda_hi{};
    Scalar discrepancy_lo{};
    Scalar discrepancy_hi{};
    int active_degrees{};
  };
  /// Steps ordered by increasing lambda; counts weakly decrease.
  std::vector<Step> steps;
};

template <typename Scalar>
L0FrontierT<Scalar> l0_frontier(const FrontierT<Scalar>& frontier) {
  L0FrontierT<Scalar> out;
  out.steps.reserve(frontier.segments().size());
  for (const auto& seg : frontier.segments()) {
    typename L0FrontierT<Scalar>::Step step;
    step.lambda_lo = seg.lambda_lo;
    step.lambda_hi = seg.lambda_hi;
    step.discrepancy_lo = seg.lambda_lo * seg.lambda_lo * seg.weight_sq + seg.residual;
    step.discrepancy_hi = seg.lambda_hi * seg.lambda_hi * seg.weight_sq + seg.residual;
    step.active_degrees = seg.active_degrees;
    out.steps.push_back(step);
  }
  return out;
}

}  // namespace sphreg

#endif  // SPHREG_FRONTIER_HPP
