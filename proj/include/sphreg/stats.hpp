#ifndef SPHREG_STATS_HPP
#define SPHREG_STATS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sphreg/fwd.hpp"

namespace sphreg {

/// Kolmogorov distribution tail Q(t) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 t^2).
inline double kolmogorov_tail(double t) {
  if (t < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * t * t);
    sum += sign * term;
    if (term < 1e-16 * std::max(sum, 1e-300)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

template <typename Scalar>
struct KsTestResultT {
  Scalar statistic{};
  Scalar p_value{};
};

/// Two-sample Kolmogorov-Smirnov test. The p-value uses the asymptotic
/// Kolmogorov tail with the Stephens small-sample correction
/// t = (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D, ne = n1 n2 / (n1 + n2).
template <typename Scalar>
KsTestResultT<Scalar> ks_two_sample(std::vector<Scalar> first, std::vector<Scalar> second) {
  if (first.empty() || second.empty())
    throw std::invalid_argument("ks_two_sample needs non-empty samples");
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());

  const std::size_t n1 = first.size();
  const std::size_t n2 = second.size();
  std::size_t i = 0, j = 0;
  Scalar d = Scalar(0);
  while (i < n1 || j < n2) {
    Scalar x;
    if (i < n1 && (j == n2 || first[i] <= second[j]))
      x = first[i];
    else
      x = second[j];
    // Step both empirical CDFs past every sample equal to x before comparing.
    while (i < n1 && first[i] == x) ++i;
    while (j < n2 && second[j] == x) ++j;
    const Scalar diff = std::abs(Scalar(i) / Scalar(n1) - Scalar(j) / Scalar(n2));
    d = std::max(d, diff);
  }

  const double ne = static_cast<double>(n1) * static_cast<double>(n2) /
                    (static_cast<double>(n1) + static_cast<double>(n2));
  const double t = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * static_cast<double>(d);
  return KsTestResultT<Scalar>{d, static_cast<Scalar>(kolmogorov_tail(t))};
}

}  // namespace sphreg

#endif  // SPHREG_STATS_HPP
