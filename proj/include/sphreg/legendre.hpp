#ifndef SPHREG_LEGENDRE_HPP
#define SPHREG_LEGENDRE_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sphreg/fwd.hpp"

namespace sphreg {

/// Legendre polynomial P_l(x), scaled so that P_l(1) = 1.
template <typename Scalar>
Scalar legendre_p(int degree, Scalar x) {
  if (degree < 0) throw std::invalid_argument("legendre_p needs degree >= 0");
  if (degree == 0) return Scalar(1);
  Scalar prev = Scalar(1);
  Scalar curr = x;
  for (int l = 2; l <= degree; ++l) {
    const Scalar next =
        (Scalar(2 * l - 1) * x * curr - Scalar(l - 1) * prev) / Scalar(l);
    prev = curr;
    curr = next;
  }
  return curr;
}

/// Tables of sn_{l,m}, the colatitude part of the orthonormal spherical
/// harmonics: Y_{l,m}(theta, phi) = sn_{l,m}(cos theta) e^{i m phi} for
/// m >= 0, Condon-Shortley sign included (sn_{1,1} < 0 on (0, pi)).
///
/// Values are generated by the standard stable three-term recurrence on the
/// fully normalized functions, ascending in l at fixed m, which keeps every
/// intermediate O(1) and avoids factorial overflow up to l of a few thousand.
/// The recurrence factors depend only on the band limit and are precomputed,
/// so one table instance can fill values for many arguments cheaply.
template <typename Scalar>
class LegendreTableT {
 public:
  explicit LegendreTableT(int band_limit) : band_limit_(band_limit) {
    if (band_limit < 0)
      throw std::invalid_argument("legendre table needs band limit >= 0");
    const std::size_t entries = size();
    diag_factor_.assign(static_cast<std::size_t>(band_limit) + 1, Scalar(0));
    rec_factor_.assign(entries, Scalar(0));
    rec_factor_inv_.assign(entries, Scalar(0));
    for (int m = 1; m <= band_limit; ++m)
      diag_factor_[m] = -std::sqrt(Scalar(2 * m + 1) / Scalar(2 * m));
    for (int m = 0; m <= band_limit; ++m) {
      for (int l = m + 1; l <= band_limit; ++l) {
        const Scalar f = std::sqrt(Scalar(4.0 * l * l - 1.0) /
                                   Scalar(static_cast<double>(l) * l -
                                          static_cast<double>(m) * m));
        rec_factor_[tri_index(l, m)] = f;
        rec_factor_inv_[tri_index(l, m)] = Scalar(1) / f;
      }
    }
  }

  int band_limit() const { return band_limit_; }

  /// Position of (l, m), 0 <= m <= l, in the packed lower-triangular layout.
  static std::size_t tri_index(int l, int m) {
    return static_cast<std::size_t>(l) * (l + 1) / 2 + static_cast<std::size_t>(m);
  }

  std::size_t size() const {
    return static_cast<std::size_t>(band_limit_ + 1) * (band_limit_ + 2) / 2;
  }

  /// Fills out[tri_index(l, m)] = sn_{l,m}(x) for all 0 <= m <= l <= L.
  /// x = cos theta must lie in [-1, 1].
  void compute(Scalar x, Scalar* out) const {
    const int L = band_limit_;
    const Scalar sin_theta = std::sqrt((Scalar(1) - x) * (Scalar(1) + x));
    out[0] = Scalar(1) / std::sqrt(Scalar(4) * std::numbers::pi_v<Scalar>);
    for (int m = 1; m <= L; ++m)
      out[tri_index(m, m)] = diag_factor_[m] * sin_theta * out[tri_index(m - 1, m - 1)];
    for (int m = 0; m < L; ++m) {
      out[tri_index(m + 1, m)] =
          rec_factor_[tri_index(m + 1, m)] * x * out[tri_index(m, m)];
      for (int l = m + 2; l <= L; ++l) {
        out[tri_index(l, m)] =
            rec_factor_[tri_index(l, m)] *
            (x * out[tri_index(l - 1, m)] -
             rec_factor_inv_[tri_index(l - 1, m)] * out[tri_index(l - 2, m)]);
      }
    }
  }

  void compute(Scalar x, std::vector<Scalar>& out) const {
    out.resize(size());
    compute(x, out.data());
  }

 private:
  int band_limit_;
  std::vector<Scalar> diag_factor_;
  std::vector<Scalar> rec_factor_;
  std::vector<Scalar> rec_factor_inv_;
};

/// Gauss-Legendre nodes (ascending, in (-1, 1)) and weights for n points.
/// Exact for polynomials of degree <= 2n - 1; the weights sum to 2.
template <typename Scalar>
void gauss_legendre(int n, RealVector<Scalar>& nodes, RealVector<Scalar>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre needs n >= 1");
  nodes.resize(n);
  weights.resize(n);
  const int half = (n + 1) / 2;
  const double pi = std::numbers::pi;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    if (n % 2 == 1 && i == half - 1) z = 0.0;  // middle root is exact
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n and P_{n-1} by the ascending recurrence.
      double p_curr = 1.0;
      double p_prev = 0.0;
      for (int l = 1; l <= n; ++l) {
        const double p_next = ((2.0 * l - 1.0) * z * p_curr - (l - 1.0) * p_prev) / l;
        p_prev = p_curr;
        p_curr = p_next;
      }
      derivative = n * (z * p_curr - p_prev) / (z * z - 1.0);
      const double step = p_curr / derivative;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(std::abs(z), 1.0)) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p_curr = 1.0;
    double p_prev = 0.0;
    for (int l = 1; l <= n; ++l) {
      const double p_next = ((2.0 * l - 1.0) * z * p_curr - (l - 1.0) * p_prev) / l;
      p_prev = p_curr;
      p_curr = p_next;
    }
    derivative = n * (z * p_curr - p_prev) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * derivative * derivative);
    nodes[i] = static_cast<Scalar>(-z);
    nodes[n - 1 - i] = static_cast<Scalar>(z);
    weights[i] = static_cast<Scalar>(w);
    weights[n - 1 - i] = static_cast<Scalar>(w);
  }
}

}  // namespace sphreg

#endif  // SPHREG_LEGENDRE_HPP
