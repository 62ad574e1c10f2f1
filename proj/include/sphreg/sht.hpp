#ifndef SPHREG_SHT_HPP
#define SPHREG_SHT_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sphreg/coefficients.hpp"
#include "sphreg/legendre.hpp"

namespace sphreg {

template <typename Scalar>
struct SpherePointT {
  Scalar theta{};  // colatitude in [0, pi]
  Scalar phi{};    // longitude
};

template <typename Scalar>
Vector3<Scalar> unit_vector(const SpherePointT<Scalar>& p) {
  const Scalar st = std::sin(p.theta);
  return Vector3<Scalar>(st * std::cos(p.phi), st * std::sin(p.phi), std::cos(p.theta));
}

template <typename Scalar>
SpherePointT<Scalar> sphere_point(const Vector3<Scalar>& v) {
  const Scalar z = std::clamp(v[2], Scalar(-1), Scalar(1));
  return SpherePointT<Scalar>{std::acos(z), std::atan2(v[1], v[0])};
}

/// Rotation in ZYZ Euler angles: matrix() = Rz(alpha) Ry(beta) Rz(gamma).
template <typename Scalar>
struct RotationT {
  Scalar alpha{};
  Scalar beta{};
  Scalar gamma{};

  Matrix3<Scalar> matrix() const {
    return (Eigen::AngleAxis<Scalar>(alpha, Vector3<Scalar>::UnitZ()) *
            Eigen::AngleAxis<Scalar>(beta, Vector3<Scalar>::UnitY()) *
            Eigen::AngleAxis<Scalar>(gamma, Vector3<Scalar>::UnitZ()))
        .toRotationMatrix();
  }

  RotationT inverse() const { return RotationT{-gamma, -beta, -alpha}; }

  /// ZYZ angles of a rotation matrix (beta in [0, pi]).
  static RotationT from_matrix(const Matrix3<Scalar>& r) {
    const Scalar sin_beta = std::hypot(r(0, 2), r(1, 2));
    RotationT out;
    out.beta = std::atan2(sin_beta, r(2, 2));
    if (sin_beta > Scalar(1e-12)) {
      out.alpha = std::atan2(r(1, 2), r(0, 2));
      out.gamma = std::atan2(r(2, 1), -r(2, 0));
    } else {
      // beta ~ 0 or pi: only alpha + sign * gamma is determined.
      out.alpha = std::atan2(r(1, 0), r(0, 0));
      if (r(2, 2) < Scalar(0)) out.alpha = -out.alpha;
      out.gamma = Scalar(0);
    }
    return out;
  }

  friend RotationT operator*(const RotationT& a, const RotationT& b) {
    return from_matrix(Matrix3<Scalar>(a.matrix() * b.matrix()));
  }
};

/// Gauss-Legendre x uniform-longitude grid that integrates products of
/// spherical harmonics exactly up to the band limit: L+1 colatitude rings at
/// the Gauss-Legendre nodes in cos(theta) and 2L+1 equispaced longitudes.
template <typename Scalar>
class QuadratureGridT {
 public:
  explicit QuadratureGridT(int band_limit) : band_limit_(band_limit) {
    if (band_limit < 0)
      throw std::invalid_argument("quadrature grid needs band limit >= 0");
    RealVector<Scalar> nodes, node_weights;
    gauss_legendre(band_limit + 1, nodes, node_weights);
    const int n = band_limit + 1;
    cos_theta_.resize(n);
    theta_.resize(n);
    weights_.resize(n);
    // Nodes come ascending in x = cos(theta); store rings north to south.
    for (int j = 0; j < n; ++j) {
      cos_theta_[j] = nodes[n - 1 - j];
      theta_[j] = std::acos(cos_theta_[j]);
      weights_[j] = node_weights[n - 1 - j];
    }
  }

  int band_limit() const { return band_limit_; }
  int n_theta() const { return band_limit_ + 1; }
  int n_phi() const { return 2 * band_limit_ + 1; }
  Eigen::Index size() const {
    return static_cast<Eigen::Index>(n_theta()) * n_phi();
  }

  const RealVector<Scalar>& colatitudes() const { return theta_; }
  const RealVector<Scalar>& cos_colatitudes() const { return cos_theta_; }
  const RealVector<Scalar>& weights() const { return weights_; }

  Scalar phi(int k) const {
    return Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(k) / Scalar(n_phi());
  }

  /// Row-major point index: ring j (north to south), longitude k.
  Eigen::Index index(int j, int k) const {
    return static_cast<Eigen::Index>(j) * n_phi() + k;
  }

  bool operator==(const QuadratureGridT& other) const {
    return band_limit_ == other.band_limit_;
  }

 private:
  int band_limit_;
  RealVector<Scalar> cos_theta_;
  RealVector<Scalar> theta_;
  RealVector<Scalar> weights_;
};

/// Field samples on a quadrature grid, in grid row-major order. Values are
/// stored complex; a field synthesized from real-field coefficients has
/// imaginary parts at rounding level.
template <typename Scalar>
struct GridFieldT {
  QuadratureGridT<Scalar> grid;
  ComplexVector<Scalar> values;

  explicit GridFieldT(QuadratureGridT<Scalar> g)
      : grid(std::move(g)), values(ComplexVector<Scalar>::Zero(grid.size())) {}

  GridFieldT(QuadratureGridT<Scalar> g, ComplexVector<Scalar> v)
      : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size())
      throw std::invalid_argument("grid field value count does not match the grid");
  }

  Scalar max_abs_imag() const {
    Scalar m = Scalar(0);
    for (Eigen::Index i = 0; i < values.size(); ++i)
      m = std::max(m, std::abs(values[i].imag()));
    return m;
  }

  RealVector<Scalar> real_values() const { return values.real(); }
};

namespace detail {

// Unit roots e^{2 pi i t / n} for the longitude transforms.
template <typename Scalar>
ComplexVector<Scalar> unit_roots(int n) {
  ComplexVector<Scalar> roots(n);
  for (int t = 0; t < n; ++t)
    roots[t] = std::polar(Scalar(1),
                          Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(t) / Scalar(n));
  return roots;
}

// Colatitude factor of Y_{l,m} for any sign of m: sn_{l,|m|} times the
// conjugation sign (-1)^m for m < 0.
template <typename Scalar>
Scalar order_sign(int m) {
  return (m < 0 && (m & 1)) ? Scalar(-1) : Scalar(1);
}

// Sum of the truncated series at one point given a precomputed sn table.
template <typename Scalar>
std::complex<Scalar> evaluate_with_table(const CoefficientSetT<Scalar>& a,
                                         const std::vector<Scalar>& table, Scalar phi) {
  using Complex = std::complex<Scalar>;
  const int L = a.band_limit();
  Complex sum(0);
  for (int m = 0; m <= L; ++m) {
    Complex pos(0), neg(0);
    for (int l = m; l <= L; ++l) {
      const Scalar sn = table[LegendreTableT<Scalar>::tri_index(l, m)];
      pos += a(l, m) * sn;
      if (m > 0) neg += a(l, -m) * sn;
    }
    const Complex e = std::polar(Scalar(1), Scalar(m) * phi);
    sum += pos * e;
    if (m > 0) sum += order_sign<Scalar>(-m) * neg * std::conj(e);
  }
  return sum;
}

}  // namespace detail

/// Orthonormal spherical harmonic Y_{l,m}(theta, phi), Condon-Shortley phase,
/// satisfying Y_{l,-m} = (-1)^m conj(Y_{l,m}) and Y_{1,0} = sqrt(3/4pi) cos(theta).
template <typename Scalar>
std::complex<Scalar> spherical_harmonic(int l, int m, Scalar theta, Scalar phi) {
  if (l < 0 || std::abs(m) > l)
    throw std::invalid_argument("spherical_harmonic needs 0 <= |m| <= l");
  const int am = std::abs(m);
  LegendreTableT<Scalar> table(l);
  std::vector<Scalar> values;
  table.compute(std::cos(theta), values);
  const Scalar sn = values[LegendreTableT<Scalar>::tri_index(l, am)];
  return detail::order_sign<Scalar>(m) * sn * std::polar(Scalar(1), Scalar(m) * phi);
}

/// Pointwise evaluation of the truncated series sum a_{l,m} Y_{l,m} at one
/// point. O(L^2) per call.
template <typename Scalar>
std::complex<Scalar> evaluate(const CoefficientSetT<Scalar>& a, Scalar theta, Scalar phi) {
  LegendreTableT<Scalar> table(a.band_limit());
  std::vector<Scalar> values;
  table.compute(std::cos(theta), values);
  return detail::evaluate_with_table(a, values, phi);
}

/// Evaluates the truncated series on the whole grid. Separable over the
/// colatitude (Legendre) and longitude (Fourier) factors: O(L^3) total.
template <typename Scalar>
GridFieldT<Scalar> synthesize(const CoefficientSetT<Scalar>& a,
                              const QuadratureGridT<Scalar>& grid) {
  using Complex = std::complex<Scalar>;
  if (a.band_limit() > grid.band_limit())
    throw std::invalid_argument("coefficient band limit exceeds the grid band limit");

  const int La = a.band_limit();
  const int n_phi = grid.n_phi();
  const ComplexVector<Scalar> roots = detail::unit_roots<Scalar>(n_phi);
  LegendreTableT<Scalar> table(La);
  std::vector<Scalar> sn;

  GridFieldT<Scalar> field(grid);
  ComplexVector<Scalar> ring_modes(2 * La + 1);
  for (int j = 0; j < grid.n_theta(); ++j) {
    table.compute(grid.cos_colatitudes()[j], sn);
    for (int m = 0; m <= La; ++m) {
      Complex pos(0), neg(0);
      for (int l = m; l <= La; ++l) {
        const Scalar v = sn[LegendreTableT<Scalar>::tri_index(l, m)];
        pos += a(l, m) * v;
        if (m > 0) neg += a(l, -m) * v;
      }
      ring_modes[La + m] = pos;
      if (m > 0) ring_modes[La - m] = detail::order_sign<Scalar>(-m) * neg;
    }
    for (int k = 0; k < n_phi; ++k) {
      Complex value = ring_modes[La];
      for (int m = 1; m <= La; ++m) {
        const Complex e = roots[(static_cast<long long>(m) * k) % n_phi];
        value += ring_modes[La + m] * e + ring_modes[La - m] * std::conj(e);
      }
      field.values[grid.index(j, k)] = value;
    }
  }
  return field;
}

/// Fourier coefficients of a grid field: a_{l,m} = integral of
/// f conj(Y_{l,m}) over the sphere, computed with the grid quadrature. Exact
/// inverse of synthesize for fields band-limited at the grid band limit.
template <typename Scalar>
CoefficientSetT<Scalar> analyze(const GridFieldT<Scalar>& field) {
  using Complex = std::complex<Scalar>;
  const QuadratureGridT<Scalar>& grid = field.grid;
  const int L = grid.band_limit();
  const int n_phi = grid.n_phi();
  const Scalar phi_weight =
      Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(n_phi);
  const ComplexVector<Scalar> roots = detail::unit_roots<Scalar>(n_phi);
  LegendreTableT<Scalar> table(L);
  std::vector<Scalar> sn;

  CoefficientSetT<Scalar> out(L);
  auto& coeffs = out.entries();
  ComplexVector<Scalar> ring_modes(2 * L + 1);
  for (int j = 0; j < grid.n_theta(); ++j) {
    for (int m = -L; m <= L; ++m) {
      Complex acc(0);
      for (int k = 0; k < n_phi; ++k) {
        const long long t = ((static_cast<long long>(m) * k) % n_phi + n_phi) % n_phi;
        acc += field.values[grid.index(j, k)] * std::conj(roots[t]);
      }
      ring_modes[L + m] = acc * phi_weight;
    }
    table.compute(grid.cos_colatitudes()[j], sn);
    const Scalar w = grid.weights()[j];
    for (int m = 0; m <= L; ++m) {
      for (int l = m; l <= L; ++l) {
        const Scalar c = w * sn[LegendreTableT<Scalar>::tri_index(l, m)];
        coeffs[flat_index(l, m)] += c * ring_modes[L + m];
        if (m > 0)
          coeffs[flat_index(l, -m)] +=
              detail::order_sign<Scalar>(-m) * c * ring_modes[L - m];
      }
    }
  }
  out.set_real_field(out.satisfies_conjugate_symmetry(Scalar(1e-10)));
  return out;
}

/// Coefficients of the rotated field (R(rho) f)(x) = f(rho^{-1} x), obtained
/// by evaluating the series at the rotated grid points and re-analyzing.
/// Exact for band-limited fields since rotation preserves the degree.
/// O(L^4): direct evaluation at (L+1)(2L+1) rotated nodes.
template <typename Scalar>
CoefficientSetT<Scalar> rotate_field(const CoefficientSetT<Scalar>& a,
                                     const RotationT<Scalar>& rotation,
                                     const QuadratureGridT<Scalar>& grid) {
  if (a.band_limit() != grid.band_limit())
    throw std::invalid_argument("rotate_field needs the grid at the band limit");

  const Matrix3<Scalar> inverse = rotation.matrix().transpose();
  LegendreTableT<Scalar> table(a.band_limit());
  std::vector<Scalar> sn;

  GridFieldT<Scalar> resampled(grid);
  for (int j = 0; j < grid.n_theta(); ++j) {
    const Scalar theta = grid.colatitudes()[j];
    const Scalar sin_theta = std::sin(theta);
    const Scalar cos_theta = grid.cos_colatitudes()[j];
    for (int k = 0; k < grid.n_phi(); ++k) {
      const Scalar phi = grid.phi(k);
      const Vector3<Scalar> x(sin_theta * std::cos(phi), sin_theta * std::sin(phi),
                              cos_theta);
      const Vector3<Scalar> y = inverse * x;
      const Scalar z = std::clamp(y[2], Scalar(-1), Scalar(1));
      table.compute(z, sn);
      resampled.values[grid.index(j, k)] =
          detail::evaluate_with_table(a, sn, std::atan2(y[1], y[0]));
    }
  }
  return analyze(resampled);
}

template <typename Scalar>
struct FieldErrorsT {
  Scalar l2{};
  Scalar linf{};
};

/// Quadrature L2 distance and max pointwise distance between two fields on
/// the same grid.
template <typename Scalar>
FieldErrorsT<Scalar> field_errors(const GridFieldT<Scalar>& f, const GridFieldT<Scalar>& g) {
  if (!(f.grid == g.grid))
    throw std::invalid_argument("field_errors needs fields on the same grid");
  const QuadratureGridT<Scalar>& grid = f.grid;
  const Scalar phi_weight =
      Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(grid.n_phi());
  Scalar sum = Scalar(0);
  Scalar linf = Scalar(0);
  for (int j = 0; j < grid.n_theta(); ++j) {
    Scalar ring = Scalar(0);
    for (int k = 0; k < grid.n_phi(); ++k) {
      const Scalar d = std::abs(f.values[grid.index(j, k)] - g.values[grid.index(j, k)]);
      ring += d * d;
      linf = std::max(linf, d);
    }
    sum += grid.weights()[j] * ring;
  }
  return FieldErrorsT<Scalar>{std::sqrt(sum * phi_weight), linf};
}

}  // namespace sphreg

#endif  // SPHREG_SHT_HPP
