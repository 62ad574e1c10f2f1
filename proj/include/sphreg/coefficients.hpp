#ifndef SPHREG_COEFFICIENTS_HPP
#define SPHREG_COEFFICIENTS_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sphreg/fwd.hpp"

namespace sphreg {

/// Flat position of (l, m) in the degree-major coefficient layout
/// (0,0), (1,-1), (1,0), (1,1), (2,-2), ...; equals l*(l+1) + m.
inline Eigen::Index flat_index(int l, int m) {
  return static_cast<Eigen::Index>(l) * (l + 1) + m;
}

/// Inverse of flat_index: recovers (l, m) from the flat position.
inline std::pair<int, int> degree_order(Eigen::Index index) {
  int l = static_cast<int>(std::sqrt(static_cast<double>(index)));
  while (static_cast<Eigen::Index>(l) * l > index) --l;
  while (static_cast<Eigen::Index>(l + 1) * (l + 1) <= index) ++l;
  const int m = static_cast<int>(index - static_cast<Eigen::Index>(l) * (l + 1));
  return {l, m};
}

/// Band-limited set of spherical harmonic coefficients a_{l,m}, stored as a
/// dense complex vector of length (L+1)^2 in flat_index order.
///
/// The real_field flag marks sets whose entries satisfy the conjugate
/// symmetry a_{l,-m} = (-1)^m conj(a_{l,m}) of a real-valued field. Producers
/// set it: it is exact for generated or parsed sets and holds within the
/// analysis tolerance for sets recovered from grid samples.
template <typename Scalar>
class CoefficientSetT {
 public:
  using Complex = std::complex<Scalar>;
  using Vector = ComplexVector<Scalar>;

  CoefficientSetT() : CoefficientSetT(0) {}

  /// All-zero set with the given band limit.
  explicit CoefficientSetT(int band_limit)
      : band_limit_(checked_band_limit(band_limit)),
        entries_(Vector::Zero(coefficient_count(band_limit))),
        real_field_(true) {}

  template <typename Derived>
  CoefficientSetT(int band_limit, const Eigen::MatrixBase<Derived>& entries,
                  bool real_field = false)
      : band_limit_(checked_band_limit(band_limit)),
        entries_(entries),
        real_field_(real_field) {
    if (entries_.size() != coefficient_count(band_limit))
      throw std::invalid_argument("coefficient set needs (L+1)^2 entries");
  }

  static Eigen::Index coefficient_count(int band_limit) {
    return static_cast<Eigen::Index>(band_limit + 1) * (band_limit + 1);
  }

  int band_limit() const { return band_limit_; }
  Eigen::Index size() const { return entries_.size(); }

  const Vector& entries() const { return entries_; }
  Vector& entries() { return entries_; }

  Complex operator()(int l, int m) const { return entries_[checked_index(l, m)]; }
  Complex& operator()(int l, int m) { return entries_[checked_index(l, m)]; }

  /// View of the 2l+1 coefficients of degree l.
  auto block(int l) const { return entries_.segment(flat_index(l, -l), 2 * l + 1); }
  auto block(int l) { return entries_.segment(flat_index(l, -l), 2 * l + 1); }

  bool real_field() const { return real_field_; }
  void set_real_field(bool flag) { real_field_ = flag; }

  /// Checks a_{l,-m} = (-1)^m conj(a_{l,m}) within tol * max|a_{l,m}|.
  /// tol = 0 tests exact equality.
  bool satisfies_conjugate_symmetry(Scalar tol = Scalar(0)) const {
    const Scalar scale = entries_.size() ? entries_.cwiseAbs().maxCoeff() : Scalar(0);
    const Scalar bound = tol * scale;
    for (int l = 0; l <= band_limit_; ++l) {
      for (int m = 0; m <= l; ++m) {
        const Complex expected =
            (m % 2 ? Scalar(-1) : Scalar(1)) * std::conj(entries_[flat_index(l, m)]);
        if (std::abs(entries_[flat_index(l, -m)] - expected) > bound) return false;
      }
    }
    return true;
  }

  Eigen::Index zero_count() const {
    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < entries_.size(); ++i)
      if (entries_[i] == Complex(0)) ++n;
    return n;
  }

 private:
  static int checked_band_limit(int band_limit) {
    if (band_limit < 0) throw std::invalid_argument("band limit must be non-negative");
    return band_limit;
  }

  Eigen::Index checked_index(int l, int m) const {
    if (l < 0 || l > band_limit_ || m < -l || m > l)
      throw std::out_of_range("degree/order outside the band limit");
    return flat_index(l, m);
  }

  int band_limit_;
  Vector entries_;
  bool real_field_;
};

/// Positive per-degree weights beta_l, normalized by beta_0 = 1.
template <typename Scalar>
class DegreeWeightsT {
 public:
  using Vector = RealVector<Scalar>;

  /// Constant weights beta_l = 1.
  explicit DegreeWeightsT(int band_limit) : beta_(Vector::Ones(checked(band_limit) + 1)) {}

  explicit DegreeWeightsT(Vector beta) : beta_(std::move(beta)) { validate(); }

  static DegreeWeightsT ones(int band_limit) { return DegreeWeightsT(band_limit); }

  /// beta_0 = 1, beta_l = l^(-p) for l >= 1.
  static DegreeWeightsT power_law(int band_limit, Scalar p) {
    Vector b(checked(band_limit) + 1);
    for (int l = 0; l <= band_limit; ++l)
      b[l] = std::pow(Scalar(std::max(l, 1)), -p);
    return DegreeWeightsT(std::move(b));
  }

  int band_limit() const { return static_cast<int>(beta_.size()) - 1; }
  Scalar operator[](int l) const { return beta_[l]; }
  const Vector& values() const { return beta_; }

 private:
  static int checked(int band_limit) {
    if (band_limit < 0) throw std::invalid_argument("band limit must be non-negative");
    return band_limit;
  }

  void validate() const {
    if (beta_.size() < 1) throw std::invalid_argument("degree weights need at least beta_0");
    if (!(beta_[0] == Scalar(1)))
      throw std::domain_error("degree weights must be normalized by beta_0 = 1");
    for (Eigen::Index l = 0; l < beta_.size(); ++l)
      if (!(beta_[l] > Scalar(0)))
        throw std::domain_error("degree weights must be positive");
  }

  Vector beta_;
};

/// Per-degree Euclidean block norms A_l = sqrt(sum_m |a_{l,m}|^2).
template <typename Scalar>
class DegreeNormsT {
 public:
  using Vector = RealVector<Scalar>;

  DegreeNormsT() : values_(Vector::Zero(1)) {}

  explicit DegreeNormsT(Vector values) : values_(std::move(values)) {
    if (values_.size() < 1) throw std::invalid_argument("degree norms need at least A_0");
    for (Eigen::Index l = 0; l < values_.size(); ++l)
      if (!(values_[l] >= Scalar(0)))
        throw std::invalid_argument("degree norms must be non-negative");
  }

  int band_limit() const { return static_cast<int>(values_.size()) - 1; }
  Scalar operator[](int l) const { return values_[l]; }
  const Vector& values() const { return values_; }

  /// sum_l A_l^2, the squared l2 norm of the source set.
  Scalar squared_sum() const { return values_.squaredNorm(); }

 private:
  Vector values_;
};

namespace detail {

template <typename A, typename B>
void require_same_band_limit(const A& a, const B& b, const char* what) {
  if (a.band_limit() != b.band_limit())
    throw std::invalid_argument(std::string("band limit mismatch in ") + what);
}

}  // namespace detail

}  // namespace sphreg

#endif  // SPHREG_COEFFICIENTS_HPP
