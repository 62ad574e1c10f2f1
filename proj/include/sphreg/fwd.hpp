#ifndef SPHREG_FWD_HPP
#define SPHREG_FWD_HPP

#include <complex>

#include <Eigen/Dense>

namespace sphreg {

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar> class CoefficientSetT;
template <typename Scalar> class DegreeWeightsT;
template <typename Scalar> class DegreeNormsT;
template <typename Scalar> struct RegularizationResultT;
template <typename Scalar> struct ErrorBoundT;
template <typename Scalar> class FrontierT;
template <typename Scalar> struct LambdaSolutionT;
template <typename Scalar> struct L0FrontierT;
template <typename Scalar> struct ScalingReportT;
template <typename Scalar> class LegendreTableT;
template <typename Scalar> class QuadratureGridT;
template <typename Scalar> struct GridFieldT;
template <typename Scalar> struct FieldErrorsT;
template <typename Scalar> struct RotationT;
template <typename Scalar> struct SpherePointT;
template <typename Scalar> class PowerSpectrumT;
template <typename Scalar> struct EnsembleSpecT;
template <typename Scalar> struct IsotropyReportT;
template <typename Scalar> struct KsTestResultT;

using CoefficientSet = CoefficientSetT<double>;
using DegreeWeights = DegreeWeightsT<double>;
using DegreeNorms = DegreeNormsT<double>;
using RegularizationResult = RegularizationResultT<double>;
using ErrorBound = ErrorBoundT<double>;
using Frontier = FrontierT<double>;
using LambdaSolution = LambdaSolutionT<double>;
using L0Frontier = L0FrontierT<double>;
using ScalingReport = ScalingReportT<double>;
using LegendreTable = LegendreTableT<double>;
using QuadratureGrid = QuadratureGridT<double>;
using GridField = GridFieldT<double>;
using FieldErrors = FieldErrorsT<double>;
using Rotation = RotationT<double>;
using SpherePoint = SpherePointT<double>;
using PowerSpectrum = PowerSpectrumT<double>;
using EnsembleSpec = EnsembleSpecT<double>;
using IsotropyReport = IsotropyReportT<double>;
using KsTestResult = KsTestResultT<double>;

}  // namespace sphreg

#endif  // SPHREG_FWD_HPP
