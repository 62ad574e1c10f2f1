#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sphreg/simulate.hpp"
#include "support/oracles.hpp"

using namespace sphreg;

namespace {
PowerSpectrum flat_spectrum(int band_limit, double c) {
  return PowerSpectrum(RealVector<double>::Constant(band_limit + 1, c));
}
}  // namespace

TEST_CASE("power spectrum validation") {
  CHECK(flat_spectrum(4, 1.0).band_limit() == 4);
  RealVector<double> bad(2);
  bad << 1.0, -0.1;
  CHECK_THROWS_AS(PowerSpectrum(std::move(bad)), std::domain_error);
}

TEST_CASE("an all-zero spectrum samples to the zero set") {
  const CoefficientSet a = sample_isotropic(PowerSpectrum(5), 123u);
  CHECK(a.zero_count() == a.size());
  CHECK(a.real_field());
}

TEST_CASE("samples carry the conjugate symmetry exactly") {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const CoefficientSet a = sample_isotropic(cmb_like_spectrum<double>(8), seed);
    CHECK(a.satisfies_conjugate_symmetry());
    CHECK(a.real_field());
  }
}

TEST_CASE("identical seeds give bitwise identical samples") {
  const PowerSpectrum spectrum = cmb_like_spectrum<double>(6);
  const CoefficientSet a = sample_isotropic(spectrum, 4242u);
  const CoefficientSet b = sample_isotropic(spectrum, 4242u);
  for (Eigen::Index i = 0; i < a.size(); ++i) CHECK(a.entries()[i] == b.entries()[i]);

  const CoefficientSet c = sample_isotropic(spectrum, 4243u);
  CHECK((a.entries() - c.entries()).norm() > 0.0);
}

TEST_CASE("derived seeds are order independent") {
  CHECK(derive_seed(7, 0) == derive_seed(7, 0));
  CHECK(derive_seed(7, 0) != derive_seed(7, 1));
  CHECK(derive_seed(7, 1) != derive_seed(8, 1));
}

TEST_CASE("monopole variance: 1e5 seeds give sample variance 1 within 0.02") {
  const PowerSpectrum spectrum = flat_spectrum(0, 1.0);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = sample_isotropic(spectrum, derive_seed(555u, i))(0, 0).real();
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  const double variance = sum_sq / n - mean * mean;
  CHECK(variance == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("the realized spectrum estimator is unbiased within Monte Carlo 3 sigma") {
  const int L = 4;
  RealVector<double> c(L + 1);
  c << 0.5, 1.0, 2.0, 0.25, 1.5;
  const PowerSpectrum spectrum{std::move(c)};
  const int n = 10000;
  RealVector<double> mean = RealVector<double>::Zero(L + 1);
  for (int i = 0; i < n; ++i) {
    const CoefficientSet a = sample_isotropic(spectrum, derive_seed(77u, i));
    mean += estimate_spectrum(a).values();
  }
  mean /= n;
  for (int l = 0; l <= L; ++l) {
    // Var(C^_l) = 2 C_l^2 / (2l + 1) per realization.
    const double sigma =
        spectrum[l] * std::sqrt(2.0 / ((2.0 * l + 1.0) * n));
    CHECK(std::abs(mean[l] - spectrum[l]) < 3.0 * sigma);
  }
}

TEST_CASE("estimate_spectrum basics") {
  CHECK(estimate_spectrum(CoefficientSet(3)).values().maxCoeff() == 0.0);

  CoefficientSet dipole(2);
  const double alpha = std::sqrt(4.0 * std::numbers::pi / 3.0);
  dipole(1, 0) = alpha;
  const PowerSpectrum est = estimate_spectrum(dipole);
  CHECK(est[1] == doctest::Approx(alpha * alpha / 3.0).epsilon(1e-14));
  CHECK(est[0] == 0.0);
  CHECK(est[2] == 0.0);
}

TEST_CASE("scaled spectrum D_l = l(l+1) C_l / (2 pi)") {
  RealVector<double> c(3);
  c << 9.0, 1.0, std::numbers::pi;
  const RealVector<double> d = scaled_spectrum(PowerSpectrum{std::move(c)});
  CHECK(d[0] == 0.0);
  CHECK(d[2] == doctest::Approx(3.0).epsilon(1e-14));

  // The inverse relation C_l = 2 pi / (l (l + 1)) flattens D to 1.
  RealVector<double> inv(4);
  inv[0] = 1.0;
  for (int l = 1; l <= 3; ++l) inv[l] = 2.0 * std::numbers::pi / (l * (l + 1.0));
  const RealVector<double> flat = scaled_spectrum(PowerSpectrum{std::move(inv)});
  for (int l = 1; l <= 3; ++l) CHECK(flat[l] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cmb-like preset: non-negative with a flat tail of E A_l^2") {
  const PowerSpectrum spectrum = cmb_like_spectrum<double>(64);
  for (int l = 0; l <= 64; ++l) CHECK(spectrum[l] > 0.0);
  for (int l = 40; l <= 64; ++l)
    CHECK((2.0 * l + 1.0) * spectrum[l] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("regularized realizations obey the shrinkage law") {
  const PowerSpectrum spectrum = cmb_like_spectrum<double>(10);
  const DegreeWeights beta = DegreeWeights::ones(10);
  const double lambda = 0.8;
  for (int i = 0; i < 50; ++i) {
    const CoefficientSet a = sample_isotropic(spectrum, derive_seed(31u, i));
    const RegularizationResult res = regularize(a, beta, lambda);
    const DegreeNorms before = degree_norms(a);
    for (int l = 0; l <= 10; ++l)
      CHECK(res.norms[l] ==
            doctest::Approx(std::max(before[l] - lambda, 0.0)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("isotropy harness input validation") {
  const EnsembleSpec ensemble{cmb_like_spectrum<double>(4), 10, 1u};
  const DegreeWeights beta = DegreeWeights::ones(4);
  const Rotation rot{0.3, 1.0, -0.2};
  CHECK_THROWS_AS(
      isotropy_test(ensemble, beta, 0.5, rot, {SpherePoint{0.3, 0.1}}),
      std::invalid_argument);
  CHECK_THROWS_AS(isotropy_test(ensemble, beta, -0.5, rot,
                                {SpherePoint{0.3, 0.1}, SpherePoint{1.0, 2.0}}),
                  std::domain_error);
  const EnsembleSpec tiny{cmb_like_spectrum<double>(4), 1, 1u};
  CHECK_THROWS_AS(isotropy_test(tiny, beta, 0.5, rot,
                                {SpherePoint{0.3, 0.1}, SpherePoint{1.0, 2.0}}),
                  std::invalid_argument);
}

TEST_CASE("degenerate all-zero ensembles are skipped with a marker") {
  const EnsembleSpec ensemble{PowerSpectrum(4), 20, 3u};
  const IsotropyReport report =
      isotropy_test(ensemble, DegreeWeights::ones(4), 0.5, Rotation{0.1, 0.7, 0.0},
                    {SpherePoint{0.3, 0.1}, SpherePoint{1.0, 2.0}});
  CHECK(report.skipped);
  CHECK(report.checks.empty());
}

TEST_CASE("null case: the unregularized isotropic ensemble passes") {
  const EnsembleSpec ensemble{cmb_like_spectrum<double>(8), 1500, 2024u};
  const IsotropyReport report = isotropy_test(
      ensemble, DegreeWeights::ones(8), 0.0, Rotation{0.7, 1.1, -0.4},
      {SpherePoint{0.35, 0.1}, SpherePoint{1.25, 1.0}, SpherePoint{2.1, 4.4},
       SpherePoint{1.6, 3.1}});
  CHECK_FALSE(report.skipped);
  CHECK(report.passed);
  CHECK(report.test_count == 6);  // 4 marginals + 2 pair projections
}

TEST_CASE("degree-block shrinkage keeps the ensemble isotropic") {
  const int L = 8;
  const PowerSpectrum spectrum = cmb_like_spectrum<double>(L);
  // Zero roughly half the degrees: E A_l^2 = 1 + bump, so lambda = 1 removes
  // about half of each realization's blocks.
  const EnsembleSpec ensemble{spectrum, 1500, 7777u};
  const IsotropyReport report = isotropy_test(
      ensemble, DegreeWeights::ones(L), 1.0, Rotation{0.3, 1.2, 2.1},
      {SpherePoint{0.35, 0.1}, SpherePoint{1.25, 1.0}, SpherePoint{2.1, 4.4},
       SpherePoint{1.6, 3.1}});
  CHECK_FALSE(report.skipped);
  CHECK(report.passed);
}

TEST_CASE("negative control: per-coefficient thresholding breaks isotropy") {
  // Dipole-dominated spectrum; lambda sits between the pole-aligned
  // coefficient magnitude and the split x-aligned ones, where the
  // per-coefficient rule is most coordinate dependent.
  RealVector<double> c = RealVector<double>::Zero(3);
  c[1] = 1.0;
  const PowerSpectrum spectrum{std::move(c)};
  const EnsembleSpec ensemble{spectrum, 20000, 99u};
  // North pole probe against its image under Ry(pi/2).
  const IsotropyReport report = isotropy_test(
      ensemble, DegreeWeights::ones(2), 0.45, Rotation{0.0, std::numbers::pi / 2.0, 0.0},
      {SpherePoint{0.0, 0.0}, SpherePoint{std::numbers::pi / 2.0, std::numbers::pi / 2.0}},
      0.01, ShrinkageKind::per_coefficient);
  CHECK_FALSE(report.skipped);
  CHECK_FALSE(report.passed);

  // Same ensemble under the degree-block rule stays isotropic.
  const IsotropyReport block_report = isotropy_test(
      ensemble, DegreeWeights::ones(2), 0.45, Rotation{0.0, std::numbers::pi / 2.0, 0.0},
      {SpherePoint{0.0, 0.0}, SpherePoint{std::numbers::pi / 2.0, std::numbers::pi / 2.0}},
      0.01, ShrinkageKind::degree_block);
  CHECK(block_report.passed);
}

TEST_CASE("the A_l distribution is rotation invariant for the regularized ensemble") {
  const int L = 6;
  const PowerSpectrum spectrum = cmb_like_spectrum<double>(L);
  const DegreeWeights beta = DegreeWeights::ones(L);
  const QuadratureGrid grid(L);
  const Rotation rot{1.0, 0.9, -0.3};
  const double lambda = 0.9;

  std::vector<double> direct, rotated;
  for (int i = 0; i < 400; ++i) {
    const CoefficientSet a = sample_isotropic(spectrum, derive_seed(2025u, i));
    const RegularizationResult res = regularize(a, beta, lambda);
    const double norm_direct = res.norms[3];
    if (i % 2 == 0) {
      direct.push_back(norm_direct);
    } else {
      const CoefficientSet turned = rotate_field(a, rot, grid);
      rotated.push_back(regularize(turned, beta, lambda).norms[3]);
    }
  }
  const KsTestResult ks = ks_two_sample(direct, rotated);
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("two-sample KS statistic on hand data") {
  // CDFs differ by 1/2 halfway through: D = 1/2.
  const KsTestResult ks = ks_two_sample<double>({1.0, 2.0}, {1.5, 2.5});
  CHECK(ks.statistic == doctest::Approx(0.5));
  CHECK(ks.p_value > 0.5);

  const KsTestResult same = ks_two_sample<double>({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);

  CHECK_THROWS_AS(ks_two_sample<double>({}, {1.0}), std::invalid_argument);
}

TEST_CASE("KS p-values are roughly uniform under the null") {
  std::mt19937_64 rng(3131);
  std::normal_distribution<double> g(0.0, 1.0);
  int rejections = 0;
  const int runs = 200;
  for (int run = 0; run < runs; ++run) {
    std::vector<double> a(300), b(300);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = g(rng);
    if (ks_two_sample(a, b).p_value <= 0.01) ++rejections;
  }
  CHECK(rejections <= 8);  // expect about 2 of 200
}
