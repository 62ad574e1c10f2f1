#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sphreg/coefficients.hpp"
#include "support/oracles.hpp"

using namespace sphreg;

TEST_CASE("flat index layout matches the degree-major order") {
  CHECK(flat_index(0, 0) == 0);
  CHECK(flat_index(1, -1) == 1);
  CHECK(flat_index(1, 0) == 2);
  CHECK(flat_index(1, 1) == 3);
  CHECK(flat_index(2, -2) == 4);
  CHECK(flat_index(3, 3) == 15);
}

TEST_CASE("flat index round trip over all (l, m) up to L = 20") {
  Eigen::Index expected = 0;
  for (int l = 0; l <= 20; ++l) {
    for (int m = -l; m <= l; ++m) {
      const Eigen::Index idx = flat_index(l, m);
      CHECK(idx == expected);
      const auto [lr, mr] = degree_order(idx);
      CHECK(lr == l);
      CHECK(mr == m);
      ++expected;
    }
  }
}

TEST_CASE("coefficient set holds (L+1)^2 entries") {
  for (int L : {0, 1, 3, 16}) {
    CoefficientSet a(L);
    CHECK(a.size() == (L + 1) * (L + 1));
    CHECK(a.band_limit() == L);
  }
  CHECK_THROWS_AS(CoefficientSet(-1), std::invalid_argument);
  CHECK_THROWS_AS(CoefficientSet(2, ComplexVector<double>::Zero(8)),
                  std::invalid_argument);
}

TEST_CASE("element and block access agree with the flat layout") {
  CoefficientSet a(2);
  a(2, -1) = {3.0, 4.0};
  CHECK(a.entries()[flat_index(2, -1)] == std::complex<double>(3.0, 4.0));
  CHECK(a.block(2)[1] == std::complex<double>(3.0, 4.0));
  CHECK(a.block(0).size() == 1);
  CHECK(a.block(2).size() == 5);
  CHECK_THROWS_AS(a(3, 0), std::out_of_range);
  CHECK_THROWS_AS(a(1, 2), std::out_of_range);
}

TEST_CASE("conjugate symmetry check") {
  std::mt19937_64 rng(7);
  CoefficientSet real = oracles::random_real_field(4, rng);
  CHECK(real.satisfies_conjugate_symmetry());
  CHECK(real.real_field());

  CoefficientSet generic = oracles::random_coefficients(4, rng);
  CHECK_FALSE(generic.satisfies_conjugate_symmetry(1e-12));

  // An m = 0 entry with an imaginary part breaks the symmetry.
  CoefficientSet bad(2);
  bad(1, 0) = {0.0, 1.0};
  CHECK_FALSE(bad.satisfies_conjugate_symmetry(1e-12));

  // Tolerance admits rounding-level violations.
  CoefficientSet nearly = real;
  nearly(2, 1) += std::complex<double>(1e-14, 0.0);
  CHECK_FALSE(nearly.satisfies_conjugate_symmetry());
  CHECK(nearly.satisfies_conjugate_symmetry(1e-10));
}

TEST_CASE("zero count") {
  CoefficientSet a(2);
  CHECK(a.zero_count() == 9);
  a(1, 1) = {1.0, 0.0};
  CHECK(a.zero_count() == 8);
}

TEST_CASE("degree weights validate positivity and the beta_0 = 1 normalization") {
  DegreeWeights ones = DegreeWeights::ones(3);
  CHECK(ones[0] == 1.0);
  CHECK(ones[3] == 1.0);

  DegreeWeights decay = DegreeWeights::power_law(4, 0.5);
  CHECK(decay[0] == 1.0);
  CHECK(decay[1] == 1.0);
  CHECK(decay[4] == doctest::Approx(0.5));

  RealVector<double> bad_first(2);
  bad_first << 2.0, 1.0;
  CHECK_THROWS_AS(DegreeWeights(std::move(bad_first)), std::domain_error);

  RealVector<double> negative(2);
  negative << 1.0, -0.5;
  CHECK_THROWS_AS(DegreeWeights(std::move(negative)), std::domain_error);
}

TEST_CASE("degree norms validate non-negativity") {
  RealVector<double> ok(2);
  ok << 0.0, 1.5;
  CHECK(DegreeNorms(std::move(ok)).band_limit() == 1);

  RealVector<double> bad(1);
  bad << -1.0;
  CHECK_THROWS_AS(DegreeNorms(std::move(bad)), std::invalid_argument);
}

TEST_CASE("single-precision instantiation works") {
  CoefficientSetT<float> a(2);
  a(1, 0) = {2.0f, 0.0f};
  CHECK(a.block(1).stableNorm() == doctest::Approx(2.0f));
  DegreeWeightsT<float> beta(2);
  CHECK(beta[2] == 1.0f);
}
