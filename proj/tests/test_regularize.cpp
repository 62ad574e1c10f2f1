#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "sphreg/regularize.hpp"
#include "support/oracles.hpp"

using namespace sphreg;

namespace {

// Medians of the positive degree norms, used to pick mid-path lambdas.
double median_positive_norm(const CoefficientSet& a) {
  std::vector<double> values;
  const DegreeNorms norms = degree_norms(a);
  for (int l = 0; l <= a.band_limit(); ++l)
    if (norms[l] > 0.0) values.push_back(norms[l]);
  std::sort(values.begin(), values.end());
  return values[values.size() / 2];
}

}  // namespace

TEST_CASE("lambda = 0 returns the observed coefficients exactly") {
  std::mt19937_64 rng(21);
  const CoefficientSet a = oracles::random_coefficients(4, rng);
  const RegularizationResult res = regularize(a, DegreeWeights::ones(4), 0.0);
  CHECK((res.coefficients.entries() - a.entries()).norm() == 0.0);
  CHECK(res.discrepancy_value == 0.0);
  CHECK(res.active_set.size() == 5);
}

TEST_CASE("lambda above every ratio zeroes everything") {
  std::mt19937_64 rng(22);
  const CoefficientSet a = oracles::random_coefficients(4, rng);
  const DegreeNorms norms = degree_norms(a);
  const double top = norms.values().maxCoeff();
  const RegularizationResult res = regularize(a, DegreeWeights::ones(4), 2.0 * top);
  CHECK(res.coefficients.zero_count() == res.coefficients.size());
  CHECK(res.active_set.empty());
  CHECK(res.sparsity == 1.0);
  CHECK(res.hybrid_norm_value == 0.0);
  CHECK(res.discrepancy_value ==
        doctest::Approx(a.entries().squaredNorm()).epsilon(1e-14));
}

TEST_CASE("a boundary tie A = lambda beta zeroes the block") {
  CoefficientSet a(1);
  a(1, 0) = 2.0;
  const RegularizationResult res = regularize(a, DegreeWeights::ones(1), 2.0);
  CHECK(res.active_set.empty());
  CHECK(res.coefficients.zero_count() == 4);
}

TEST_CASE("errors: negative lambda and band-limit mismatch") {
  CHECK_THROWS_AS(regularize(CoefficientSet(2), DegreeWeights::ones(2), -1.0),
                  std::domain_error);
  CHECK_THROWS_AS(regularize(CoefficientSet(2), DegreeWeights::ones(3), 0.5),
                  std::invalid_argument);
}

TEST_CASE("matches the per-block golden-section minimizer") {
  std::mt19937_64 rng(23);
  const int L = 2;
  const CoefficientSet a = oracles::random_coefficients(L, rng);
  const DegreeWeights beta = DegreeWeights::ones(L);
  const double lambda = 0.5 * median_positive_norm(a);
  const RegularizationResult res = regularize(a, beta, lambda);

  // The optimum on each block is collinear with the observed block, so a 1-D
  // search over the scalar multiplier finds it independently.
  for (int l = 0; l <= L; ++l) {
    const double block_norm = degree_norms(a)[l];
    if (block_norm == 0.0) continue;
    const auto h = [&](double t) {
      return 0.5 * (1.0 - t) * (1.0 - t) * block_norm * block_norm +
             lambda * beta[l] * std::abs(t) * block_norm;
    };
    const double coarse = oracles::golden_minimize(h, -0.25, 1.25);
    const double t_star = std::max(oracles::refine_quadratic_min(h, coarse), 0.0);
    CHECK(res.shrink_factors[l] == doctest::Approx(t_star).epsilon(1e-8));
  }
}

TEST_CASE("shrinkage law A_l^r = max(A_l^o - lambda beta_l, 0)") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const int L = 1 + static_cast<int>(rng() % 8);
    const CoefficientSet a = oracles::random_coefficients(L, rng);
    const DegreeWeights beta = oracles::random_weights(L, rng);
    const double lambda = 0.8 * median_positive_norm(a);
    const RegularizationResult res = regularize(a, beta, lambda);
    const DegreeNorms before = degree_norms(a);
    for (int l = 0; l <= L; ++l) {
      const double expected = std::max(before[l] - lambda * beta[l], 0.0);
      CHECK(res.norms[l] ==
            doctest::Approx(expected).epsilon(1e-12).scale(std::max(before[l], 1.0)));
    }
  }
}

TEST_CASE("blockwise collinearity and the alpha range") {
  std::mt19937_64 rng(25);
  const CoefficientSet a = oracles::random_coefficients(5, rng);
  const DegreeWeights beta = oracles::random_weights(5, rng);
  const RegularizationResult res = regularize(a, beta, 0.6 * median_positive_norm(a));
  for (int l : res.active_set) {
    const double alpha = res.shrink_factors[l];
    CHECK(alpha > 0.0);
    CHECK(alpha <= 1.0);
    CHECK((res.coefficients.block(l) - alpha * a.block(l)).norm() == 0.0);
  }
}

TEST_CASE("summary scalars match the realized coefficients") {
  // The stored summaries are closed forms; they must agree with quantities
  // recomputed from the actual output entries.
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const int L = 2 + static_cast<int>(rng() % 6);
    const CoefficientSet a = oracles::random_coefficients(L, rng);
    const DegreeWeights beta = oracles::random_weights(L, rng);
    const double lambda = (0.2 + 0.08 * trial) * median_positive_norm(a);
    const RegularizationResult res = regularize(a, beta, lambda);

    CHECK(res.discrepancy_value ==
          doctest::Approx(oracles::loop_discrepancy(res.coefficients, a)).epsilon(1e-12));
    CHECK(res.hybrid_norm_value ==
          doctest::Approx(oracles::loop_hybrid_norm(res.coefficients, beta))
              .epsilon(1e-12)
              .scale(oracles::loop_hybrid_norm(a, beta)));
    for (int l = 0; l <= L; ++l)
      CHECK(res.norms[l] == doctest::Approx(degree_norms(res.coefficients)[l]));
  }
}

TEST_CASE("monotone in lambda: norms shrink and the active set nests") {
  std::mt19937_64 rng(27);
  const int L = 7;
  const CoefficientSet a = oracles::random_coefficients(L, rng);
  const DegreeWeights beta = oracles::random_weights(L, rng);
  const double scale = median_positive_norm(a);
  RegularizationResult prev = regularize(a, beta, 0.0);
  for (double factor : {0.2, 0.5, 0.9, 1.4, 3.0}) {
    const RegularizationResult curr = regularize(a, beta, factor * scale);
    for (int l = 0; l <= L; ++l) CHECK(curr.norms[l] <= prev.norms[l] + 1e-15);
    CHECK(std::includes(prev.active_set.begin(), prev.active_set.end(),
                        curr.active_set.begin(), curr.active_set.end()));
    CHECK(curr.sparsity >= prev.sparsity);
    prev = curr;
  }
}

TEST_CASE("block-unitary commutation: the pattern and factors are isotropic") {
  std::mt19937_64 rng(28);
  const int L = 4;
  const CoefficientSet a = oracles::random_coefficients(L, rng);
  const DegreeWeights beta = oracles::random_weights(L, rng);
  const double lambda = 0.7 * median_positive_norm(a);

  CoefficientSet mixed = a;
  std::vector<Eigen::MatrixXcd> unitaries;
  for (int l = 0; l <= L; ++l) {
    unitaries.push_back(oracles::random_unitary(2 * l + 1, rng));
    mixed.block(l) = unitaries[l] * a.block(l);
  }

  const RegularizationResult res = regularize(a, beta, lambda);
  const RegularizationResult res_mixed = regularize(mixed, beta, lambda);

  CHECK(res.active_set == res_mixed.active_set);
  for (int l = 0; l <= L; ++l) {
    CHECK(res_mixed.shrink_factors[l] ==
          doctest::Approx(res.shrink_factors[l]).epsilon(1e-12));
    CHECK(res_mixed.norms[l] ==
          doctest::Approx(res.norms[l]).epsilon(1e-12).scale(1.0));
    // regularize(U a) = U regularize(a), blockwise.
    const Eigen::VectorXcd lhs = res_mixed.coefficients.block(l);
    const Eigen::VectorXcd rhs = unitaries[l] * res.coefficients.block(l);
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("real-field symmetry is preserved exactly") {
  std::mt19937_64 rng(29);
  const CoefficientSet a = oracles::random_real_field(6, rng);
  const RegularizationResult res =
      regularize(a, DegreeWeights::ones(6), 0.5 * median_positive_norm(a));
  CHECK(res.coefficients.real_field());
  CHECK(res.coefficients.satisfies_conjugate_symmetry());
}

TEST_CASE("the regularized norm never exceeds the observed norm") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const int L = 1 + static_cast<int>(rng() % 6);
    const CoefficientSet a = oracles::random_coefficients(L, rng);
    const DegreeWeights beta = oracles::random_weights(L, rng);
    const double lambda = 0.5 * trial * 0.1 * median_positive_norm(a);
    const RegularizationResult res = regularize(a, beta, lambda);
    CHECK(res.coefficients.entries().norm() <= a.entries().norm() * (1.0 + 1e-15));
  }
}

TEST_CASE("objective basics and optimality against random probes") {
  std::mt19937_64 rng(31);
  const int L = 3;
  const CoefficientSet a = oracles::random_coefficients(L, rng);
  const DegreeWeights beta = oracles::random_weights(L, rng);
  const double lambda = 0.4 * median_positive_norm(a);

  CHECK(objective(a, a, beta, lambda) ==
        doctest::Approx(lambda * hybrid_norm(a, beta)).epsilon(1e-14));
  CHECK(objective(CoefficientSet(L), a, beta, lambda) ==
        doctest::Approx(0.5 * a.entries().squaredNorm()).epsilon(1e-14));
  CHECK_THROWS_AS(objective(CoefficientSet(2), a, beta, lambda), std::invalid_argument);

  const RegularizationResult res = regularize(a, beta, lambda);
  const double at_solution = objective(res.coefficients, a, beta, lambda);
  std::uniform_real_distribution<double> magnitude(-4.0, 0.0);
  for (int probe = 0; probe < 1000; ++probe) {
    CoefficientSet candidate = res.coefficients;
    const double scale = std::pow(10.0, magnitude(rng));
    for (Eigen::Index i = 0; i < candidate.size(); ++i)
      candidate.entries()[i] += scale * oracles::random_complex(rng);
    CHECK(objective(candidate, a, beta, lambda) > at_solution);
  }
}

TEST_CASE("lambda bound for a target error") {
  SUBCASE("zero input") {
    const ErrorBound bound =
        lambda_bound_for_error(CoefficientSet(3), DegreeWeights::ones(3), 0.5);
    CHECK(bound.ell_star == 0);
    CHECK(bound.lambda_max == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("epsilon at least twice the norm allows ell_star = 0") {
    std::mt19937_64 rng(32);
    const CoefficientSet a = oracles::random_coefficients(4, rng);
    const double epsilon = 2.0 * a.entries().norm() * 1.0001;
    const ErrorBound bound = lambda_bound_for_error(a, DegreeWeights::ones(4), epsilon);
    CHECK(bound.ell_star == 0);
    CHECK(bound.lambda_max == doctest::Approx(epsilon / 2.0).epsilon(1e-15));
  }
  SUBCASE("the guarantee holds on a decaying spectrum") {
    std::mt19937_64 rng(33);
    const int L = 24;
    CoefficientSet a(L);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const auto [l, m] = degree_order(i);
      a.entries()[i] = oracles::random_complex(rng) / std::pow(1.0 + l, 2.0);
    }
    const DegreeWeights beta = DegreeWeights::ones(L);
    const double epsilon = 0.1;
    const ErrorBound bound = lambda_bound_for_error(a, beta, epsilon);
    const RegularizationResult res = regularize(a, beta, 0.999 * bound.lambda_max);
    CHECK(std::sqrt(res.discrepancy_value) < epsilon);
  }
  SUBCASE("epsilon must be positive") {
    CHECK_THROWS_AS(lambda_bound_for_error(CoefficientSet(2), DegreeWeights::ones(2), 0.0),
                    std::domain_error);
  }
}
