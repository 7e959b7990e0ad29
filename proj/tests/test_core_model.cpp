#include "bmap/core_model.hpp"

#include <doctest.h>

#include <cmath>

using namespace bmap;

TEST_CASE("exact_recovery compares sets") {
  const GroundTruth truth({1, 3}, {1.0, 1.0}, 6);
  CHECK(exact_recovery(SupportEstimate({1, 3}), truth));
  CHECK(exact_recovery(SupportEstimate({3, 1}), truth));
  CHECK_FALSE(exact_recovery(SupportEstimate({1, 4}), truth));
  CHECK_FALSE(exact_recovery(SupportEstimate({1}), truth));
}

TEST_CASE("kl_bernoulli values") {
  CHECK(kl_bernoulli(0.5, 0.5) == doctest::Approx(0.0));
  CHECK(kl_bernoulli(1.0, 0.5) == doctest::Approx(0.693147).epsilon(1e-6));
  CHECK(kl_bernoulli(1.0, 0.2) == doctest::Approx(-std::log(0.2)));
  CHECK(kl_bernoulli(1.0 / 3.0, 0.5) == doctest::Approx(0.056633).epsilon(1e-5));
  CHECK(kl_bernoulli(0.0, 0.5) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("kl_bernoulli is nonnegative and zero only on the diagonal") {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 1; j < 20; ++j) {
      const double a = i / 20.0, b = j / 20.0;
      const double d = kl_bernoulli(a, b);
      CHECK(d >= 0.0);
      if (i == j) CHECK(d == doctest::Approx(0.0));
      else CHECK(d > 0.0);
    }
  }
}

TEST_CASE("kl_bernoulli rejects bad arguments") {
  CHECK_THROWS_AS(kl_bernoulli(-0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(kl_bernoulli(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(kl_bernoulli(0.5, 1.0), std::domain_error);
}

TEST_CASE("binary_entropy values and symmetry") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(0.693147).epsilon(1e-6));
  CHECK(binary_entropy(1.0 / 3.0) == doctest::Approx(0.636514).epsilon(1e-6));
  for (double a = 0.01; a < 1.0; a += 0.037) CHECK(binary_entropy(a) == doctest::Approx(binary_entropy(1.0 - a)));
}

TEST_CASE("priors are clamped on ingestion") {
  Vector p(4);
  p << 0.0, 1.0, 0.3, 0.5;
  const Vector c = clamp_priors(p);
  CHECK(c[0] == kPriorClamp);
  CHECK(c[1] == 1.0 - kPriorClamp);
  CHECK(c[2] == 0.3);
  CHECK(std::isfinite(log_odds(c[0])));
  Vector bad(1);
  bad << 1.5;
  CHECK_THROWS(clamp_priors(bad));
}

TEST_CASE("RecoveryProblem validation") {
  const Matrix A = Matrix::Identity(4, 6);
  const Vector y = Vector::Zero(4);
  CHECK_NOTHROW(RecoveryProblem(A, y, 2, 0.1));
  CHECK_THROWS(RecoveryProblem(A, Vector::Zero(3), 2, 0.1));  // length mismatch
  CHECK_THROWS(RecoveryProblem(A, y, 0, 0.1));
  CHECK_THROWS(RecoveryProblem(A, y, 5, 0.1));  // N <= K + 1
  CHECK_THROWS(RecoveryProblem(A, y, 2, -1.0));
  CHECK_THROWS(RecoveryProblem(Matrix::Identity(6, 4), Vector::Zero(6), 1, 0.1));  // N < M

  Vector p = Vector::Constant(6, 0.5);
  p[2] = 0.55;
  CHECK_THROWS(RecoveryProblem(A, y, 2, 0.0, p));  // noise-free with non-uniform priors
  const RecoveryProblem ok(A, y, 2, 0.1, p);
  CHECK_FALSE(ok.uniform_priors());
  const RecoveryProblem flat(A, y, 2, 0.0);
  CHECK(flat.uniform_priors());
  CHECK(flat.priors().size() == 6);
  CHECK(flat.priors()[3] == 0.5);
}

TEST_CASE("GroundTruth and SupportEstimate invariants") {
  const GroundTruth t({4, 1}, {2.0, -1.0}, 6);
  CHECK(t.support == IndexList{1, 4});
  CHECK(t.values == std::vector<double>{-1.0, 2.0});
  const Vector x = t.dense();
  CHECK(x[1] == -1.0);
  CHECK(x[4] == 2.0);
  CHECK(x.cwiseAbs().sum() == 3.0);
  CHECK_THROWS(GroundTruth({1, 1}, {1.0, 1.0}, 6));
  CHECK_THROWS(GroundTruth({7}, {1.0}, 6));
  CHECK_THROWS(GroundTruth({2}, {0.0}, 6));
  CHECK_THROWS(SupportEstimate({2, 2}));
  const SupportEstimate e({5, 0, 2});
  CHECK(e.contains(0));
  CHECK_FALSE(e.contains(1));
  CHECK(e.sorted() == IndexList{0, 2, 5});
  CHECK(e.indices == IndexList{5, 0, 2});
}
