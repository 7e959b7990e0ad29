#include "bmap/least_squares.hpp"
#include "bmap/solvers.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <set>

using namespace bmap;

namespace {

const std::vector<Algorithm> kAll = {Algorithm::BMAP, Algorithm::BCoSaMP, Algorithm::BSP,
                                     Algorithm::OMP,  Algorithm::CoSaMP,  Algorithm::SP};

SolverConfig config(Algorithm a) {
  SolverConfig c;
  c.algorithm = a;
  return c;
}

Vector fit_of(const Matrix& A, const SolverState& s) {
  Vector out = Vector::Zero(A.rows());
  for (std::size_t i = 0; i < s.selected.indices.size(); ++i)
    out += s.coefficients[static_cast<Index>(i)] * A.col(s.selected.indices[i]);
  return out;
}

}  // namespace

TEST_CASE("least_squares") {
  const Matrix Q = test::orthonormal(6, 3, 1);
  const Vector y = Vector::LinSpaced(6, -1.0, 2.0);
  CHECK((least_squares(Q, y) - Q.transpose() * y).norm() < 1e-12);

  Matrix dup(3, 2);
  dup.col(0) << 1.0, 2.0, 2.0;
  dup.col(1) = dup.col(0);
  const Vector x = least_squares(dup, dup.col(0));
  CHECK(x[0] == doctest::Approx(0.5));
  CHECK(x[1] == doctest::Approx(0.5));

  const Matrix Q4 = test::orthonormal(6, 4, 2);
  const Vector perp = Q4.col(3);
  CHECK(least_squares(Q4.leftCols(3), perp).norm() < 1e-12);
  CHECK(least_squares(Matrix(6, 0), y).size() == 0);
}

TEST_CASE("orthonormal noise-free instance is recovered by every solver") {
  const Matrix A = test::orthonormal(6, 6, 42);
  const Vector y = A.col(0) + A.col(3);
  const RecoveryProblem prob(A, y, 2, 0.0);
  const auto model = SignalModel::constant(1.0);
  for (auto a : kAll) {
    CAPTURE(to_string(a));
    int first_iter_hits = -1;
    const auto est = solve(prob, model, config(a), [&](const SolverState& s) {
      if (s.iter == 1 && s.selected.size() == 2) first_iter_hits = s.selected.sorted() == IndexList{0, 3};
    });
    CHECK(est.sorted() == IndexList{0, 3});
    if (a != Algorithm::BMAP && a != Algorithm::OMP) CHECK(first_iter_hits == 1);
  }
}

TEST_CASE("fixed-beta and least-squares residuals agree on orthonormal columns") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix A = test::orthonormal(10, 10, seed);
    const Vector y = 1.5 * (A.col(1) + A.col(4) + A.col(8));
    const RecoveryProblem prob(A, y, 3, 0.0);
    const auto model = SignalModel::constant(1.5);
    SolverConfig fixed = config(Algorithm::BMAP), ls = fixed;
    fixed.residual_mode = ResidualMode::FixedBeta;
    ls.residual_mode = ResidualMode::LeastSquares;
    // the three true columns tie up to rounding, so compare sets and residual norms
    std::vector<double> rf, rl;
    const auto a = bmap_greedy(prob, model, fixed, [&](const SolverState& s) { rf.push_back(s.residual.norm()); });
    const auto b = bmap_greedy(prob, model, ls, [&](const SolverState& s) { rl.push_back(s.residual.norm()); });
    CHECK(a.sorted() == IndexList{1, 4, 8});
    CHECK(a.sorted() == b.sorted());
    REQUIRE(rf.size() == rl.size());
    for (std::size_t i = 0; i < rf.size(); ++i) CHECK(rf[i] == doctest::Approx(rl[i]).epsilon(1e-12));
  }
}

TEST_CASE("solver invariants on random instances") {
  const auto uni = SignalModel::one_sided(NonzeroDistribution::uniform(0.5, 1.5));
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto inst = test::gaussian_instance(20, 50, 5, 1.0, 1e-3, seed);
    const RecoveryProblem prob(inst.A, inst.y, 5, 1e-3);
    for (const SignalModel& model : {SignalModel::constant(1.0), uni}) {
      for (auto a : kAll) {
        CAPTURE(to_string(a));
        double min_norm = std::numeric_limits<double>::infinity();
        IndexList min_support;
        int calls = 0;
        const auto est = solve(prob, model, config(a), [&](const SolverState& s) {
          ++calls;
          // residual consistency
          CHECK((s.residual - (inst.y - fit_of(inst.A, s))).norm() <= 1e-10 * inst.y.norm());
          if (s.residual.norm() < min_norm) {
            min_norm = s.residual.norm();
            min_support = s.selected.sorted();
          }
        });
        CHECK(calls >= 1);
        CHECK(est.size() == 5);
        CHECK(std::set<Index>(est.indices.begin(), est.indices.end()).size() == 5);
        if (a == Algorithm::BCoSaMP || a == Algorithm::BSP || a == Algorithm::CoSaMP || a == Algorithm::SP)
          CHECK(est.sorted() == min_support);
        // determinism
        CHECK(solve(prob, model, config(a)).indices == est.indices);
      }
    }
  }
}

TEST_CASE("parallel scoring gives the same estimates") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = test::gaussian_instance(30, 120, 8, 1.0, 0.0, seed);
    const RecoveryProblem prob(inst.A, inst.y, 8, 0.0);
    for (auto a : kAll) {
      SolverConfig s = config(a), p = s;
      p.exec = Exec::Parallel;
      CHECK(solve(prob, SignalModel::constant(1.0), s).indices == solve(prob, SignalModel::constant(1.0), p).indices);
    }
  }
}

TEST_CASE("two-sided greedy recovers mixed-sign supports") {
  const auto model = SignalModel::two_sided(0.5, NonzeroDistribution::uniform(0.5, 1.5),
                                            NonzeroDistribution::uniform(-1.5, -0.5));
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed, 5);
    const Matrix A = generate_matrix(MatrixEnsemble::GaussianInvM, 40, 80, rng);
    const GroundTruth t = sample_signal(model, sample_support(80, 4, Vector{}, rng), 80, rng);
    const RecoveryProblem prob(A, measure(A, t, 0.0, rng), 4, 0.0);
    hits += exact_recovery(bmap_greedy(prob, model, config(Algorithm::BMAP)), t);
  }
  CHECK(hits >= 18);
}

TEST_CASE("column shift leaves greedy B-MAP unchanged") {
  // Adding a constant to every entry of A moves y by the same amount for any
  // K-sparse binary signal, which the column-sum term absorbs.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed, 6);
    const Matrix S = generate_matrix(MatrixEnsemble::UniformSym, 16, 40, rng);
    const Matrix U = (S.array() + 0.5).matrix();
    const GroundTruth t(sample_support(40, 4, Vector{}, rng), std::vector<double>(4, 1.0), 40);
    const RecoveryProblem ps(S, S * t.dense(), 4, 0.0), pu(U, U * t.dense(), 4, 0.0);
    CHECK(bmap_greedy(ps, SignalModel::constant(1.0), config(Algorithm::BMAP)).indices ==
          bmap_greedy(pu, SignalModel::constant(1.0), config(Algorithm::BMAP)).indices);
  }
}

TEST_CASE("defaults and names") {
  CHECK(default_selection_size(Algorithm::CoSaMP, 5) == 10);
  CHECK(default_selection_size(Algorithm::BCoSaMP, 5) == 5);
  CHECK(default_selection_size(Algorithm::SP, 5) == 5);
  CHECK(default_max_iters(Algorithm::SP, 5) == 10);
  for (auto a : kAll) CHECK(parse_algorithm(to_string(a)) == a);
  CHECK_THROWS(parse_algorithm("IHT"));
  CHECK(uses_bmap_proxy(Algorithm::BSP));
  CHECK_FALSE(uses_bmap_proxy(Algorithm::SP));
  const RecoveryProblem prob(Matrix::Identity(4, 4), Vector::Zero(4), 1, 0.1);
  CHECK_THROWS(bmap_greedy(prob, SignalModel::constant(1.0), config(Algorithm::OMP)));
}
