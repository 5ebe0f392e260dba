#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reent/entropy.hpp"
#include "reent/random.hpp"
#include "reent/refsets.hpp"
#include "reent/states.hpp"

using namespace reent;

namespace {

Matrix diag(std::initializer_list<double> v) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Kron, BasisProjectors) {
  const Matrix p0 = projector(basis_vector(2, 0)), p1 = projector(basis_vector(2, 1));
  EXPECT_EQ(max_abs(kron(p0, p1) - projector(basis_vector(4, 1))), 0.0);
}

TEST(Kron, IdentityAndDiagonal) {
  EXPECT_EQ(max_abs(kron(Matrix(Matrix::Identity(2, 2)), Matrix(Matrix::Identity(2, 2))) - Matrix::Identity(4, 4)), 0.0);
  EXPECT_EQ(max_abs(kron(diag({1, -1}), diag({1, -1})) - diag({1, -1, -1, 1})), 0.0);
}

TEST(Kron, PartyZeroIsSlowest) {
  // |1> on party 0 of [2,3] sits at offset 3
  EXPECT_EQ(max_abs(kron(basis_vector(2, 1), basis_vector(3, 0)) - basis_vector(6, 3)), 0.0);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const Matrix m = partial_trace(bell_state().matrix(), Dims{2, 2}, {0});
  EXPECT_LT(max_abs(m - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, ProductCase) {
  Rng rng(3);
  const DensityOperator a = random_state(Dims{2}, 2, rng), b = random_state(Dims{3}, 3, rng);
  const DensityOperator ab = tensor_product(a, b);
  EXPECT_LT(max_abs(partial_trace(ab, {0}).matrix() - a.matrix()), 1e-14);
  EXPECT_LT(max_abs(partial_trace(ab, {1}).matrix() - b.matrix()), 1e-14);
}

TEST(PartialTrace, UnitTraceOnRandomInputs) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const DensityOperator r = random_state(Dims{2, 3, 2}, 1 + i % 12, rng);
    const Matrix m = partial_trace(r.matrix(), r.dims(), {i % 3});
    EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, KeepListIsSorted) {
  Rng rng(5);
  const DensityOperator a = random_state(Dims{2}, 2, rng), b = random_state(Dims{3}, 3, rng);
  const Matrix kept = partial_trace(tensor_product(a, b).matrix(), Dims{2, 3}, {1, 0});
  EXPECT_LT(max_abs(kept - kron(a.matrix(), b.matrix())), 1e-14);
}

TEST(PartialTranspose, BellSpectrum) {
  const RealVector ev = eigenvalues(partial_transpose(bell_state().matrix(), Dims{2, 2}, {1}));
  EXPECT_NEAR(ev(0), -0.5, 1e-12);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(ev(k), 0.5, 1e-12);
}

TEST(PartialTranspose, ProductStaysPositiveAndInvolution) {
  Rng rng(8);
  const DensityOperator p = random_product(Dims{2, 2}, rng);
  EXPECT_GE(min_eigenvalue(partial_transpose(p.matrix(), p.dims(), {1})), -1e-12);
  const DensityOperator r = random_state(Dims{2, 3}, 4, rng);
  const Matrix twice = partial_transpose(partial_transpose(r.matrix(), r.dims(), {1}), r.dims(), {1});
  EXPECT_EQ(max_abs(twice - r.matrix()), 0.0);
}

TEST(Spectral, IdentityAndDiagonal) {
  const Spectrum s = spectral_decompose(Matrix::Identity(4, 4));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(s.values(k), 1.0, 1e-15);
  const Spectrum d = spectral_decompose(diag({3, 1}));
  EXPECT_NEAR(d.values.maxCoeff(), 3.0, 1e-15);
  EXPECT_NEAR(d.values.minCoeff(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(d.vectors.col(0).dot(basis_vector(2, 0))) + std::abs(d.vectors.col(0).dot(basis_vector(2, 1))),
              1.0, 1e-15);
}

TEST(Spectral, ReconstructsRandomHermitian) {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const Matrix g = ginibre(6, 6, rng);
    const Matrix h = g + g.adjoint();
    const Spectrum s = spectral_decompose(h);
    const Matrix back = s.vectors * s.values.cast<Complex>().asDiagonal() * s.vectors.adjoint();
    EXPECT_LE((h - back).norm(), 1e-10);
  }
}

TEST(Spectral, RejectsNonHermitian) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1;
  EXPECT_THROW(spectral_decompose(a), InputError);
}

TEST(MatrixLog, MaximallyMixed) {
  const SupportLog l = matrix_log_on_support(Matrix(Matrix::Identity(4, 4) / 4.0));
  EXPECT_LT(max_abs(l.log + 2.0 * Matrix::Identity(4, 4)), 1e-14);
  EXPECT_EQ(l.rank, 4);
}

TEST(MatrixLog, RankDeficientDiagonal) {
  const SupportLog l = matrix_log_on_support(diag({0.5, 0.5, 0, 0}));
  EXPECT_LT(max_abs(l.log - diag({-1, -1, 0, 0})), 1e-14);
  EXPECT_EQ(l.rank, 2);
}

TEST(MatrixLog, ExpInvertsOnSupport) {
  Rng rng(4);
  for (int rank : {1, 2, 3}) {
    const DensityOperator r = random_state(Dims{2, 2}, rank, rng);
    const SupportLog l = matrix_log_on_support(r);
    const Matrix back = l.support * Matrix((l.log * kLn2).exp()) * l.support;
    EXPECT_LE((back - r.matrix()).norm(), 1e-10) << "rank " << rank;
  }
}

TEST(TraceNorm, States) {
  Rng rng(2);
  EXPECT_NEAR(trace_norm(random_state(Dims{3}, 2, rng).matrix()), 1.0, 1e-12);
  EXPECT_NEAR(trace_norm(Matrix(bell_state().matrix() - Matrix::Identity(4, 4) / 4.0)), 1.5, 1e-12);
  const Matrix g = ginibre(4, 4, rng);
  EXPECT_GE(trace_norm(g), std::abs(g.trace()) - 1e-12);
}

TEST(Random, SameSeedSameState) {
  Rng a(77), b(77);
  EXPECT_EQ(max_abs(random_state(Dims{2, 2}, 3, a).matrix() - random_state(Dims{2, 2}, 3, b).matrix()), 0.0);
}

TEST(Random, GeneratorStreamIsPinned) {
  // raw mt19937_64 output for seed 1 is part of the reproducibility contract
  Rng r(1);
  EXPECT_EQ(r.next_u64(), 2469588189546311528ULL);
}

TEST(Random, ProductMarginalsMultiplyBack) {
  Rng rng(9);
  const DensityOperator p = random_product(Dims{2, 3}, rng);
  const Matrix back = kron(partial_trace(p.matrix(), p.dims(), {0}), partial_trace(p.matrix(), p.dims(), {1}));
  EXPECT_LT(max_abs(back - p.matrix()), 1e-14);
}

TEST(Random, SeparableSamplesArePpt) {
  Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    const SeparableSample s = random_separable(Dims{2, 2, 2}, rng);
    EXPECT_TRUE(is_ppt_all_cuts(s.state).ppt);
    EXPECT_LT(max_abs(s.witness.validated_assembly() - s.state.matrix()), 1e-12);
  }
}

TEST(DensityOperator, NamesTheFailingInvariant) {
  auto message = [](const Matrix& m, Dims d) {
    try {
      DensityOperator(m, d);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(Matrix(Matrix::Identity(2, 2) * 0.45), Dims{2}).find("trace invariant"), std::string::npos);
  EXPECT_NE(message(diag({1.5, -0.5}), Dims{2}).find("positivity invariant"), std::string::npos);
  Matrix h = Matrix::Identity(2, 2) / 2.0;
  h(0, 1) = 0.1;
  EXPECT_NE(message(h, Dims{2}).find("hermiticity invariant"), std::string::npos);
  EXPECT_THROW(DensityOperator(Matrix(Matrix::Identity(5, 5) / 5.0), Dims{2, 3}), InputError);
}

TEST(Oracle, MatrixLogRelativeEntropyAgrees) {
  Rng rng(12);
  const DensityOperator r = random_state(Dims{2, 2}, 4, rng), s = random_state(Dims{2, 2}, 4, rng);
  const double lib = relative_entropy(r.matrix(), s.matrix()).value;
  EXPECT_NEAR(lib, oracle::relative_entropy_full_rank(r.matrix(), s.matrix()), 1e-10);
}
