#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reent/povm.hpp"
#include "reent/random.hpp"
#include "reent/states.hpp"

using namespace reent;

TEST(ClassicalKl, Examples) {
  EXPECT_NEAR(classical_kl(std::vector<double>{1, 0}, {0.5, 0.5}).value, 1.0, 1e-15);
  EXPECT_EQ(classical_kl(std::vector<double>{0.3, 0.7}, {0.3, 0.7}).value, 0.0);
  EXPECT_TRUE(classical_kl(std::vector<double>{1, 0}, {0, 1}).infinite);
  // zero p_i contributes nothing even where q_i = 0
  EXPECT_TRUE(classical_kl(std::vector<double>{0, 1}, {0, 1}).is_finite());
  EXPECT_THROW(classical_kl(std::vector<double>{1}, {0.5, 0.5}), InputError);
}

TEST(ProbabilityDistribution, RejectsBadWeights) {
  EXPECT_THROW(ProbabilityDistribution({0.5, 0.6}), InputError);
  EXPECT_THROW(ProbabilityDistribution({1.1, -0.1}), InputError);
  EXPECT_THROW(ProbabilityDistribution(std::vector<double>{}), InputError);
}

TEST(QuantumRelativeEntropy, Examples) {
  const DensityOperator b = bell_state();
  EXPECT_NEAR(quantum_relative_entropy(b, b).value, 0.0, 1e-12);
  EXPECT_NEAR(quantum_relative_entropy(b, DensityOperator::maximally_mixed(Dims{2, 2})).value, 2.0, 1e-12);
  const DensityOperator p01 = DensityOperator::pure(basis_vector(4, 1), Dims{2, 2});
  EXPECT_TRUE(quantum_relative_entropy(b, p01).infinite);
  EXPECT_THROW(quantum_relative_entropy(b, DensityOperator::maximally_mixed(Dims{4})), InputError);
}

TEST(QuantumRelativeEntropy, SupportContainedIsFinite) {
  // rho supported inside a rank-deficient sigma
  const Matrix s = Matrix(Eigen::Vector4d(0.5, 0.5, 0, 0).cast<Complex>().asDiagonal());
  const DensityOperator rho = DensityOperator::pure(basis_vector(4, 0), Dims{2, 2});
  EXPECT_NEAR(relative_entropy(rho.matrix(), s).value, 1.0, 1e-12);
}

TEST(ApplyMeasurement, Examples) {
  std::vector<Matrix> comp;
  for (int i = 0; i < 4; ++i) comp.push_back(projector(basis_vector(4, i)));
  const auto p = apply_measurement(comp, bell_state());
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.0, 1e-15);
  EXPECT_NEAR(p[2], 0.0, 1e-15);
  EXPECT_NEAR(p[3], 0.5, 1e-15);
  EXPECT_NEAR(apply_measurement({Matrix::Identity(4, 4)}, bell_state())[0], 1.0, 1e-15);

  Rng rng(1);
  const DensityOperator a = random_state(Dims{2, 2}, 4, rng), b = random_state(Dims{2, 2}, 2, rng);
  const DensityOperator mix(Matrix((a.matrix() + b.matrix()) / 2.0), Dims{2, 2});
  const auto pm = apply_measurement(comp, mix), pa = apply_measurement(comp, a), pb = apply_measurement(comp, b);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(pm[i], (pa[i] + pb[i]) / 2, 1e-15);
}

TEST(MeasuredRelativeEntropy, Examples) {
  std::vector<Matrix> comp;
  for (int i = 0; i < 4; ++i) comp.push_back(projector(basis_vector(4, i)));
  const Matrix mixed = Matrix::Identity(4, 4) / 4.0;
  EXPECT_NEAR(measured_relative_entropy(comp, bell_state().matrix(), mixed).value, 1.0, 1e-14);
  EXPECT_NEAR(measured_relative_entropy({Matrix::Identity(4, 4)}, bell_state().matrix(), mixed).value, 0.0, 1e-14);

  const Matrix r = Eigen::Vector4d(0.1, 0.2, 0.3, 0.4).cast<Complex>().asDiagonal();
  const Matrix s = Eigen::Vector4d(0.4, 0.3, 0.2, 0.1).cast<Complex>().asDiagonal();
  EXPECT_NEAR(measured_relative_entropy(comp, r, s).value, relative_entropy(r, s).value, 1e-14);
}

TEST(DataProcessing, RandomChannelsOnTwoQubits) {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const Dims d{2, 2};
    const DensityOperator r = random_state(d, 1 + i % 4, rng), s = random_state(d, 4, rng);
    const Channel ch = random_channel(d, d, 1 + i % 4, rng);
    const double before = quantum_relative_entropy(r, s).value;
    const auto after = quantum_relative_entropy(ch.apply(r), ch.apply(s));
    ASSERT_TRUE(after.is_finite());
    EXPECT_GE(before - after.value, -1e-9) << "instance " << i;
  }
}

namespace {

LabeledEnsemble random_ensemble(int k, Rng& rng) {
  std::vector<double> w;
  std::vector<DensityOperator> s;
  double t = 0;
  for (int i = 0; i < k; ++i) {
    w.push_back(0.05 + rng.uniform());
    t += w.back();
    s.push_back(random_state(Dims{2}, 1 + (i + 1) % 2, rng));
  }
  for (double& x : w) x /= t;
  return {w, s};
}

}  // namespace

TEST(BlockDecomposition, SingleElementAndIdentical) {
  Rng rng(6);
  const DensityOperator a = random_state(Dims{2}, 2, rng), b = random_state(Dims{2}, 2, rng);
  const auto one = ensemble_block_relative_entropy({{1.0}, {a}}, {{1.0}, {b}});
  EXPECT_NEAR(one.block.value, quantum_relative_entropy(a, b).value, 1e-12);
  const LabeledEnsemble e = random_ensemble(3, rng);
  EXPECT_NEAR(ensemble_block_relative_entropy(e, e).block.value, 0.0, 1e-12);
}

TEST(BlockDecomposition, RandomQubitEnsembles) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    // full-rank second ensemble keeps both sides finite
    LabeledEnsemble e1 = random_ensemble(3, rng), e2 = random_ensemble(3, rng);
    for (auto& s : e2.states) s = DensityOperator(Matrix(0.9 * s.matrix() + 0.05 * Matrix::Identity(2, 2)), s.dims());
    const auto r = ensemble_block_relative_entropy(e1, e2);
    ASSERT_TRUE(r.block.is_finite());
    EXPECT_NEAR(r.block.value, r.decomposition().value, 1e-9);
  }
}

TEST(BlockDecomposition, InfiniteWhenSupportsDisagree) {
  const DensityOperator p0 = DensityOperator::pure(basis_vector(2, 0), Dims{2});
  const DensityOperator p1 = DensityOperator::pure(basis_vector(2, 1), Dims{2});
  const auto r = ensemble_block_relative_entropy({{0.5, 0.5}, {p0, p1}}, {{0.5, 0.5}, {p1, p1}});
  EXPECT_TRUE(r.block.infinite);
  EXPECT_TRUE(r.decomposition().infinite);
}
