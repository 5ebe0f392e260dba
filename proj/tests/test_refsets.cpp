#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reent/random.hpp"
#include "reent/ree.hpp"
#include "reent/states.hpp"

using namespace reent;

TEST(PptTest, Examples) {
  const PptReport b = is_ppt_all_cuts(bell_state());
  EXPECT_FALSE(b.ppt);
  EXPECT_NEAR(b.min_eigenvalue(), -0.5, 1e-12);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(is_ppt_all_cuts(random_separable(Dims{2, 3}, rng).state).ppt);
}

TEST(PptTest, TilesIsPptOnEveryCut) {
  const DensityOperator t = tiles_state();
  ASSERT_EQ(t.dims(), (Dims{3, 3}));
  for (int party : {0, 1}) EXPECT_GE(min_eigenvalue(partial_transpose(t.matrix(), t.dims(), {party})), -1e-12);
  EXPECT_TRUE(is_ppt_all_cuts(t).ppt);
  // rank 4: the complement of five product vectors
  int rank = 0;
  for (double x : eigenvalues(t.matrix())) rank += x > 1e-9;
  EXPECT_EQ(rank, 4);
}

TEST(PptTest, ThreePartyCutsOfGhz) {
  const PptReport r = is_ppt_all_cuts(ghz_state(3));
  EXPECT_EQ(r.cuts.size(), 3u);
  EXPECT_FALSE(r.ppt);
}

TEST(SepLmo, Examples) {
  Rng rng(3);
  const Dims d{2, 2};
  EXPECT_NEAR(sep_lmo(Matrix::Identity(4, 4), d, {}, rng).value, 1.0, 1e-12);
  const LmoResult b = sep_lmo(bell_state().matrix(), d, {}, rng);
  EXPECT_NEAR(b.value, 0.0, 1e-10);
  const Matrix g = Eigen::Vector4d(0.7, 0.2, 0.9, 0.4).cast<Complex>().asDiagonal();
  EXPECT_NEAR(sep_lmo(g, d, {}, rng).value, 0.2, 1e-10);
}

TEST(SepLmo, MaxOverlapWithBellIsHalf) {
  Rng rng(4);
  const LmoResult r = sep_lmo(Matrix(-bell_state().matrix()), Dims{2, 2}, {}, rng);
  EXPECT_NEAR(r.value, -0.5, 1e-10);
  EXPECT_NEAR(r.joint.norm(), 1.0, 1e-12);
}

TEST(ProjectPpt, FixedPointAndIdempotence) {
  Rng rng(5);
  const Dims d{2, 2};
  const SeparableSample s = random_separable(d, rng);
  EXPECT_LE((project_ppt(s.state.matrix(), d) - s.state.matrix()).norm(), 1e-8);
  const Matrix g = ginibre(4, 4, rng);
  const Matrix once = project_ppt(Matrix(g + g.adjoint()), d);
  EXPECT_LE((project_ppt(once, d) - once).norm(), 1e-8);
  EXPECT_NEAR(once.trace().real(), 1.0, 1e-12);
}

TEST(ProjectPpt, BellMatchesBellDiagonalGrid) {
  const auto q = oracle::nearest_ppt_bell_diagonal({1, 0, 0, 0});
  EXPECT_NEAR(q[0], 0.5, 1e-12);
  const DensityOperator expect = bell_diagonal(q);
  const Matrix got = project_ppt(bell_state().matrix(), Dims{2, 2});
  EXPECT_LE((got - expect.matrix()).norm(), 1e-3);
}

TEST(Ree, SeparableWithWitnessIsZero) {
  Rng rng(6);
  for (int i = 0; i < 5; ++i) {
    const SeparableSample s = random_separable(Dims{2, 2}, rng);
    EXPECT_LE(relative_entropy_of_entanglement(s.state, ReferenceSetSpec::sep(Dims{2, 2})).value, 5e-4);
  }
}

TEST(Ree, BellCalibration) {
  const DensityOperator b = bell_state();
  // sigma = (|00><00| + |11><11|)/2 attains exactly 1
  const Matrix s = Eigen::Vector4d(0.5, 0, 0, 0.5).cast<Complex>().asDiagonal();
  EXPECT_NEAR(relative_entropy(b.matrix(), s).value, 1.0, 1e-14);
  for (const auto& p : {ReferenceSetSpec::sep(b.dims()), ReferenceSetSpec::ppt(b.dims())}) {
    const OptimizationResult r = relative_entropy_of_entanglement(b, p);
    EXPECT_NEAR(r.value, 1.0, 5e-3) << to_string(p.kind);
    EXPECT_LE(r.lower_bound, r.value);
    EXPECT_EQ(r.bound_direction, BoundDirection::Upper);
  }
}

TEST(Ree, WernerMatchesGridOracle) {
  const double grid = oracle::bell_diagonal_ree({0.75, 1.0 / 12, 1.0 / 12, 1.0 / 12});
  EXPECT_NEAR(grid, 1 - oracle::h2(0.75), 1e-12);
  EXPECT_NEAR(grid, 0.18872187554086717, 1e-12);
  const DensityOperator w = werner_state(0.75);
  for (const auto& p : {ReferenceSetSpec::sep(w.dims()), ReferenceSetSpec::ppt(w.dims())})
    EXPECT_NEAR(relative_entropy_of_entanglement(w, p).value, grid, 5e-3) << to_string(p.kind);
}

TEST(Ree, BellDiagonalGridOracleOnAsymmetricWeights) {
  const std::array<double, 4> p{0.6, 0.25, 0.1, 0.05};
  const double grid = oracle::bell_diagonal_ree(p, 600);
  EXPECT_NEAR(relative_entropy_of_entanglement(bell_diagonal(p), ReferenceSetSpec::sep(Dims{2, 2})).value, grid, 2e-3);
}

TEST(Ree, SepAndPptAgreeOnTwoQubits) {
  Rng rng(7);
  for (int i = 0; i < 5; ++i) {
    const DensityOperator r = random_state(Dims{2, 2}, 1 + i % 4, rng);
    const double s = relative_entropy_of_entanglement(r, ReferenceSetSpec::sep(r.dims())).value;
    const double p = relative_entropy_of_entanglement(r, ReferenceSetSpec::ppt(r.dims())).value;
    EXPECT_NEAR(s, p, 5e-3);
  }
}

TEST(Ree, GroupedPartitionOfTwoBellPairs) {
  // Phi+_{02} (x) Phi+_{13} across {0,1}:{2,3} is two ebits
  const Vector phi = bell_basis()[0];
  const Vector v = permute_subsystems(kron(phi, phi), Dims{2, 2, 2, 2}, {0, 2, 1, 3});
  const DensityOperator rho = DensityOperator::pure(v, Dims{2, 2, 2, 2});
  const ReferenceSetSpec p{ReferenceKind::Sep, Partition({{0, 1}, {2, 3}})};
  EXPECT_NEAR(relative_entropy_of_entanglement(rho, p).value, 2.0, 5e-3);
}

TEST(Ree, RejectsSinglePartyPartition) {
  EXPECT_THROW(relative_entropy_of_entanglement(bell_state(), {ReferenceKind::Sep, Partition({{0, 1}})}), InputError);
}

TEST(MutualInformation, Examples) {
  Rng rng(8);
  EXPECT_NEAR(multipartite_mutual_information(random_product(Dims{2, 3}, rng)), 0.0, 1e-12);
  EXPECT_NEAR(multipartite_mutual_information(bell_state()), 2.0, 1e-12);
  // GHZ is pure with maximally mixed single-qubit marginals: S(rho || I/8) = 3
  EXPECT_NEAR(multipartite_mutual_information(ghz_state(3)), 3.0, 1e-12);
}

TEST(TraceDistance, BracketsTheBellValue) {
  // nearest separable state to Phi+ in trace norm is at distance 1
  const TraceDistanceResult d = trace_distance_to_set(bell_state(), ReferenceSetSpec::sep(Dims{2, 2}));
  EXPECT_LE(d.lower, d.upper + 1e-12);
  EXPECT_NEAR(d.upper, 1.0, 2e-3);
  EXPECT_NEAR(d.lower, 1.0, 2e-3);
}
