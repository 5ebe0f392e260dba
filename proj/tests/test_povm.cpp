#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reent/random.hpp"
#include "reent/restricted.hpp"
#include "reent/states.hpp"

using namespace reent;

namespace {

Povm computational(const Dims& d) {
  std::vector<std::vector<Matrix>> f;
  for (int j = 0; j < d.parties(); ++j) {
    std::vector<Matrix> e;
    for (int i = 0; i < d[j]; ++i) e.push_back(projector(basis_vector(d[j], i)));
    f.push_back(e);
  }
  return Povm::from_local(d, f);
}

std::vector<Matrix> bell_projectors() {
  std::vector<Matrix> e;
  for (const auto& v : bell_basis()) e.push_back(projector(v));
  return e;
}

}  // namespace

TEST(ValidatePovm, ComputationalProductBasis) {
  const PovmReport r = validate_povm(computational(Dims{2, 2}));
  EXPECT_TRUE(r.valid());
}

TEST(ValidatePovm, CompletenessMargin) {
  std::vector<Matrix> e{Matrix::Identity(2, 2), Matrix::Identity(2, 2)};
  const PovmReport r = validate_povm(Povm::from_effects(Dims{2}, e, MeasurementClass::All));
  EXPECT_FALSE(r.complete);
  EXPECT_NEAR(r.completeness_error, 1.0, 1e-14);
}

TEST(ValidatePovm, BellProjectorsAreNotSeparable) {
  const PovmReport r = validate_povm(Povm::from_effects(Dims{2, 2}, bell_projectors(), MeasurementClass::Sep));
  EXPECT_TRUE(r.complete);
  EXPECT_TRUE(r.positive);
  EXPECT_FALSE(r.structure);
  EXPECT_TRUE(validate_povm(Povm::from_effects(Dims{2, 2}, bell_projectors(), MeasurementClass::All)).valid());
}

TEST(ValidatePovm, RandomStructuredPovms) {
  Rng rng(1);
  EXPECT_TRUE(validate_povm(random_lo_povm(Dims{2, 3}, 3, rng), 1e-9).valid());
  EXPECT_TRUE(validate_povm(random_one_way_povm(Dims{2, 2}, 1, 3, rng), 1e-9).valid());
  const Povm lo = random_lo_povm(Dims{2, 2}, 2, rng);
  EXPECT_TRUE(validate_povm(retag(lo, MeasurementClass::Sep), 1e-9).valid());
}

TEST(ValidatePovm, LabeledMixtureStaysInClass) {
  Rng rng(2);
  const Povm a = random_one_way_povm(Dims{2, 2}, 0, 2, rng), b = random_one_way_povm(Dims{2, 2}, 1, 3, rng);
  const Povm m = labeled_mixture({retag(a, MeasurementClass::Sep), retag(b, MeasurementClass::Sep)}, {0.3, 0.7});
  EXPECT_EQ(m.size(), a.size() + b.size());
  EXPECT_TRUE(validate_povm(m, 1e-9).valid());
}

TEST(InformationallyComplete, PauliOutcomeCounts) {
  const Povm two = informationally_complete_lo(Dims{2, 2});
  EXPECT_EQ(two.size(), 36u);
  EXPECT_EQ(outcome_map_rank(two), 16);
  const Povm one = informationally_complete_lo(Dims{2});
  EXPECT_EQ(one.size(), 6u);
  EXPECT_EQ(outcome_map_rank(one), 4);
  for (const auto& e : one.effects) EXPECT_NEAR(e.trace().real(), 1.0 / 3, 1e-15);
  EXPECT_TRUE(validate_povm(two).valid());
}

TEST(InformationallyComplete, SeparatesDistinctStates) {
  Rng rng(3);
  const Povm m = informationally_complete_lo(Dims{2, 3});
  EXPECT_EQ(outcome_map_rank(m), 36);
  for (int i = 0; i < 10; ++i) {
    const auto a = outcome_weights(m.effects, random_state(Dims{2, 3}, 2, rng).matrix());
    const auto b = outcome_weights(m.effects, random_state(Dims{2, 3}, 2, rng).matrix());
    double diff = 0;
    for (std::size_t k = 0; k < a.size(); ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
    EXPECT_GT(diff, 0.0);
  }
}

TEST(RestrictedRelativeEntropy, CommonProductEigenbasis) {
  Rng rng(4);
  const Matrix r = Eigen::Vector4d(0.1, 0.2, 0.3, 0.4).cast<Complex>().asDiagonal();
  const Matrix s = Eigen::Vector4d(0.25, 0.35, 0.3, 0.1).cast<Complex>().asDiagonal();
  const DensityOperator rho(r, Dims{2, 2}), sigma(s, Dims{2, 2});
  const CertifiedValue v = restricted_relative_entropy(rho, sigma, {MeasurementClass::Lo, {}});
  EXPECT_NEAR(v.estimate, relative_entropy(r, s).value, 1e-6);
  EXPECT_TRUE(validate_povm(v.witness_measurement, 1e-9).valid());
}

TEST(RestrictedRelativeEntropy, BellAgainstMaximallyMixed) {
  const CertifiedValue v = restricted_relative_entropy(bell_state(), DensityOperator::maximally_mixed(Dims{2, 2}),
                                                       {MeasurementClass::Lo, {}});
  EXPECT_GE(v.estimate, 1.0 - 1e-9);
}

TEST(RestrictedRelativeEntropy, AllClassOnOnePartyIsUnrestricted) {
  Rng rng(5);
  for (int i = 0; i < 3; ++i) {
    const DensityOperator r = random_state(Dims{3}, 3, rng), s = random_state(Dims{3}, 3, rng);
    const CertifiedValue v = restricted_relative_entropy(r, s, {MeasurementClass::All, {}});
    // optimal measurement need not be projective in general; ALL attains S only when [r, s] = 0
    EXPECT_LE(v.estimate, quantum_relative_entropy(r, s).value + 1e-9);
  }
  // commuting pair: the common eigenbasis is optimal
  const Matrix u = random_unitary(3, rng);
  const Matrix r = u * Eigen::Vector3d(0.2, 0.3, 0.5).cast<Complex>().asDiagonal() * u.adjoint();
  const Matrix s = u * Eigen::Vector3d(0.6, 0.1, 0.3).cast<Complex>().asDiagonal() * u.adjoint();
  const DensityOperator rr(r, Dims{3}), ss(s, Dims{3});
  EXPECT_NEAR(restricted_relative_entropy(rr, ss, {MeasurementClass::All, {}}).estimate,
              quantum_relative_entropy(rr, ss).value, 1e-4);
}

TEST(MeasuredDistance, PauliCertificatesMatchConvexOracle) {
  const Povm m = informationally_complete_lo(Dims{2, 2});
  for (auto kind : {ReferenceKind::Sep, ReferenceKind::Ppt}) {
    const ReferenceSetSpec p{kind, Partition::finest(Dims{2, 2})};
    const OptimizationResult b = measured_distance_to_set(bell_state(), m, p);
    EXPECT_NEAR(b.value, oracle::kPauliCertificateBell, 1e-5);
    EXPECT_LE(b.lower_bound, oracle::kPauliCertificateBell + 1e-8);
    EXPECT_GE(b.lower_bound, oracle::kPauliCertificateBell - 1e-4);
    const OptimizationResult w = measured_distance_to_set(werner_state(0.75), m, p);
    EXPECT_NEAR(w.value, oracle::kPauliCertificateWerner075, 1e-5);
  }
}

TEST(MeasuredDistance, ComputationalBasisCannotCertifyBell) {
  // (|00><00| + |11><11|)/2 is separable and reproduces Phi+'s statistics
  const OptimizationResult r =
      measured_distance_to_set(bell_state(), computational(Dims{2, 2}), ReferenceSetSpec::sep(Dims{2, 2}));
  EXPECT_NEAR(r.value, 0.0, 1e-4);
}

TEST(RestrictedRee, SeparableWithWitnessIsZero) {
  Rng rng(6);
  for (int i = 0; i < 3; ++i) {
    const SeparableSample s = random_separable(Dims{2, 2}, rng);
    const CertifiedValue v = restricted_ree(s.state, ReferenceSetSpec::sep(Dims{2, 2}), {MeasurementClass::Lo, {}});
    EXPECT_LE(v.estimate, 1e-3);
    EXPECT_LE(v.certified_lower, 1e-3);
  }
}

TEST(RestrictedRee, BellSepClassCertified) {
  const CertifiedValue v = restricted_ree(bell_state(), ReferenceSetSpec::sep(Dims{2, 2}), {MeasurementClass::Sep, {}});
  EXPECT_GE(v.certified_lower, 0.1);
  // the single Pauli product already certifies this much
  EXPECT_GE(v.certified_lower, oracle::kPauliCertificateBell - 1e-4);
  EXPECT_LE(v.certified_lower, v.estimate + 1e-9);
  EXPECT_LE(v.estimate, v.reference_upper + 1e-6);
  EXPECT_TRUE(validate_povm(v.witness_measurement, 1e-8).valid());
  ASSERT_TRUE(v.witness_decomposition.has_value());
}

TEST(RestrictedRee, OrderingOnRandomStates) {
  Rng rng(7);
  RestrictedConfig cfg;
  cfg.gap_tolerance = 5e-4;
  for (int i = 0; i < 8; ++i) {
    const DensityOperator r = random_state(Dims{2, 2}, 1 + i % 3, rng);
    const CertifiedValue v = restricted_ree(r, ReferenceSetSpec::sep(r.dims()), {MeasurementClass::Sep, {}}, cfg);
    EXPECT_LE(v.certified_lower, v.estimate + 1e-9) << i;
    EXPECT_LE(v.estimate, v.reference_upper + 1e-6) << i;
  }
}

TEST(RestrictedRee, ClassHierarchyIsNondecreasing) {
  const DensityOperator w = werner_state(0.9);
  RestrictedConfig cfg;
  cfg.gap_tolerance = 5e-4;
  double previous = 0;
  for (auto c : {MeasurementClass::Lo, MeasurementClass::Locc1, MeasurementClass::Sep}) {
    const CertifiedValue v = restricted_ree(w, ReferenceSetSpec::sep(w.dims()), {c, {}}, cfg);
    EXPECT_GE(v.estimate, previous - 2e-3) << to_string(c);
    previous = std::max(previous, v.estimate);
  }
}

TEST(Pinsker, Examples) {
  EXPECT_NEAR(pinsker_lower_bound({1, 0}, {0.5, 0.5}), 1 / (2 * std::log(2.0)), 1e-15);
  EXPECT_LE(pinsker_lower_bound({1, 0}, {0.5, 0.5}), classical_kl(std::vector<double>{1, 0}, {0.5, 0.5}).value);
  const DensityOperator b = bell_state();
  EXPECT_EQ(pinsker_lower_bound(b, b, informationally_complete_lo(Dims{2, 2})), 0.0);
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> p(4), q(4);
    double sp = 0, sq = 0;
    for (int k = 0; k < 4; ++k) sp += p[k] = rng.uniform(), sq += q[k] = rng.uniform() + 1e-3;
    for (int k = 0; k < 4; ++k) p[k] /= sp, q[k] /= sq;
    EXPECT_LE(pinsker_lower_bound(p, q), classical_kl(p, q).value + 1e-12);
  }
}

TEST(Matthews, Prefactor) {
  EXPECT_NEAR(matthews_prefactor(2, 4), 0.18033688011112042, 1e-15);
  EXPECT_NEAR(matthews_prefactor(2, 4), 1 / (8 * std::log(2.0)), 1e-15);
  EXPECT_NEAR(matthews_prefactor(3, 8), 1 / (32 * std::log(2.0)), 1e-15);
}

TEST(Matthews, SeparableAndBell) {
  Rng rng(9);
  const SeparableSample s = random_separable(Dims{2, 2}, rng);
  EXPECT_LE(matthews_faithfulness_bound(s.state, ReferenceSetSpec::sep(Dims{2, 2})).value, 1e-6);
  const MatthewsBound b = matthews_faithfulness_bound(bell_state(), ReferenceSetSpec::sep(Dims{2, 2}));
  EXPECT_GT(b.value, 0.0);
  EXPECT_NEAR(b.value, 0.18033688011112042 * b.distance_lower * b.distance_lower, 1e-15);
}
