#include <gtest/gtest.h>

#include "reent/states.hpp"
#include "reent/verify.hpp"

using namespace reent;

namespace {

DensityOperator bell_pairs_01_23() {
  const Vector phi = bell_basis()[0];
  return DensityOperator::pure(kron(phi, phi), Dims{2, 2, 2, 2});
}

const Partition kPaired({{0, 2}, {1, 3}});

}  // namespace

TEST(Margins, Semantics) {
  EXPECT_FALSE(at_least(0, "x", 1.0, 1.0 + 1e-10, 1e-9).failed());
  EXPECT_TRUE(at_least(0, "x", 1.0, 1.0 + 1e-8, 1e-9).failed());
  EXPECT_TRUE(at_least(0, "x", std::nan(""), 0.0, 1e-9).failed());
  const InequalityMargin e = equal_within(0, "x", 1.0, 1.002, 5e-3);
  EXPECT_NEAR(e.margin, -0.002, 1e-15);
  EXPECT_FALSE(e.failed());
  EXPECT_TRUE(strictly_above(0, "x", 0.0, 0.0).failed());
  EXPECT_FALSE(strictly_above(0, "x", 1e-6, 0.0).failed());
}

TEST(ParallelMap, OrderedAndDeterministic) {
  auto f = [](int i) { return i * i; };
  const auto a = parallel_map(17, 1, f), b = parallel_map(17, 4, f);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[16], 256);
  EXPECT_THROW(parallel_map(3, 2, [](int i) -> int { if (i == 1) throw InputError("x"); return i; }), InputError);
}

TEST(ProofChain, EqualStatesGiveZeroMargins) {
  Rng rng(1);
  const SeparableSample s = random_separable(Dims{2, 2, 2, 2}, kPaired, 32, rng);
  const Povm m = random_lo_povm(Dims{2, 2}, 3, rng);
  for (const auto& x : check_proof_chain(s.state, s.witness, m)) {
    if (x.label == "vi")
      EXPECT_GE(x.margin, -2e-3);
    else if (x.label.rfind("hypothesis", 0) != 0)
      EXPECT_NEAR(x.margin, 0.0, 1e-10) << x.label;
    EXPECT_FALSE(x.failed()) << x.label;
  }
}

TEST(ProofChain, TrivialMeasurementCollapses) {
  Rng rng(2);
  const DensityOperator rho = random_state(Dims{2, 2, 2, 2}, 5, rng);
  const SeparableSample s = random_separable(Dims{2, 2, 2, 2}, kPaired, 32, rng);
  const Povm trivial = Povm::from_local(Dims{2, 2}, {{Matrix::Identity(2, 2)}, {Matrix::Identity(2, 2)}});
  const auto chain = check_proof_chain(rho, s.witness, trivial);
  for (const auto& x : chain) EXPECT_FALSE(x.failed()) << x.label << " " << x.margin;
  // with one outcome the label term vanishes and (vi) is S(rho||sigma) >= E_R(rho_Y)
  const auto vi = std::find_if(chain.begin(), chain.end(), [](const auto& x) { return x.label == "vi"; });
  ASSERT_NE(vi, chain.end());
  const DensityOperator rho_y = partial_trace(rho, {2, 3});
  EXPECT_NEAR(vi->rhs, relative_entropy_of_entanglement(rho_y, ReferenceSetSpec::sep(Dims{2, 2})).value, 1e-6);
}

TEST(ProofChain, HypothesisHoldsForProductMeasurements) {
  Rng rng(3);
  const SeparableSample s = random_separable(Dims{2, 2, 2, 2}, kPaired, 16, rng);
  const HypothesisCheck h = check_conditional_states(s.witness, random_one_way_povm(Dims{2, 2}, 0, 2, rng));
  EXPECT_LT(h.reassembly_error, 1e-12);
  EXPECT_GE(h.min_factor_eigenvalue, -1e-12);
  EXPECT_GE(h.min_ppt_eigenvalue, -1e-12);
}

TEST(ProofChain, SuiteSmall) {
  const VerificationReport r = check_proof_chain_suite(20);
  EXPECT_EQ(r.instances, 20);
  EXPECT_TRUE(r.failures().empty());
  for (const char* step : {"i", "ii", "iii", "iv", "v"}) EXPECT_GE(r.min_margin(step), -1e-9) << step;
  EXPECT_GE(r.min_margin("vi"), -2e-3);
}

TEST(Theorem1, ProductWithSeparableY) {
  Rng rng(4);
  const DensityOperator x = werner_state(0.9);
  const SeparableSample y = random_separable(Dims{2, 2}, rng);
  const DensityOperator rho = tensor_product(x, y.state);
  const double whole = relative_entropy_of_entanglement(rho, {ReferenceKind::Sep, kPaired}).value;
  const CertifiedValue mx = restricted_ree(x, ReferenceSetSpec::sep(Dims{2, 2}), {});
  const double ey = relative_entropy_of_entanglement(y.state, ReferenceSetSpec::sep(Dims{2, 2})).lower_bound;
  EXPECT_NEAR(ey, 0.0, 5e-4);
  EXPECT_NEAR(whole, relative_entropy_of_entanglement(x, ReferenceSetSpec::sep(Dims{2, 2})).value, 5e-3);
  EXPECT_GE(whole - (mx.certified_lower + ey), 0.0);
}

TEST(Theorem1, TwoBellPairs) {
  const DensityOperator rho = bell_pairs_01_23();
  const double whole = relative_entropy_of_entanglement(rho, {ReferenceKind::Sep, kPaired}).value;
  EXPECT_NEAR(whole, 2.0, 5e-3);
  const CertifiedValue mx = restricted_ree(bell_state(), ReferenceSetSpec::sep(Dims{2, 2}), {});
  const double ey = relative_entropy_of_entanglement(bell_state(), ReferenceSetSpec::sep(Dims{2, 2})).lower_bound;
  EXPECT_GE(mx.certified_lower + ey, 1.1);
  EXPECT_GE(whole - (mx.certified_lower + ey), -1e-3);
}

TEST(Theorem1, SuiteSmall) {
  VerifyConfig cfg;
  cfg.recursion_samples = 1;
  const VerificationReport r = check_theorem1(1, cfg);
  EXPECT_EQ(r.instances, 2);
  EXPECT_TRUE(r.failures().empty());
  EXPECT_GE(r.min_margin("theorem1"), -1e-3);
  EXPECT_GE(r.min_margin("recursion"), -1e-3);
}

TEST(Theorem2, SuiteSmall) {
  VerifyConfig cfg;
  cfg.include_tiles = false;
  const VerificationReport r = check_theorem2(1, cfg);
  EXPECT_TRUE(r.failures().empty());
  EXPECT_GE(r.min_margin("b-convexity"), -2e-3);
  EXPECT_GE(r.min_margin("c-flags"), -5e-3);
  EXPECT_GE(r.min_margin("d-superadditivity"), -2e-3);
  EXPECT_GT(r.min_margin("a-entangled"), 0.0);
}

TEST(Mutual, Examples) {
  Rng rng(5);
  const DensityOperator p = random_product(Dims{2, 2}, rng);
  EXPECT_NEAR(multipartite_mutual_information(p), 0.0, 1e-12);
  EXPECT_NEAR(relative_entropy_of_entanglement(p, ReferenceSetSpec::sep(Dims{2, 2})).value, 0.0, 5e-4);
  EXPECT_NEAR(multipartite_mutual_information(bell_state()), 2.0, 1e-12);
  EXPECT_NEAR(relative_entropy_of_entanglement(bell_state(), ReferenceSetSpec::sep(Dims{2, 2})).value, 1.0, 5e-3);
}

TEST(Mutual, SuiteAndThreadInvariance) {
  VerifyConfig one, four;
  four.threads = 4;
  const VerificationReport a = check_mutual_bound(50, one), b = check_mutual_bound(50, four);
  EXPECT_TRUE(a.failures().empty());
  EXPECT_GE(a.min_margin(), -1e-9);
  ASSERT_EQ(a.margins.size(), b.margins.size());
  for (std::size_t i = 0; i < a.margins.size(); ++i) EXPECT_EQ(a.margins[i].margin, b.margins[i].margin);
}

TEST(Describe, EchoesTheConfiguration) {
  VerifyConfig cfg;
  cfg.seed = 42;
  const auto d = describe(cfg, 7);
  auto find = [&](const std::string& k) {
    for (const auto& [key, v] : d)
      if (key == k) return v;
    return std::string("<missing>");
  };
  EXPECT_EQ(find("seed"), "42");
  EXPECT_EQ(find("samples"), "7");
}
