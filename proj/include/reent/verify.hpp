#ifndef REENT_VERIFY_HPP
#define REENT_VERIFY_HPP

// Per-instance inequality checks and seeded suites around the additivity
// bound and the properties of the restricted measure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "reent/restricted.hpp"
#include "reent/states.hpp"

namespace reent {

enum class MarginKind { AtLeast, Equal, Positive };

inline std::string to_string(MarginKind k) {
  switch (k) {
    case MarginKind::AtLeast: return "at_least";
    case MarginKind::Equal: return "equal";
    default: return "positive";
  }
}

/// One checked inequality. AtLeast: margin = lhs - rhs; Equal: -|lhs - rhs|;
/// Positive: margin = lhs - rhs and it must be strictly above zero.
struct InequalityMargin {
  int instance = 0;
  std::string label;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  double tolerance = 0;
  MarginKind kind = MarginKind::AtLeast;

  bool failed() const {
    if (kind == MarginKind::Positive) return !(margin > 0);
    return !(margin >= -tolerance);
  }
};

inline InequalityMargin at_least(int instance, std::string label, double lhs, double rhs, double tol) {
  return {instance, std::move(label), lhs, rhs, lhs - rhs, tol, MarginKind::AtLeast};
}

inline InequalityMargin equal_within(int instance, std::string label, double lhs, double rhs, double tol) {
  const double m = lhs == rhs ? 0.0 : -std::abs(lhs - rhs);
  return {instance, std::move(label), lhs, rhs, m, tol, MarginKind::Equal};
}

inline InequalityMargin strictly_above(int instance, std::string label, double lhs, double rhs) {
  return {instance, std::move(label), lhs, rhs, lhs - rhs, 0.0, MarginKind::Positive};
}

struct VerificationReport {
  std::string suite;
  int instances = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<InequalityMargin> margins;

  double min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& x : margins) m = std::min(m, x.margin);
    return m;
  }

  /// Smallest margin among entries carrying `label`.
  double min_margin(const std::string& label) const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& x : margins)
      if (x.label == label) m = std::min(m, x.margin);
    return m;
  }

  std::vector<std::size_t> failures() const {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < margins.size(); ++i)
      if (margins[i].failed()) f.push_back(i);
    return f;
  }
};

struct VerifyConfig {
  std::uint64_t seed = 1;
  int threads = 1;
  ReferenceKind reference = ReferenceKind::Sep;
  MeasurementClassSpec measurement;
  SolverConfig solver;
  RestrictedConfig restricted = [] {
    RestrictedConfig c;
    c.gap_tolerance = 5e-4;
    return c;
  }();
  double exact_tolerance = 1e-9;
  double solver_tolerance = 2e-3;
  double difference_tolerance = 5e-3;
  double theorem1_tolerance = 1e-3;
  double separable_threshold = 1e-3;
  int recursion_samples = 10;
  bool include_tiles = true;
};

inline std::vector<std::pair<std::string, std::string>> describe(const VerifyConfig& c, int samples) {
  auto num = [](double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
  };
  std::string budgets;
  for (int b : c.measurement.budgets) budgets += (budgets.empty() ? "" : ",") + std::to_string(b);
  return {{"samples", std::to_string(samples)},
          {"seed", std::to_string(c.seed)},
          {"threads", std::to_string(c.threads)},
          {"generator", std::string(Rng::kName)},
          {"reference", to_string(c.reference)},
          {"class", to_string(c.measurement.cls)},
          {"budgets", budgets.empty() ? "4" : budgets},
          {"solver.gap_tolerance", num(c.solver.gap_tolerance)},
          {"solver.max_iterations", std::to_string(c.solver.max_iterations)},
          {"restricted.rounds", std::to_string(c.restricted.rounds)},
          {"restricted.gap_tolerance", num(c.restricted.gap_tolerance)},
          {"ascent.restarts", std::to_string(c.restricted.ascent.restarts)},
          {"ascent.iterations", std::to_string(c.restricted.ascent.iterations)},
          {"exact_tolerance", num(c.exact_tolerance)},
          {"solver_tolerance", num(c.solver_tolerance)},
          {"difference_tolerance", num(c.difference_tolerance)},
          {"theorem1_tolerance", num(c.theorem1_tolerance)},
          {"recursion_samples", std::to_string(c.recursion_samples)}};
}

/// f(0), ..., f(count - 1) on up to `threads` workers, collected in index
/// order. The first exception (by index) is rethrown after all workers stop.
template <class F>
auto parallel_map(int count, int threads, F&& f) {
  using R = std::invoke_result_t<F&, int>;
  std::vector<std::optional<R>> slots(static_cast<std::size_t>(std::max(count, 0)));
  std::vector<std::exception_ptr> errors(slots.size());
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        slots[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::clamp(threads, 1, std::max(count, 1));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

namespace detail {

inline std::vector<int> party_range(int from, int to) {
  std::vector<int> r;
  for (int j = from; j < to; ++j) r.push_back(j);
  return r;
}

/// The groups of `p` restricted to `parties`, renumbered by position there.
inline Partition restrict_partition(const Partition& p, const std::vector<int>& parties) {
  std::vector<std::vector<int>> g;
  for (const auto& group : p.groups()) {
    std::vector<int> h;
    for (int q : group) {
      const auto it = std::find(parties.begin(), parties.end(), q);
      if (it != parties.end()) h.push_back(static_cast<int>(it - parties.begin()));
    }
    if (!h.empty()) g.push_back(std::move(h));
  }
  return Partition(std::move(g));
}

/// Tr_X[(M x I_Y) tau] with X the leading parties on which M acts.
inline Matrix conditional_block(const Matrix& m, const Matrix& tau, const Dims& dims, int nx) {
  const int dy = dims.total() / static_cast<int>(m.rows());
  const Matrix big = kron(m, Matrix::Identity(dy, dy));
  return hermitian_part(partial_trace(Matrix(big * tau), dims, party_range(nx, dims.parties())));
}

inline double real_trace(const Matrix& m) { return m.trace().real(); }

}  // namespace detail

/// Theorem-1 hypothesis, checked constructively: for a separable sigma on
/// X x Y with explicit terms and a measurement on X with product effects,
/// Tr_X[(M_i x I) sigma] is rebuilt as a sum of products of positive local
/// operators on the groups' Y parts and compared with the direct partial
/// trace. PPT of the normalized conditional states is checked as well.
struct HypothesisCheck {
  double reassembly_error = 0;
  double min_factor_eigenvalue = std::numeric_limits<double>::infinity();
  double min_ppt_eigenvalue = std::numeric_limits<double>::infinity();
};

inline HypothesisCheck check_conditional_states(const SeparableDecomposition& sigma, const Povm& m_x) {
  const Dims& dims = sigma.dims;
  const int n = dims.parties(), nx = m_x.dims.parties();
  if (nx >= n || !(m_x.dims == dims.subset(detail::party_range(0, nx))))
    throw InputError("hypothesis check: measurement must act on the leading parties");
  const auto terms = m_x.product_terms();
  if (!terms) throw InputError("hypothesis check: measurement carries no product structure");
  const Matrix s = sigma.validated_assembly();
  const auto ys = detail::party_range(nx, n);
  const Dims ydims = dims.subset(ys);
  const Partition yp = detail::restrict_partition(sigma.partition, ys);
  HypothesisCheck out;
  for (std::size_t i = 0; i < m_x.size(); ++i) {
    Matrix built = Matrix::Zero(ydims.total(), ydims.total());
    for (std::size_t k = 0; k < sigma.weights.size(); ++k) {
      for (const auto& term : (*terms)[i]) {
        Complex scalar = sigma.weights[k];
        std::vector<Matrix> factors;
        for (int g = 0; g < sigma.partition.size(); ++g) {
          const auto& group = sigma.partition.groups()[g];
          std::vector<Matrix> ops;
          std::vector<int> keep;
          for (std::size_t a = 0; a < group.size(); ++a) {
            const int q = group[a];
            ops.push_back(q < nx ? term[q] : Matrix(Matrix::Identity(dims[q], dims[q])));
            if (q >= nx) keep.push_back(static_cast<int>(a));
          }
          const Vector& v = sigma.locals[k][g];
          const Matrix local = kron_all(ops) * projector(v);
          std::vector<int> gd;
          for (int q : group) gd.push_back(dims[q]);
          if (keep.empty()) {
            scalar *= local.trace();
          } else {
            const Matrix f = hermitian_part(partial_trace(local, Dims(gd), keep));
            out.min_factor_eigenvalue = std::min(out.min_factor_eigenvalue, min_eigenvalue(f));
            factors.push_back(f);
          }
        }
        built += scalar * kron_all(factors);
      }
    }
    built = yp.from_grouped(built, ydims);
    const Matrix direct = detail::conditional_block(m_x.effects[i], s, dims, nx);
    out.reassembly_error = std::max(out.reassembly_error, (built - direct).cwiseAbs().maxCoeff());
    const double tr = detail::real_trace(direct);
    if (yp.size() >= 2 && tr > 1e-12)
      out.min_ppt_eigenvalue =
          std::min(out.min_ppt_eigenvalue, is_ppt_all_cuts(Matrix(direct / tr), ydims, yp).min_eigenvalue());
  }
  return out;
}

/// Every step of the chain S(rho||sigma) >= ... >= S(M(rho_X)||M(sigma_X)) +
/// E_R^P(rho_Y) for one instance, X being the parties `m_x` acts on (the
/// leading ones) and P the separable states across `sigma.partition`. Steps
/// (i)-(v) are exact evaluations; (vi) compares with the solver's upper value.
inline std::vector<InequalityMargin> check_proof_chain(const DensityOperator& rho, const SeparableDecomposition& sigma,
                                                       const Povm& m_x, const VerifyConfig& cfg = {},
                                                       int instance = 0) {
  const Dims& dims = rho.dims();
  if (!(sigma.dims == dims)) throw InputError("proof chain: witness dims differ from the state's");
  const int n = dims.parties(), nx = m_x.dims.parties();
  const Matrix s = sigma.validated_assembly();
  const auto ys = detail::party_range(nx, n);
  const Dims ydims = dims.subset(ys);
  const double eps = cfg.exact_tolerance;
  std::vector<InequalityMargin> out;

  const HypothesisCheck h = check_conditional_states(sigma, m_x);
  out.push_back(at_least(instance, "hypothesis-reassembly", 0.0, h.reassembly_error, eps));
  out.push_back(at_least(instance, "hypothesis-positivity", h.min_factor_eigenvalue, 0.0, eps));
  if (std::isfinite(h.min_ppt_eigenvalue))
    out.push_back(at_least(instance, "hypothesis-ppt", h.min_ppt_eigenvalue, 0.0, eps));

  const std::size_t k = m_x.size();
  const int dy = ydims.total();
  std::vector<Matrix> cr, cs;
  std::vector<double> pr, ps;
  for (const auto& e : m_x.effects) {
    cr.push_back(detail::conditional_block(e, rho.matrix(), dims, nx));
    cs.push_back(detail::conditional_block(e, s, dims, nx));
    pr.push_back(std::max(0.0, detail::real_trace(cr.back())));
    ps.push_back(std::max(0.0, detail::real_trace(cs.back())));
  }
  auto normalize = [&](std::vector<double> p) {
    double t = 0;
    for (double x : p) t += x;
    for (double& x : p) x /= t;
    return p;
  };
  pr = normalize(pr);
  ps = normalize(ps);

  // (i) the measurement map M_X[tau] = sum_i |i><i| x Tr_X[(M_i x I) tau]
  Matrix br = Matrix::Zero(static_cast<Eigen::Index>(k) * dy, static_cast<Eigen::Index>(k) * dy);
  Matrix bs = br;
  for (std::size_t i = 0; i < k; ++i) {
    br.block(static_cast<Eigen::Index>(i) * dy, static_cast<Eigen::Index>(i) * dy, dy, dy) = cr[i];
    bs.block(static_cast<Eigen::Index>(i) * dy, static_cast<Eigen::Index>(i) * dy, dy, dy) = cs[i];
  }
  const double l0 = relative_entropy(rho.matrix(), s).as_double();
  const double l1 = relative_entropy(br, bs).as_double();

  // (ii) the same state written as an ensemble of conditional states
  auto conditional = [&](const Matrix& c, double p) {
    if (p < kProbabilityFloor) return DensityOperator::maximally_mixed(ydims);
    return DensityOperator(hermitian_part(c / detail::real_trace(c)), ydims, 1e-8);
  };
  std::vector<DensityOperator> rho_i, sigma_i;
  for (std::size_t i = 0; i < k; ++i) {
    rho_i.push_back(conditional(cr[i], pr[i]));
    sigma_i.push_back(conditional(cs[i], ps[i]));
  }
  const LabeledEnsemble er(pr, rho_i), es(ps, sigma_i);
  const double l2 = relative_entropy(er.block_state(), es.block_state()).as_double();

  // (iii) label term plus conditional average
  const EnsembleRelativeEntropy d = ensemble_block_relative_entropy(er, es);
  const double l3 = d.decomposition().as_double();

  // (iv) joint convexity on the conditional part
  const double label = classical_kl(pr, ps).as_double();
  Matrix mix_rho = Matrix::Zero(dy, dy), mix_sigma = Matrix::Zero(dy, dy);
  for (std::size_t i = 0; i < k; ++i) {
    mix_rho += pr[i] * rho_i[i].matrix();
    mix_sigma += pr[i] * sigma_i[i].matrix();
  }
  const double l4 = label + relative_entropy(mix_rho, mix_sigma).as_double();

  // (v) the averaged conditional states of rho are its Y marginal
  const DensityOperator rho_y = partial_trace(rho, ys);
  const double l5 = label + relative_entropy(rho_y.matrix(), mix_sigma).as_double();

  // (vi) sum_i p_i(rho) sigma_Y^i is in P, so it is no better than E_R^P
  const ReferenceSetSpec py{ReferenceKind::Sep, detail::restrict_partition(sigma.partition, ys)};
  const double er_y = py.partition.size() >= 2 ? relative_entropy_of_entanglement(rho_y, py, cfg.solver).value : 0.0;
  const double l6 = label + er_y;

  out.push_back(at_least(instance, "i", l0, l1, eps));
  out.push_back(equal_within(instance, "ii", l1, l2, eps));
  out.push_back(equal_within(instance, "iii", l2, l3, eps));
  out.push_back(at_least(instance, "iv", l3, l4, eps));
  out.push_back(equal_within(instance, "v", l4, l5, eps));
  out.push_back(at_least(instance, "vi", l5, l6, cfg.solver_tolerance));
  return out;
}

namespace detail {

inline Dims two_qubits() { return Dims{2, 2}; }
inline Dims four_qubits() { return Dims{2, 2, 2, 2}; }

/// X = parties (0, 1), Y = parties (2, 3); P splits A A' from B B'.
inline Partition paired_cut() { return Partition({{0, 2}, {1, 3}}); }

inline RestrictedConfig seeded(RestrictedConfig c, std::uint64_t seed) {
  c.ascent.seed = seed;
  c.solver.seed = seed;
  return c;
}

inline VerificationReport make_report(std::string suite, int samples, const VerifyConfig& cfg,
                                      std::vector<std::vector<InequalityMargin>> parts) {
  VerificationReport r;
  r.suite = std::move(suite);
  r.instances = static_cast<int>(parts.size());
  r.seed = cfg.seed;
  r.config = describe(cfg, samples);
  for (auto& p : parts)
    for (auto& m : p) r.margins.push_back(std::move(m));
  return r;
}

}  // namespace detail

/// Random four-qubit states against random separable references and random
/// local or one-way measurements on the first two qubits.
inline VerificationReport check_proof_chain_suite(int samples, const VerifyConfig& cfg = {}) {
  const Dims dims = detail::four_qubits();
  auto parts = parallel_map(samples, cfg.threads, [&](int i) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const DensityOperator rho = random_state(dims, 1 + rng.uniform_int(dims.total()), rng);
    const SeparableSample sigma = random_separable(dims, detail::paired_cut(), 2 * dims.total(), rng);
    const int outcomes = 2 + i % 3;
    const Povm m = i % 2 == 0 ? random_lo_povm(detail::two_qubits(), outcomes, rng)
                              : random_one_way_povm(detail::two_qubits(), (i / 2) % 2, outcomes, rng);
    VerifyConfig c = cfg;
    c.solver.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i) + 0x1000);
    return check_proof_chain(rho, sigma.witness, m, c, i);
  });
  return detail::make_report("proof-chain", samples, cfg, std::move(parts));
}

/// E_R^P(rho_XY) against the certified lower bounds on its two terms, for
/// random four-qubit states with X, Y two qubits each; then the two-copy
/// recursion on random two-qubit states.
inline VerificationReport check_theorem1(int samples, const VerifyConfig& cfg = {}) {
  const Dims dims = detail::four_qubits();
  const ReferenceSetSpec p{cfg.reference, detail::paired_cut()};
  const ReferenceSetSpec px{cfg.reference, Partition::finest(detail::two_qubits())};
  const int total = samples + cfg.recursion_samples;
  auto parts = parallel_map(total, cfg.threads, [&](int i) {
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    Rng rng(seed);
    SolverConfig sc = cfg.solver;
    sc.seed = seed;
    const RestrictedConfig rc = detail::seeded(cfg.restricted, seed);
    std::vector<InequalityMargin> out;
    if (i < samples) {
      // a random state mixed with a product of random two-qubit states keeps
      // the X and Y marginals entangled often enough to matter
      const double t = 0.5 + 0.5 * rng.uniform();
      const DensityOperator noise = random_state(dims, 4, rng);
      const DensityOperator a = random_state(detail::two_qubits(), 2, rng), b = random_state(detail::two_qubits(), 2, rng);
      const DensityOperator rho(t * tensor_product(a, b).matrix() + (1 - t) * noise.matrix(), dims, 1e-9);
      const OptimizationResult whole = relative_entropy_of_entanglement(rho, p, sc);
      const DensityOperator rho_x = partial_trace(rho, {0, 1}), rho_y = partial_trace(rho, {2, 3});
      const CertifiedValue mx = restricted_ree(rho_x, px, cfg.measurement, rc);
      const OptimizationResult ey = relative_entropy_of_entanglement(rho_y, px, sc);
      out.push_back(at_least(i, "theorem1", whole.value, mx.certified_lower + ey.lower_bound, cfg.theorem1_tolerance));
      if (whole.decomposition) {
        const HypothesisCheck h = check_conditional_states(*whole.decomposition, mx.witness_measurement);
        out.push_back(at_least(i, "hypothesis-reassembly", 0.0, h.reassembly_error, cfg.exact_tolerance));
        out.push_back(at_least(i, "hypothesis-positivity", h.min_factor_eigenvalue, 0.0, cfg.exact_tolerance));
      }
    } else {
      const DensityOperator rho = random_state(detail::two_qubits(), 2, rng);
      const OptimizationResult two = relative_entropy_of_entanglement(tensor_product(rho, rho), p, sc);
      const CertifiedValue one = restricted_ree(rho, px, cfg.measurement, rc);
      out.push_back(at_least(i, "recursion", two.value, 2 * one.certified_lower, cfg.theorem1_tolerance));
    }
    return out;
  });
  return detail::make_report("theorem1", samples, cfg, std::move(parts));
}

namespace detail {

/// Estimate only, scored at the E_R^P witness and at each candidate state.
inline CertifiedValue candidate_estimate(const DensityOperator& rho, const ReferenceSetSpec& p,
                                         const MeasurementClassSpec& spec, RestrictedConfig cfg,
                                         const RestrictedWarmStart& warm) {
  cfg.certify = false;
  cfg.rounds = 1 + static_cast<int>(warm.states.size());
  return restricted_ree(rho, p, spec, cfg, warm);
}

/// Effects M_i x f with f on a new last party.
inline Povm append_party(const Povm& m, const Matrix& f) {
  std::vector<Matrix> eff;
  for (const auto& e : m.effects) eff.push_back(kron(e, f));
  Povm out = Povm::from_effects(m.dims.concat(Dims{static_cast<int>(f.rows())}), std::move(eff),
                                m.tag == MeasurementClass::Lo || m.tag == MeasurementClass::Locc1
                                    ? MeasurementClass::Sep
                                    : m.tag);
  if (auto t = m.product_terms()) {
    for (auto& e : *t)
      for (auto& term : e) term.push_back(f);
    out.terms = std::move(*t);
  }
  return out;
}

/// All outcomes of several measurements pooled into one (their effect sums
/// must add to the identity).
inline Povm pool(const std::vector<Povm>& parts) {
  std::vector<Matrix> eff;
  ProductTerms terms;
  bool have = true;
  MeasurementClass tag = MeasurementClass::Lo;
  for (const auto& m : parts) {
    if (static_cast<int>(m.tag) > static_cast<int>(tag)) tag = m.tag;
    const auto t = m.product_terms();
    have = have && t.has_value();
    for (std::size_t i = 0; i < m.size(); ++i) {
      eff.push_back(m.effects[i]);
      if (t) terms.push_back((*t)[i]);
    }
  }
  if (tag == MeasurementClass::Lo || tag == MeasurementClass::Locc1) tag = MeasurementClass::Sep;
  Povm out = Povm::from_effects(parts.front().dims, std::move(eff), tag);
  if (have) out.terms = std::move(terms);
  return out;
}

/// The measurement outcomes of a class value usable as warm starts.
inline std::vector<Povm> witnesses_of(const CertifiedValue& v) {
  std::vector<Povm> out{v.witness_measurement};
  if (v.estimate_measurement) out.push_back(*v.estimate_measurement);
  return out;
}

/// S(M x N (rho) || M x N (sigma)) on X x Y in natural order, without
/// forming the product effects.
inline double factorized_kl(const Povm& mx, const Povm& ny, const Matrix& rho, const Matrix& sigma) {
  const Dims dims = mx.dims.concat(ny.dims);
  const int nx = mx.dims.parties();
  std::vector<double> p, q;
  for (const auto& a : mx.effects) {
    const Matrix r = conditional_block(a, rho, dims, nx), s = conditional_block(a, sigma, dims, nx);
    for (const auto& b : ny.effects) {
      p.push_back(std::max(0.0, trace_product(b, r)));
      q.push_back(std::max(0.0, trace_product(b, s)));
    }
  }
  return classical_kl(p, q).as_double();
}

struct Component {
  DensityOperator rho;
  CertifiedValue value;
};

inline std::optional<SeparableDecomposition> mixed_decomposition(const std::vector<double>& p,
                                                                 const std::vector<const CertifiedValue*>& v) {
  SeparableDecomposition out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]->witness_decomposition) return std::nullopt;
    const auto& d = *v[i]->witness_decomposition;
    if (i == 0) out = SeparableDecomposition{d.dims, d.partition, {}, {}};
    for (std::size_t k = 0; k < d.weights.size(); ++k) {
      out.weights.push_back(p[i] * d.weights[k]);
      out.locals.push_back(d.locals[k]);
    }
  }
  return out;
}

}  // namespace detail

/// Faithfulness, convexity, flags with the controlled measurement, pure
/// ancillas, local-unitary invariance and superadditivity on products, for
/// pairs of two-qubit states. The first three instances mix Phi+ with I/4.
inline VerificationReport check_theorem2(int samples, const VerifyConfig& cfg = {}) {
  const Dims d2 = detail::two_qubits();
  const ReferenceSetSpec p2{cfg.reference, Partition::finest(d2)};
  const int extra = cfg.include_tiles ? 1 : 0;
  auto parts = parallel_map(samples + extra, cfg.threads, [&](int i) {
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    Rng rng(seed);
    const RestrictedConfig rc = detail::seeded(cfg.restricted, seed);
    std::vector<InequalityMargin> out;
    if (i == samples) {
      const DensityOperator t = tiles_state();
      const CertifiedValue v = restricted_ree(t, {cfg.reference, Partition::finest(t.dims())}, cfg.measurement, rc);
      out.push_back(strictly_above(i, "a-entangled", v.certified_lower, 0.0));
      return out;
    }
    const double mixes[] = {0.25, 0.5, 0.75};
    const bool example = i < 3;
    const DensityOperator r1 = example ? bell_state() : random_state(d2, 2, rng);
    const DensityOperator r2 = example ? DensityOperator::maximally_mixed(d2) : random_state(d2, 2, rng);
    const double w = example ? mixes[i] : 0.1 + 0.8 * rng.uniform();
    const CertifiedValue v1 = restricted_ree(r1, p2, cfg.measurement, rc);
    const CertifiedValue v2 = restricted_ree(r2, p2, cfg.measurement, rc);
    const std::vector<double> pw{w, 1 - w};
    const double average = w * v1.estimate + (1 - w) * v2.estimate;
    const bool sep = cfg.reference == ReferenceKind::Sep;

    // (a) a witnessed separable state, and the entangled Phi+
    {
      const SeparableSample s = random_separable(d2, rng);
      RestrictedWarmStart ws;
      ws.states.push_back({s.state, s.witness});
      const CertifiedValue v = restricted_ree(s.state, p2, cfg.measurement, rc, ws);
      out.push_back(at_least(i, "a-separable", cfg.separable_threshold, v.estimate, 0.0));
      if (i == 0) out.push_back(strictly_above(i, "a-entangled", v1.certified_lower, 0.0));
    }

    // (b) convexity, starting from the mixture of the optimal references
    {
      const DensityOperator mix(w * r1.matrix() + (1 - w) * r2.matrix(), d2, 1e-9);
      RestrictedWarmStart ws;
      const auto dec = detail::mixed_decomposition(pw, {&v1, &v2});
      if (dec || !sep)
        ws.states.push_back({DensityOperator(hermitian_part(w * v1.witness_state.matrix() +
                                                            (1 - w) * v2.witness_state.matrix()),
                                             d2, 1e-8),
                             dec});
      for (const auto* v : {&v1, &v2})
        for (auto& m : detail::witnesses_of(*v)) ws.measurements.push_back(m);
      const CertifiedValue v = detail::candidate_estimate(mix, p2, cfg.measurement, rc, ws);
      out.push_back(at_least(i, "b-convexity", average, v.estimate, cfg.solver_tolerance));
    }

    // (c) flags on an ancilla of party 0, the controlled measurement, a pure
    // ancilla, and a local rotation
    {
      const Dims d3{2, 2, 2};
      const ReferenceSetSpec p3{cfg.reference, Partition({{0, 2}, {1}})};
      const std::vector<const CertifiedValue*> vs{&v1, &v2};
      const std::vector<const DensityOperator*> rs{&r1, &r2};
      Matrix flagged = Matrix::Zero(8, 8), flagged_ref = Matrix::Zero(8, 8);
      SeparableDecomposition fd{d3, p3.partition, {}, {}};
      bool have_dec = true;
      std::vector<Povm> controlled_w, controlled_e;
      for (int f = 0; f < 2; ++f) {
        const Matrix flag = projector(basis_vector(2, f));
        flagged += pw[f] * kron(rs[f]->matrix(), flag);
        flagged_ref += pw[f] * kron(vs[f]->witness_state.matrix(), flag);
        if (vs[f]->witness_decomposition) {
          const auto& d = *vs[f]->witness_decomposition;
          for (std::size_t k = 0; k < d.weights.size(); ++k) {
            fd.weights.push_back(pw[f] * d.weights[k]);
            fd.locals.push_back({kron(d.locals[k][0], basis_vector(2, f)), d.locals[k][1]});
          }
        } else {
          have_dec = false;
        }
        controlled_w.push_back(detail::append_party(vs[f]->witness_measurement, flag));
        controlled_e.push_back(detail::append_party(*vs[f]->estimate_measurement, flag));
      }
      RestrictedWarmStart ws;
      if (have_dec || !sep)
        ws.states.push_back({DensityOperator(hermitian_part(flagged_ref), d3, 1e-8),
                             have_dec ? std::optional<SeparableDecomposition>(fd) : std::nullopt});
      ws.measurements.push_back(regroup(detail::pool(controlled_w), p3.partition));
      ws.measurements.push_back(regroup(detail::pool(controlled_e), p3.partition));
      const CertifiedValue v = detail::candidate_estimate(DensityOperator(hermitian_part(flagged), d3, 1e-9), p3,
                                                          cfg.measurement, rc, ws);
      out.push_back(equal_within(i, "c-flags", v.estimate, average, cfg.difference_tolerance));

      // rho_1 x |psi><psi| with psi on party 0's ancilla
      const Vector psi = random_vector(2, rng);
      const Matrix pp = projector(psi);
      RestrictedWarmStart wa;
      if (v1.witness_decomposition || !sep) {
        std::optional<SeparableDecomposition> ad;
        if (v1.witness_decomposition) {
          ad = SeparableDecomposition{d3, p3.partition, v1.witness_decomposition->weights, {}};
          for (const auto& l : v1.witness_decomposition->locals) ad->locals.push_back({kron(l[0], psi), l[1]});
        }
        wa.states.push_back({DensityOperator(hermitian_part(kron(v1.witness_state.matrix(), pp)), d3, 1e-8), ad});
      }
      for (const auto& m : detail::witnesses_of(v1))
        wa.measurements.push_back(regroup(detail::append_party(m, Matrix::Identity(2, 2)), p3.partition));
      const CertifiedValue va = detail::candidate_estimate(
          DensityOperator(hermitian_part(kron(r1.matrix(), pp)), d3, 1e-9), p3, cfg.measurement, rc, wa);
      out.push_back(equal_within(i, "c-ancilla", va.estimate, v1.estimate, cfg.difference_tolerance));

      // (U_A x U_B) rho_1 (U_A x U_B)^dagger
      const std::vector<Matrix> u{random_unitary(2, rng), random_unitary(2, rng)};
      const Matrix big = kron(u[0], u[1]);
      RestrictedWarmStart wu;
      if (v1.witness_decomposition || !sep) {
        std::optional<SeparableDecomposition> ud = v1.witness_decomposition;
        if (ud)
          for (auto& l : ud->locals) l = {u[0] * l[0], u[1] * l[1]};
        wu.states.push_back(
            {DensityOperator(hermitian_part(big * v1.witness_state.matrix() * big.adjoint()), d2, 1e-8), ud});
      }
      for (const auto& m : detail::witnesses_of(v1)) wu.measurements.push_back(rotate_locally(m, u));
      const CertifiedValue vu = detail::candidate_estimate(
          DensityOperator(hermitian_part(big * r1.matrix() * big.adjoint()), d2, 1e-9), p2, cfg.measurement, rc, wu);
      out.push_back(equal_within(i, "c-unitary", vu.estimate, v1.estimate, cfg.difference_tolerance));
    }

    // (d) rho_X x rho_Y across AA':BB', scored at the E_R^P witness and at the
    // product of the optimal references; the factorized certificate
    // measurement is evaluated without forming it
    {
      const CertifiedValue& vy = example ? v1 : v2;
      const DensityOperator& ry = example ? r1 : r2;
      const Dims d4 = detail::four_qubits();
      const ReferenceSetSpec p4{cfg.reference, detail::paired_cut()};
      const Dims gd = p4.partition.grouped_dims(d4);
      const DensityOperator prod = tensor_product(r1, ry);
      const Matrix pg = p4.partition.to_grouped(prod.matrix(), d4);
      SolverConfig sc = cfg.solver;
      sc.seed = seed;
      const std::vector<Matrix> refs{relative_entropy_of_entanglement(prod, p4, sc).witness.matrix(),
                                     kron(v1.witness_state.matrix(), vy.witness_state.matrix())};
      const Povm warm = regroup(tensor_povm(*v1.estimate_measurement, *vy.estimate_measurement), p4.partition);
      Rng srng(derive_seed(seed, 7));
      double est = std::numeric_limits<double>::infinity();
      for (const auto& s : refs) {
        const SearchResult b = search_measurement(pg, p4.partition.to_grouped(s, d4), gd, cfg.measurement,
                                                  rc.ascent, rc.ascent.restarts, srng, {warm});
        const double f = detail::factorized_kl(v1.witness_measurement, vy.witness_measurement, prod.matrix(), s);
        est = std::min(est, std::max(b.value, f));
      }
      out.push_back(at_least(i, "d-superadditivity", est, v1.certified_lower + vy.certified_lower,
                             cfg.solver_tolerance));
    }
    return out;
  });
  return detail::make_report("theorem2", samples, cfg, std::move(parts));
}

/// I(A:B) against the E_R^SEP upper value on random two-qubit states.
inline VerificationReport check_mutual_bound(int samples, const VerifyConfig& cfg = {}) {
  const Dims d2 = detail::two_qubits();
  auto parts = parallel_map(samples, cfg.threads, [&](int i) {
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    Rng rng(seed);
    SolverConfig sc = cfg.solver;
    sc.seed = seed;
    const DensityOperator rho = random_state(d2, 1 + rng.uniform_int(4), rng);
    const double mi = multipartite_mutual_information(rho);
    const double er = relative_entropy_of_entanglement(rho, ReferenceSetSpec::sep(d2), sc).value;
    return std::vector<InequalityMargin>{at_least(i, "mutual", mi, er, cfg.exact_tolerance)};
  });
  return detail::make_report("mutual", samples, cfg, std::move(parts));
}

}  // namespace reent

#endif  // REENT_VERIFY_HPP
