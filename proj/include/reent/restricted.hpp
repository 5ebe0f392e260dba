#ifndef REENT_RESTRICTED_HPP
#define REENT_RESTRICTED_HPP

// inf over a reference set of the measurement-restricted relative entropy.
//
// Each round finds a best-response measurement at the current reference
// state and adds it to a bundle. The next state minimizes a smoothed maximum
// of the bundle's outcome relative entropies; the smoothing weights define a
// labeled mixture of the bundle, itself a measurement of the class, whose
// infimum over the reference set is certified by Frank-Wolfe duality.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "reent/measurement_search.hpp"
#include "reent/ree.hpp"

namespace reent {

struct RestrictedConfig {
  SolverConfig solver;
  AscentConfig ascent;
  int rounds = 30;
  int round_restarts = 2;  // random ascent starts per round after the first
  double tolerance = 1e-5;       // outer progress below this counts as stalled
  double gap_tolerance = 1e-4;   // stop once estimate - certified_lower is this small
  int certify_iterations = 150;  // per-round cap; the final certificate runs to convergence
  /// Off: only the estimate is computed, and only at the queued candidate
  /// states once the rounds run out; certified_lower is then 0.
  bool certify = true;
};

/// A reference state offered as a starting point; SEP needs the decomposition.
struct StateCandidate {
  DensityOperator state;
  std::optional<SeparableDecomposition> decomposition;
};

struct RestrictedWarmStart {
  std::vector<Povm> measurements;  // on the grouped parties of the reference set
  std::vector<StateCandidate> states;
};

/// max_k f_k + (1/beta) log sum_k exp(beta (f_k - max)) over a bundle.
class SmoothMaxObjective {
 public:
  SmoothMaxObjective(std::vector<MeasuredKlObjective> parts, double beta) : parts_(std::move(parts)), beta_(beta) {}

  std::vector<double> values(const Matrix& sigma) const {
    std::vector<double> v;
    for (const auto& p : parts_) v.push_back(p.value(sigma));
    return v;
  }

  std::vector<double> weights(const std::vector<double>& v) const {
    const double m = *std::max_element(v.begin(), v.end());
    std::vector<double> w;
    double s = 0;
    for (double x : v) {
      w.push_back(std::isfinite(m) ? std::exp(beta_ * (x - m)) : (x == m ? 1.0 : 0.0));
      s += w.back();
    }
    for (double& x : w) x /= s;
    return w;
  }

  double value(const Matrix& sigma) const {
    const auto v = values(sigma);
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) return m;
    double s = 0;
    for (double x : v) s += std::exp(beta_ * (x - m));
    return m + std::log(s) / beta_;
  }

  Matrix gradient(const Matrix& sigma) const {
    const auto w = weights(values(sigma));
    Matrix g = Matrix::Zero(sigma.rows(), sigma.cols());
    for (std::size_t k = 0; k < parts_.size(); ++k)
      if (w[k] > 1e-12) g += w[k] * parts_[k].gradient(sigma);
    return g;
  }

 private:
  std::vector<MeasuredKlObjective> parts_;
  double beta_;
};

namespace detail {

struct Iterate {
  Matrix sigma;  // grouped
  std::optional<SepStart> atoms;
};

inline std::optional<SepStart> start_of(const OptimizationResult& r) {
  if (!r.decomposition) return std::nullopt;
  return SepStart{r.decomposition->weights, r.decomposition->locals};
}

}  // namespace detail

/// inf_{sigma in P} S(M(rho)||M(sigma)) for one fixed measurement acting on
/// the groups of `p.partition`. lower_bound certifies the infimum.
inline OptimizationResult measured_distance_to_set(const DensityOperator& rho, const Povm& m,
                                                   const ReferenceSetSpec& p, const SolverConfig& cfg = {}) {
  p.partition.validate(rho.dims());
  if (!(m.dims == p.partition.grouped_dims(rho.dims())))
    throw InputError("measured_distance_to_set: measurement acts on the wrong parties");
  const MeasuredKlObjective obj(m.effects, p.partition.to_grouped(rho.matrix(), rho.dims()));
  OptimizationResult r = detail::minimize_over_reference_set(obj, rho.dims(), p, cfg);
  r.value = std::max(0.0, r.value);
  r.lower_bound = std::max(0.0, r.lower_bound);
  return r;
}

/// inf_{sigma in P} sup_{M in class} S(M(rho)||M(sigma)).
///
/// `estimate` is the smallest best-response value seen at a feasible sigma,
/// never above the unrestricted E_R^P upper value it starts from;
/// `certified_lower` is inf_sigma S(M(rho)||M(sigma)) for the returned fixed
/// measurement, bounded from below by the solver's duality gap. Measurements
/// act on the groups of `p.partition`, and are reported in those coordinates.
inline CertifiedValue restricted_ree(const DensityOperator& rho, const ReferenceSetSpec& p,
                                     const MeasurementClassSpec& spec, const RestrictedConfig& cfg = {},
                                     const RestrictedWarmStart& warm = {}) {
  p.partition.validate(rho.dims());
  const Dims& dims = rho.dims();
  const Dims gd = p.partition.grouped_dims(dims);
  spec.validate(gd);
  const Matrix rg = p.partition.to_grouped(rho.matrix(), dims);
  Rng rng(cfg.ascent.seed);
  const bool mixtures = spec.cls != MeasurementClass::Lo;

  CertifiedValue out;
  const OptimizationResult er = relative_entropy_of_entanglement(rho, p, cfg.solver);
  out.reference_upper = er.value;

  std::vector<detail::Iterate> queue;
  queue.push_back({p.partition.to_grouped(er.witness.matrix(), dims), detail::start_of(er)});
  for (const auto& c : warm.states) {
    if (!(c.state.dims() == dims)) throw InputError("restricted_ree: candidate state has wrong dims");
    detail::Iterate it{p.partition.to_grouped(c.state.matrix(), dims), std::nullopt};
    if (p.kind == ReferenceKind::Sep) {
      if (!c.decomposition) throw InputError("restricted_ree: separable candidate needs a decomposition");
      const Matrix a = c.decomposition->validated_assembly();
      if ((a - c.state.matrix()).cwiseAbs().maxCoeff() > 1e-9)
        throw InputError("restricted_ree: candidate decomposition does not reassemble its state");
      it.atoms = SepStart{c.decomposition->weights, c.decomposition->locals};
    } else if (!is_ppt_all_cuts(c.state.matrix(), dims, p.partition, 1e-9).ppt) {
      throw InputError("restricted_ree: PPT candidate state is not PPT");
    }
    queue.push_back(std::move(it));
  }

  // a product of local IC measurements certifies every entangled state
  std::vector<Povm> bundle{informationally_complete_lo(gd)};
  for (const auto& m : warm.measurements) {
    if (!(m.dims == gd)) throw InputError("restricted_ree: warm measurement acts on the wrong parties");
    if (class_included(m.tag, spec.cls)) bundle.push_back(m);
  }
  std::vector<double> certified_for(bundle.size(), -1);  // single-member certificates (LO)

  auto kl = [&](const Povm& m, const Matrix& s) { return measured_relative_entropy(m.effects, rg, s).as_double(); };
  auto to_state = [&](const Matrix& sg) {
    return DensityOperator(hermitian_part(p.partition.from_grouped(sg, dims)), dims, 1e-8);
  };
  SolverConfig round_cfg = cfg.solver;
  round_cfg.max_iterations = std::min(round_cfg.max_iterations, cfg.certify_iterations);
  auto certify = [&](const Povm& m, const std::optional<SepStart>& start, const SolverConfig& c) {
    const MeasuredKlObjective obj(m.effects, rg);
    return detail::minimize_over_reference_set(obj, dims, p, c, start);
  };
  std::optional<SepStart> certificate_start;

  struct Visit {
    detail::Iterate at;
    double value;    // max over the bundle so far
    std::size_t arg;  // bundle index attaining it
  };
  std::vector<Visit> visited;
  double estimate = std::numeric_limits<double>::infinity();
  double lower = 0;
  bool have_certificate = false;
  std::size_t next = 0;
  detail::Iterate current = queue.front();
  int quiet = 0;
  SolverConfig smooth_cfg = cfg.solver;
  smooth_cfg.max_iterations = std::min(smooth_cfg.max_iterations, 300);
  for (int t = 0; t < cfg.rounds; ++t) {
    out.rounds = t + 1;
    if (next < queue.size()) current = queue[next++];
    const int restarts = t == 0 ? cfg.ascent.restarts : cfg.round_restarts;
    std::vector<Povm> seeds;
    for (std::size_t k = bundle.size() > 3 ? bundle.size() - 3 : 0; k < bundle.size(); ++k) seeds.push_back(bundle[k]);
    const SearchResult br = search_measurement(rg, current.sigma, gd, spec, cfg.ascent, restarts, rng, seeds);
    bundle.push_back(br.povm);
    certified_for.push_back(-1);
    // every visited state is scored against the whole bundle
    Visit v{current, -1, 0};
    for (std::size_t k = 0; k < bundle.size(); ++k) {
      const double x = kl(bundle[k], current.sigma);
      if (x > v.value) v.value = x, v.arg = k;
    }
    visited.push_back(std::move(v));
    for (auto& old : visited) {
      const double x = kl(bundle.back(), old.at.sigma);
      if (x > old.value) old.value = x, old.arg = bundle.size() - 1;
    }
    const double before = estimate;
    const Visit* best = &visited.front();
    for (const auto& x : visited)
      if (x.value < best->value) best = &x;
    estimate = best->value;

    if (!cfg.certify && (next < queue.size() || t + 1 == cfg.rounds)) {
      out.estimate_trace.push_back(estimate);
      out.lower_trace.push_back(0);
      if (next >= queue.size()) break;
      continue;
    }

    // next reference state: minimize a smoothed bundle maximum
    std::vector<MeasuredKlObjective> parts;
    for (const auto& m : bundle) parts.emplace_back(m.effects, rg);
    const double spread = std::max(estimate - lower, 1e-4);
    const double beta = std::clamp(2.0 * std::log(static_cast<double>(bundle.size()) + 1.0) / spread, 20.0, 2e4);
    const SmoothMaxObjective smooth(std::move(parts), beta);
    const OptimizationResult sm = detail::minimize_over_reference_set(smooth, dims, p, smooth_cfg, best->at.atoms);
    const Matrix next_sigma = p.partition.to_grouped(sm.witness.matrix(), dims);
    const auto w = smooth.weights(smooth.values(next_sigma));

    const double lower_before = lower;
    if (!cfg.certify) {
      // nothing to certify
    } else if (mixtures) {
      std::vector<Povm> members;
      std::vector<double> lam;
      double total = 0;
      for (std::size_t k = 0; k < bundle.size(); ++k)
        if (w[k] > 1e-6) members.push_back(bundle[k]), lam.push_back(w[k]), total += w[k];
      for (double& x : lam) x /= total;
      const Povm mix = members.size() == 1 ? members[0] : labeled_mixture(members, lam);
      const OptimizationResult c = certify(mix, detail::start_of(sm), round_cfg);
      if (!have_certificate || c.lower_bound > lower) {
        lower = std::max(lower, c.lower_bound);
        out.witness_measurement = mix;
        certificate_start = detail::start_of(c);
        have_certificate = true;
      }
    } else {
      for (std::size_t k = 0; k < bundle.size(); ++k) {
        if (certified_for[k] >= 0) continue;
        const OptimizationResult c = certify(bundle[k], detail::start_of(sm), round_cfg);
        certified_for[k] = c.lower_bound;
        if (!have_certificate || c.lower_bound > lower) {
          lower = std::max(lower, c.lower_bound);
          out.witness_measurement = bundle[k];
          certificate_start = detail::start_of(c);
          have_certificate = true;
        }
      }
    }
    out.estimate_trace.push_back(estimate);
    out.lower_trace.push_back(lower);

    if (next >= queue.size()) {
      current = {next_sigma, detail::start_of(sm)};
      if (estimate - lower < cfg.gap_tolerance) break;
      const bool stalled = before - estimate < cfg.tolerance && lower - lower_before < cfg.tolerance;
      quiet = stalled ? quiet + 1 : 0;
      if (quiet >= 3) break;
    }
  }
  {
    const Visit* best = &visited.front();
    for (const auto& x : visited)
      if (x.value < best->value) best = &x;
    out.witness_state = to_state(best->at.sigma);
    if (best->at.atoms)
      out.witness_decomposition = SeparableDecomposition{dims, p.partition, best->at.atoms->weights, best->at.atoms->atoms};
    out.estimate_measurement = bundle[best->arg];
  }
  if (have_certificate) {
    const OptimizationResult last = certify(out.witness_measurement, certificate_start, cfg.solver);
    lower = std::max(lower, last.lower_bound);
  } else {
    out.witness_measurement = *out.estimate_measurement;
  }
  out.estimate = estimate;
  out.certified_lower = lower;
  return out;
}

/// Lower bound (1/(2^(n-1) D ln 2)) d^2 on the separable-measurement quantity,
/// with d a certified lower bound on the trace distance from rho to P.
inline double matthews_prefactor(int parties, int total_dim) {
  return 1.0 / (std::ldexp(1.0, parties - 1) * total_dim * kLn2);
}

struct MatthewsBound {
  double prefactor = 0;
  double distance_lower = 0;
  double distance_upper = 0;
  double value = 0;
};

inline MatthewsBound matthews_faithfulness_bound(const DensityOperator& rho, const ReferenceSetSpec& p,
                                                 const SolverConfig& cfg = {}) {
  p.partition.validate(rho.dims());
  MatthewsBound b;
  b.prefactor = matthews_prefactor(p.partition.size(), rho.dim());
  const TraceDistanceResult d = trace_distance_to_set(rho, p, cfg);
  b.distance_lower = d.lower;
  b.distance_upper = d.upper;
  b.value = b.prefactor * d.lower * d.lower;
  return b;
}

}  // namespace reent

#endif  // REENT_RESTRICTED_HPP
