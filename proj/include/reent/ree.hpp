#ifndef REENT_REE_HPP
#define REENT_REE_HPP

#include <optional>
#include <string>
#include <vector>

#include "reent/solvers.hpp"

namespace reent {

enum class BoundDirection { Upper, Lower, Heuristic };

inline std::string to_string(BoundDirection b) {
  switch (b) {
    case BoundDirection::Upper: return "upper";
    case BoundDirection::Lower: return "lower";
    default: return "heuristic";
  }
}

struct OptimizationResult {
  double value = 0;
  /// Lower bound on the infimum implied by the final duality gap.
  double lower_bound = 0;
  DensityOperator witness;
  std::optional<SeparableDecomposition> decomposition;
  BoundDirection bound_direction = BoundDirection::Upper;
  int iterations = 0;
  double gap = 0;
  bool converged = false;
  std::vector<double> trace;
};

namespace detail {

inline SeparableDecomposition decomposition_from(const SepSolveResult& r, const Dims& dims,
                                                 const Partition& partition) {
  return {dims, partition, r.weights, r.atoms};
}

template <class Objective>
OptimizationResult minimize_over_reference_set(const Objective& grouped_obj, const Dims& dims,
                                               const ReferenceSetSpec& p, const SolverConfig& cfg,
                                               std::optional<SepStart> start = std::nullopt) {
  p.partition.validate(dims);
  if (p.partition.size() < 2) throw InputError("reference set needs at least two parties");
  const Dims gd = p.partition.grouped_dims(dims);
  OptimizationResult out;
  if (p.kind == ReferenceKind::Sep) {
    SepSolveResult r = minimize_over_sep(grouped_obj, gd, cfg, start.value_or(SepStart{}));
    out.value = r.value;
    out.lower_bound = r.lower_bound;
    out.gap = r.gap;
    out.iterations = r.iterations;
    out.converged = r.converged;
    out.trace = std::move(r.trace);
    out.decomposition = decomposition_from(r, dims, p.partition);
    out.witness = DensityOperator(hermitian_part(p.partition.from_grouped(r.sigma, dims)), dims, 1e-8);
  } else {
    PptSolveResult r = minimize_over_ppt(grouped_obj, gd, cfg);
    out.value = r.value;
    out.lower_bound = r.lower_bound;
    out.gap = r.value - r.lower_bound;
    out.iterations = r.iterations;
    out.converged = r.converged;
    out.trace = std::move(r.trace);
    out.witness = DensityOperator(hermitian_part(p.partition.from_grouped(r.sigma, dims)), dims, 1e-8);
    // On 2x2 and 2x3 the PPT and separable sets coincide, so the separable
    // solver's duality bound (and its witness, if better) apply as well.
    if (gd.parties() == 2 && gd.total() <= 6) {
      SepSolveResult s = minimize_over_sep(grouped_obj, gd, cfg, start.value_or(SepStart{}));
      out.lower_bound = std::max(out.lower_bound, s.lower_bound);
      if (s.value < out.value) {
        out.value = s.value;
        out.decomposition = decomposition_from(s, dims, p.partition);
        out.witness = DensityOperator(hermitian_part(p.partition.from_grouped(s.sigma, dims)), dims, 1e-8);
      }
      out.gap = out.value - out.lower_bound;
      out.converged = out.converged || s.converged;
    }
  }
  return out;
}

}  // namespace detail

/// E_R^P(rho) = inf_{sigma in P} S(rho||sigma), reported as the value at an
/// explicit feasible sigma (an upper bound).
inline OptimizationResult relative_entropy_of_entanglement(const DensityOperator& rho,
                                                           const ReferenceSetSpec& p,
                                                           const SolverConfig& cfg = {}) {
  p.partition.validate(rho.dims());
  const QuantumRelativeEntropyObjective obj(p.partition.to_grouped(rho.matrix(), rho.dims()));
  OptimizationResult r = detail::minimize_over_reference_set(obj, rho.dims(), p, cfg);
  r.value = std::max(0.0, r.value);
  r.lower_bound = std::max(0.0, r.lower_bound);
  r.bound_direction = BoundDirection::Upper;
  return r;
}

/// I(A_1:...:A_n) = S(rho || rho_1 x ... x rho_n) over the partition groups.
inline double multipartite_mutual_information(const DensityOperator& rho, const Partition& partition) {
  partition.validate(rho.dims());
  if (partition.size() < 2) throw InputError("mutual information needs at least two parties");
  double s = -von_neumann_entropy(rho);
  for (const auto& g : partition.groups()) s += von_neumann_entropy(partial_trace(rho.matrix(), rho.dims(), g));
  return std::max(0.0, s);
}

inline double multipartite_mutual_information(const DensityOperator& rho) {
  return multipartite_mutual_information(rho, Partition::finest(rho.dims()));
}

/// The product of marginals as a state, in natural party order.
inline DensityOperator product_of_marginals(const DensityOperator& rho, const Partition& partition) {
  std::vector<Matrix> f;
  for (const auto& g : partition.groups()) {
    auto sorted = g;
    std::sort(sorted.begin(), sorted.end());
    Matrix m = partial_trace(rho.matrix(), rho.dims(), sorted);
    if (sorted != g) {
      std::vector<int> perm;
      for (int p : g) perm.push_back(static_cast<int>(std::find(sorted.begin(), sorted.end(), p) - sorted.begin()));
      m = permute_subsystems(m, rho.dims().subset(sorted), perm);
    }
    f.push_back(m);
  }
  return DensityOperator(hermitian_part(partition.from_grouped(kron_all(f), rho.dims())), rho.dims(), 1e-9);
}

struct TraceDistanceResult {
  double upper = 0;  // ||rho - sigma||_1 at the returned sigma
  double lower = 0;  // certified via the smoothed objective's duality gap
  DensityOperator witness;
};

/// inf_{sigma in P} ||rho - sigma||_1, bracketed from both sides.
inline TraceDistanceResult trace_distance_to_set(const DensityOperator& rho, const ReferenceSetSpec& p,
                                                 SolverConfig cfg = {}, double mu = 1e-4) {
  p.partition.validate(rho.dims());
  cfg.interior_floor = 0;
  const SmoothedTraceDistanceObjective obj(p.partition.to_grouped(rho.matrix(), rho.dims()), mu);
  OptimizationResult r = detail::minimize_over_reference_set(obj, rho.dims(), p, cfg);
  TraceDistanceResult out;
  out.witness = r.witness;
  out.upper = trace_norm(Matrix(rho.matrix() - r.witness.matrix()));
  // the smoothed objective never exceeds the trace norm
  out.lower = std::max(0.0, r.lower_bound);
  return out;
}

}  // namespace reent

#endif  // REENT_REE_HPP
