#ifndef REENT_ENTROPY_HPP
#define REENT_ENTROPY_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "reent/qops.hpp"

namespace reent {

/// Probabilities below this are treated as exactly zero in KL sums.
inline constexpr double kProbabilityFloor = 1e-14;

/// Nonnegative real or +infinity.
struct ExtendedReal {
  double value = 0.0;
  bool infinite = false;

  static ExtendedReal finite(double v) { return {v, false}; }
  static ExtendedReal infinity() { return {std::numeric_limits<double>::infinity(), true}; }

  bool is_finite() const { return !infinite; }
  /// Value as a double, +inf when infinite.
  double as_double() const { return infinite ? std::numeric_limits<double>::infinity() : value; }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.infinite || b.infinite) return infinity();
    return finite(a.value + b.value);
  }
};

class ProbabilityDistribution {
 public:
  ProbabilityDistribution() = default;

  explicit ProbabilityDistribution(std::vector<double> w, double tol = 1e-10) : w_(std::move(w)) {
    if (w_.empty()) throw InputError("probability distribution must be nonempty");
    double total = 0;
    for (double& x : w_) {
      if (!std::isfinite(x)) throw InputError("probability weight is not finite");
      if (x < -1e-12) throw InputError("probability weight " + std::to_string(x) + " is negative");
      if (x < 0) x = 0;
      total += x;
    }
    if (std::abs(total - 1.0) > tol)
      throw InputError("probability weights sum to " + std::to_string(total) + ", not 1");
  }

  const std::vector<double>& weights() const { return w_; }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }

 private:
  std::vector<double> w_;
};

/// Relative entropy sum_i p_i log2(p_i / q_i) of raw weight vectors.
/// Terms with p_i below the floor vanish; the value is infinite only when
/// such a p_i meets q_i <= 0.
inline ExtendedReal classical_kl(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw InputError("classical_kl: distributions differ in length");
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < kProbabilityFloor) continue;
    if (q[i] <= 0) return ExtendedReal::infinity();
    s += p[i] * std::log2(p[i] / q[i]);
  }
  return ExtendedReal::finite(std::max(0.0, s));
}

inline ExtendedReal classical_kl(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
  return classical_kl(p.weights(), q.weights());
}

/// Quantum relative entropy S(rho||sigma) in bits for positive matrices.
///
/// Infinite iff the part of rho outside the support of sigma has trace norm
/// above `cutoff`.
inline ExtendedReal relative_entropy(const Matrix& rho, const Matrix& sigma,
                                     double cutoff = kSupportCutoff) {
  if (rho.rows() != sigma.rows()) throw InputError("relative_entropy: dimension mismatch");
  const Spectrum ss = spectral_decompose(sigma);
  const Matrix rho_in_sigma = ss.vectors.adjoint() * rho * ss.vectors;
  double outside = 0, cross = 0;
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index k = 0; k < ss.values.size(); ++k) {
    if (ss.values(k) > cutoff)
      cross += rho_in_sigma(k, k).real() * std::log2(ss.values(k));
    else
      kernel.push_back(k);
  }
  if (!kernel.empty()) {
    Matrix block(kernel.size(), kernel.size());
    for (std::size_t a = 0; a < kernel.size(); ++a)
      for (std::size_t b = 0; b < kernel.size(); ++b)
        block(a, b) = rho_in_sigma(kernel[a], kernel[b]);
    outside = trace_norm(hermitian_part(block));
    if (outside > cutoff) return ExtendedReal::infinity();
  }
  const double s = -von_neumann_entropy(rho) - cross;
  return ExtendedReal::finite(std::max(0.0, s));
}

inline ExtendedReal quantum_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (!(rho.dims() == sigma.dims()))
    throw InputError("quantum_relative_entropy: states have different dims");
  return relative_entropy(rho.matrix(), sigma.matrix());
}

/// Outcome weights Tr(M_i X) for each effect.
inline std::vector<double> outcome_weights(const std::vector<Matrix>& effects, const Matrix& x) {
  std::vector<double> p;
  p.reserve(effects.size());
  for (const auto& m : effects) {
    if (m.rows() != x.rows()) throw InputError("measurement effect dimension does not match state");
    p.push_back(trace_product(m, x));
  }
  return p;
}

inline ProbabilityDistribution apply_measurement(const std::vector<Matrix>& effects,
                                                 const DensityOperator& rho) {
  std::vector<double> p = outcome_weights(effects, rho.matrix());
  for (double& x : p)
    if (x < 0 && x > -1e-12) x = 0;
  return ProbabilityDistribution(std::move(p), 1e-9);
}

/// S(M(rho)||M(sigma)) for the measurement with the given effects.
inline ExtendedReal measured_relative_entropy(const std::vector<Matrix>& effects, const Matrix& rho,
                                              const Matrix& sigma) {
  return classical_kl(outcome_weights(effects, rho), outcome_weights(effects, sigma));
}

inline ExtendedReal measured_relative_entropy(const std::vector<Matrix>& effects,
                                              const DensityOperator& rho,
                                              const DensityOperator& sigma) {
  if (!(rho.dims() == sigma.dims()))
    throw InputError("measured_relative_entropy: states have different dims");
  return classical_kl(apply_measurement(effects, rho), apply_measurement(effects, sigma));
}

/// Ensemble {(w_k, rho_k)} of states on common dims.
struct LabeledEnsemble {
  std::vector<double> weights;
  std::vector<DensityOperator> states;

  LabeledEnsemble() = default;
  LabeledEnsemble(std::vector<double> w, std::vector<DensityOperator> s)
      : weights(std::move(w)), states(std::move(s)) {
    if (weights.size() != states.size() || states.empty())
      throw InputError("ensemble: weights and states must be nonempty and of equal length");
    ProbabilityDistribution check(weights);
    for (const auto& st : states)
      if (!(st.dims() == states.front().dims())) throw InputError("ensemble: states differ in dims");
  }

  std::size_t size() const { return states.size(); }

  /// sum_k w_k rho_k (x) |k><k| with the label register as last party.
  Matrix block_state() const {
    const int d = states.front().dim();
    const int k = static_cast<int>(size());
    Matrix out = Matrix::Zero(d * k, d * k);
    for (int i = 0; i < k; ++i)
      out += weights[i] * kron(states[i].matrix(), projector(basis_vector(k, i)));
    return out;
  }
};

struct EnsembleRelativeEntropy {
  ExtendedReal block;        // S(sum r_k rho_k x |k><k| || sum s_k sigma_k x |k><k|)
  ExtendedReal label_term;   // S((r_k) || (s_k))
  ExtendedReal conditional;  // sum_k r_k S(rho_k || sigma_k)

  ExtendedReal decomposition() const { return label_term + conditional; }
};

/// Evaluates both sides of the block-state decomposition identity.
inline EnsembleRelativeEntropy ensemble_block_relative_entropy(const LabeledEnsemble& e1,
                                                               const LabeledEnsemble& e2) {
  if (e1.size() != e2.size()) throw InputError("ensembles differ in length");
  if (!(e1.states.front().dims() == e2.states.front().dims()))
    throw InputError("ensembles differ in dims");
  EnsembleRelativeEntropy out;
  out.block = relative_entropy(e1.block_state(), e2.block_state());
  out.label_term = classical_kl(e1.weights, e2.weights);
  out.conditional = ExtendedReal::finite(0);
  for (std::size_t k = 0; k < e1.size(); ++k) {
    if (e1.weights[k] < kProbabilityFloor) continue;
    const ExtendedReal s = quantum_relative_entropy(e1.states[k], e2.states[k]);
    out.conditional =
        out.conditional + (s.infinite ? s : ExtendedReal::finite(e1.weights[k] * s.value));
  }
  return out;
}

}  // namespace reent

#endif  // REENT_ENTROPY_HPP
