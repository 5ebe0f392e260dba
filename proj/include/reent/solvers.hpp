#ifndef REENT_SOLVERS_HPP
#define REENT_SOLVERS_HPP

// Convex minimization over separable states (pairwise Frank-Wolfe with the
// product-state oracle) and over PPT states (projected gradient with Dykstra
// projections). Objectives are duck-typed:
//
//   double value(const Matrix& sigma) const;     // may return +inf
//   Matrix gradient(const Matrix& sigma) const;  // Hermitian
//
// Both engines work on the grouped system, where each party is one group of
// the reference set's partition.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "reent/entropy.hpp"
#include "reent/refsets.hpp"

namespace reent {

struct SolverConfig {
  double gap_tolerance = 1e-5;
  int max_iterations = 2000;
  double interior_floor = 1e-6;  // gradient evaluated at (1-eps) sigma + eps I/D
  LmoConfig lmo;
  PptProjectionConfig projection;
  std::uint64_t seed = 1;
  int stall_limit = 100;
  bool move_atoms = true;  // interleave continuous atom updates with weight steps
};

/// -Tr rho log2 sigma - S(rho), i.e. S(rho||sigma) for full-support sigma.
class QuantumRelativeEntropyObjective {
 public:
  explicit QuantumRelativeEntropyObjective(Matrix rho)
      : rho_(std::move(rho)), entropy_(von_neumann_entropy(rho_)) {}

  double value(const Matrix& sigma) const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(sigma));
    const Matrix r = es.eigenvectors().adjoint() * rho_ * es.eigenvectors();
    double cross = 0;
    for (Eigen::Index k = 0; k < r.rows(); ++k) {
      const double w = r(k, k).real();
      const double l = es.eigenvalues()(k);
      if (l <= 1e-300) {
        if (w > 1e-13) return std::numeric_limits<double>::infinity();
        continue;
      }
      cross += w * std::log2(l);
    }
    return -entropy_ - cross;
  }

  /// Daleckii-Krein form of -D log2(sigma)[rho].
  Matrix gradient(const Matrix& sigma) const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(sigma));
    const auto& l = es.eigenvalues();
    const Matrix& u = es.eigenvectors();
    Matrix r = u.adjoint() * rho_ * u;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
      for (Eigen::Index j = 0; j < r.cols(); ++j) {
        const double a = std::max(l(i), 1e-300), b = std::max(l(j), 1e-300);
        const double dd = std::abs(a - b) > 1e-12 * std::max(a, b)
                              ? (std::log(a) - std::log(b)) / (a - b)
                              : 2.0 / (a + b);
        r(i, j) *= -dd / kLn2;
      }
    return hermitian_part(u * r * u.adjoint());
  }

  const Matrix& rho() const { return rho_; }

 private:
  Matrix rho_;
  double entropy_;
};

/// KL(M(rho) || M(sigma)) for a fixed measurement.
class MeasuredKlObjective {
 public:
  MeasuredKlObjective(const std::vector<Matrix>& effects, const Matrix& rho) : effects_(effects) {
    p_ = outcome_weights(effects_, rho);
  }

  double value(const Matrix& sigma) const {
    double s = 0;
    for (std::size_t i = 0; i < effects_.size(); ++i) {
      if (p_[i] < kProbabilityFloor) continue;
      const double q = trace_product(effects_[i], sigma);
      if (q <= 0) return std::numeric_limits<double>::infinity();
      s += p_[i] * std::log2(p_[i] / q);
    }
    return s;
  }

  Matrix gradient(const Matrix& sigma) const {
    Matrix g = Matrix::Zero(sigma.rows(), sigma.cols());
    for (std::size_t i = 0; i < effects_.size(); ++i) {
      if (p_[i] < kProbabilityFloor) continue;
      const double q = std::max(trace_product(effects_[i], sigma), 1e-300);
      g -= (p_[i] / (q * kLn2)) * effects_[i];
    }
    return g;
  }

  const std::vector<double>& outcome_probabilities() const { return p_; }
  const std::vector<Matrix>& effects() const { return effects_; }

 private:
  std::vector<Matrix> effects_;
  std::vector<double> p_;
};

/// sum_k (sqrt(l_k^2 + mu^2) - mu) over the eigenvalues l_k of rho - sigma;
/// within [||rho-sigma||_1 - D mu, ||rho-sigma||_1].
class SmoothedTraceDistanceObjective {
 public:
  SmoothedTraceDistanceObjective(Matrix rho, double mu) : rho_(std::move(rho)), mu_(mu) {}

  double value(const Matrix& sigma) const {
    const RealVector l = eigenvalues(rho_ - sigma);
    double s = 0;
    for (Eigen::Index k = 0; k < l.size(); ++k) s += std::sqrt(l(k) * l(k) + mu_ * mu_) - mu_;
    return s;
  }

  Matrix gradient(const Matrix& sigma) const {
    const Spectrum s = spectral_decompose(rho_ - sigma, 1e-6);
    return -apply_function(s, [&](double l) { return l / std::sqrt(l * l + mu_ * mu_); });
  }

  double mu() const { return mu_; }

 private:
  Matrix rho_;
  double mu_;
};

struct SepSolveResult {
  Matrix sigma;  // grouped coordinates
  std::vector<double> weights;
  std::vector<std::vector<Vector>> atoms;  // [term][group]
  double value = 0;
  double gap = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

struct SepStart {
  std::vector<double> weights;
  std::vector<std::vector<Vector>> atoms;
};

/// I/D written as the uniform mixture of computational product states.
inline SepStart computational_start(const Dims& gdims) {
  SepStart s;
  const int d = gdims.total();
  for (int idx = 0; idx < d; ++idx) {
    std::vector<Vector> loc;
    int rem = idx;
    int stride = d;
    for (int j = 0; j < gdims.parties(); ++j) {
      stride /= gdims[j];
      loc.push_back(basis_vector(gdims[j], rem / stride));
      rem %= stride;
    }
    s.atoms.push_back(std::move(loc));
    s.weights.push_back(1.0 / d);
  }
  return s;
}

namespace detail {

template <class F>
std::pair<double, double> line_minimize(F&& phi, double hi) {
  const double f0 = phi(0.0);
  auto safe = [&](double t) {
    const double v = phi(t);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };
  const auto [t, v] = boost::math::tools::brent_find_minima(safe, 0.0, hi, 40);
  double bt = t, bv = v;
  const double fh = safe(hi);
  if (fh < bv) bt = hi, bv = fh;
  if (!(bv < f0)) return {0.0, f0};
  return {bt, bv};
}

}  // namespace detail

/// Blended pairwise Frank-Wolfe over separable states of the grouped system.
///
/// The iterate is kept as an explicit convex combination of product pure
/// states. Cheap pairwise steps between active atoms are taken while their
/// local gap dominates the last global gap; otherwise the product-state
/// oracle is queried. The global gap sum_a w_a <a|G|a> - min_s <s|G|s>
/// bounds the suboptimality whenever the oracle finds the true minimum.
template <class Objective>
SepSolveResult minimize_over_sep(const Objective& obj, const Dims& gdims, const SolverConfig& cfg,
                                 SepStart start = {}) {
  if (start.atoms.empty()) start = computational_start(gdims);
  const int d = gdims.total();
  const Matrix id = Matrix::Identity(d, d) / static_cast<double>(d);
  Rng rng(cfg.seed);

  SepSolveResult res;
  std::vector<Vector> joints;
  for (const auto& a : start.atoms) joints.push_back(kron_all(a));
  res.atoms = std::move(start.atoms);
  res.weights = std::move(start.weights);
  auto assemble = [&] {
    Matrix s = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < joints.size(); ++a)
      s.noalias() += res.weights[a] * (joints[a] * joints[a].adjoint());
    return s;
  };
  auto pairwise = [&](std::size_t to, std::size_t from, const Matrix& sigma, double& value) {
    const Matrix dir = joints[to] * joints[to].adjoint() - joints[from] * joints[from].adjoint();
    const double hi = res.weights[from];
    const auto [t, v] =
        detail::line_minimize([&](double t) { return obj.value(sigma + t * dir); }, hi);
    if (!(t > 0 && v < value)) return false;
    res.weights[to] += t;
    res.weights[from] = t >= hi * (1 - 1e-12) ? 0.0 : res.weights[from] - t;
    value = v;
    return true;
  };

  // Moves every active atom's local vectors along the Riemannian gradient of
  // the objective on the product of unit spheres, with a shared step length.
  auto move_atoms = [&](const Matrix& grad, Matrix& sigma, double& value) {
    const int parties = gdims.parties();
    std::vector<std::vector<Vector>> dirs(joints.size());
    double scale = 0;
    for (std::size_t a = 0; a < joints.size(); ++a) {
      for (int j = 0; j < parties; ++j) {
        const Matrix b = detail::slot_embedding(res.atoms[a], j);
        const Matrix h = b.adjoint() * grad * b;
        const Vector& psi = res.atoms[a][j];
        const Vector hv = h * psi;
        const Complex e = psi.dot(hv);
        Vector g = -(hv - e * psi);
        scale = std::max(scale, g.norm());
        dirs[a].push_back(std::move(g));
      }
    }
    if (!(scale > 1e-14)) return false;
    auto moved = [&](double t) {
      std::vector<std::vector<Vector>> out = res.atoms;
      for (std::size_t a = 0; a < out.size(); ++a)
        for (int j = 0; j < parties; ++j) {
          out[a][j] += t * dirs[a][j];
          out[a][j].normalize();
        }
      return out;
    };
    auto build = [&](const std::vector<std::vector<Vector>>& atoms) {
      Matrix s = Matrix::Zero(d, d);
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        const Vector v = kron_all(atoms[a]);
        s.noalias() += res.weights[a] * (v * v.adjoint());
      }
      return s;
    };
    const double hi = 0.5 / scale;
    const auto [t, v] = detail::line_minimize([&](double t) { return obj.value(build(moved(t))); }, hi);
    if (!(t > 0 && v < value)) return false;
    res.atoms = moved(t);
    for (std::size_t a = 0; a < joints.size(); ++a) joints[a] = kron_all(res.atoms[a]);
    sigma = assemble();
    value = v;
    return true;
  };

  Matrix sigma = assemble();
  double value = obj.value(sigma);
  res.trace.push_back(value);
  std::vector<Vector> last_lmo;
  double phi = std::numeric_limits<double>::infinity();
  int stalled = 0;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    res.iterations = it + 1;
    const double eps = cfg.interior_floor;
    const Matrix grad = obj.gradient(eps > 0 ? Matrix((1 - eps) * sigma + eps * id) : sigma);

    std::vector<double> ga(joints.size());
    double inner = 0;
    std::size_t away = 0, local = 0;
    for (std::size_t a = 0; a < joints.size(); ++a) {
      ga[a] = (joints[a].adjoint() * grad * joints[a])(0, 0).real();
      inner += res.weights[a] * ga[a];
      if (ga[a] > ga[away]) away = a;
      if (ga[a] < ga[local]) local = a;
    }

    bool moved = false;
    if (cfg.move_atoms && it % 2 == 1) {
      if (move_atoms(grad, sigma, value)) {
        res.trace.push_back(value);
        stalled = 0;
        continue;
      }
    }
    if (std::isfinite(phi) && ga[away] - ga[local] >= 0.5 * phi && away != local) {
      moved = pairwise(local, away, sigma, value);
      if (!moved) phi = 0.5 * (ga[away] - ga[local]);
    }
    if (!moved) {
      std::vector<std::vector<Vector>> warm;
      if (!last_lmo.empty()) warm.push_back(last_lmo);
      LmoResult s = sep_lmo(grad, gdims, cfg.lmo, rng, warm);
      last_lmo = s.locals;
      const double gap = inner - s.value;
      res.gap = gap;
      phi = gap;
      res.lower_bound = std::max(res.lower_bound, value - gap);
      if (gap <= cfg.gap_tolerance) {
        res.converged = true;
        break;
      }
      std::size_t target = joints.size();
      for (std::size_t a = 0; a < joints.size(); ++a)
        if (std::norm(joints[a].dot(s.joint)) > 1 - 1e-12) {
          target = a;
          break;
        }
      if (target == joints.size()) {
        joints.push_back(s.joint);
        res.atoms.push_back(s.locals);
        res.weights.push_back(0.0);
        ga.push_back(s.value);
      }
      if (away != target && ga[away] - ga[target] > 0.5 * gap) moved = pairwise(target, away, sigma, value);
      if (!moved) {
        const Matrix dir = joints[target] * joints[target].adjoint() - sigma;
        const auto [t, v] =
            detail::line_minimize([&](double t) { return obj.value(sigma + t * dir); }, 1.0);
        if (t > 0 && v < value) {
          for (auto& w : res.weights) w *= (1 - t);
          res.weights[target] += t;
          moved = true;
          value = v;
        }
      }
    }

    // Drop atoms whose weight vanished.
    std::size_t keep = 0;
    for (std::size_t a = 0; a < joints.size(); ++a) {
      if (res.weights[a] <= 1e-15) continue;
      joints[keep] = joints[a];
      res.atoms[keep] = res.atoms[a];
      res.weights[keep] = res.weights[a];
      ++keep;
    }
    joints.resize(keep);
    res.atoms.resize(keep);
    res.weights.resize(keep);
    double wsum = 0;
    for (double w : res.weights) wsum += w;
    for (auto& w : res.weights) w /= wsum;

    sigma = assemble();
    const double fresh = obj.value(sigma);
    if (std::isfinite(fresh)) value = fresh;
    res.trace.push_back(value);
    if (!moved) {
      if (++stalled >= cfg.stall_limit) break;
    } else {
      stalled = 0;
    }
  }
  res.sigma = sigma;
  res.value = value;
  return res;
}

struct PptSolveResult {
  Matrix sigma;  // grouped coordinates, exactly PPT
  double value = 0;
  double lower_bound = -std::numeric_limits<double>::infinity();
  double step_norm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

/// Projected gradient over PPT states of the grouped system with
/// backtracking on the step length. The returned iterate is shifted toward
/// I/D just enough to be exactly PPT.
template <class Objective>
PptSolveResult minimize_over_ppt(const Objective& obj, const Dims& gdims, const SolverConfig& cfg,
                                 const Matrix* start = nullptr, int dual_iterations = 300) {
  const int d = gdims.total();
  const Matrix id = Matrix::Identity(d, d) / static_cast<double>(d);
  PptSolveResult res;
  Matrix sigma = start ? project_ppt(*start, gdims, cfg.projection) : id;
  double value = obj.value(sigma);
  res.trace.push_back(value);
  double step = 0.1;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    res.iterations = it + 1;
    const double eps = cfg.interior_floor;
    const Matrix grad = obj.gradient(eps > 0 ? Matrix((1 - eps) * sigma + eps * id) : sigma);
    bool accepted = false;
    while (step > 1e-14) {
      Matrix trial;
      try {
        trial = project_ppt(sigma - step * grad, gdims, cfg.projection);
      } catch (const ConvergenceError&) {
        step *= 0.5;
        continue;
      }
      const double v = obj.value(trial);
      if (v < value) {
        res.step_norm = (trial - sigma).norm();
        sigma = trial;
        const double drop = value - v;
        value = v;
        step *= 1.5;
        accepted = true;
        if (drop < 1e-12 || res.step_norm < 1e-10) res.converged = true;
        break;
      }
      step *= 0.5;
    }
    res.trace.push_back(value);
    if (!accepted) {
      res.converged = true;
      break;
    }
    if (res.converged) break;
  }
  res.sigma = ppt_interior_correction(sigma, gdims);
  res.value = obj.value(res.sigma);
  if (dual_iterations > 0) {
    const Matrix grad = obj.gradient(res.sigma);
    res.lower_bound =
        res.value - trace_product(grad, res.sigma) + ppt_linear_lower_bound(grad, gdims, dual_iterations);
  }
  return res;
}

}  // namespace reent

#endif  // REENT_SOLVERS_HPP
