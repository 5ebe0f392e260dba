#ifndef REENT_REFSETS_HPP
#define REENT_REFSETS_HPP

// Reference-set geometry: PPT tests, the product-state linear minimization
// oracle over separable states, and Euclidean projection onto PPT states.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "reent/partition.hpp"
#include "reent/qops.hpp"
#include "reent/random.hpp"

namespace reent {

/// Bipartitions of `parties` coarse parties, each given by the side that
/// excludes party 0. There are 2^(parties-1) - 1 of them.
inline std::vector<std::vector<int>> bipartition_cuts(int parties) {
  std::vector<std::vector<int>> cuts;
  for (unsigned mask = 1; mask < (1u << (parties - 1)); ++mask) {
    std::vector<int> side;
    for (int j = 1; j < parties; ++j)
      if (mask & (1u << (j - 1))) side.push_back(j);
    cuts.push_back(side);
  }
  return cuts;
}

struct PptReport {
  bool ppt = true;
  std::vector<std::vector<int>> cuts;  // transposed side of each cut (grouped parties)
  std::vector<double> min_eigenvalues;

  double min_eigenvalue() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : min_eigenvalues) m = std::min(m, v);
    return m;
  }
};

/// PPT test over every bipartition of the grouped parties.
inline PptReport is_ppt_all_cuts(const Matrix& rho, const Dims& dims, const Partition& partition,
                                 double tol = kStateTolerance) {
  partition.validate(dims);
  if (partition.size() < 2) throw InputError("PPT test needs at least two parties");
  const Matrix g = partition.to_grouped(rho, dims);
  const Dims gd = partition.grouped_dims(dims);
  PptReport rep;
  rep.cuts = bipartition_cuts(gd.parties());
  for (const auto& cut : rep.cuts) {
    const double m = min_eigenvalue(partial_transpose(g, gd, cut));
    rep.min_eigenvalues.push_back(m);
    if (m < -tol) rep.ppt = false;
  }
  return rep;
}

inline PptReport is_ppt_all_cuts(const DensityOperator& rho) {
  return is_ppt_all_cuts(rho.matrix(), rho.dims(), Partition::finest(rho.dims()));
}

struct LmoConfig {
  int restarts = 20;
  int sweeps = 200;
  double sweep_tolerance = 1e-14;
};

struct LmoResult {
  std::vector<Vector> locals;  // one unit vector per party
  Vector joint;
  double value = 0;
  int sweeps = 0;
};

namespace detail {

// Columns are |psi_0>..|a>..|psi_{n-1}> for each basis state |a> of party j.
inline Matrix slot_embedding(const std::vector<Vector>& locals, int j) {
  const int dj = static_cast<int>(locals[j].size());
  Matrix b(0, 0);
  for (int a = 0; a < dj; ++a) {
    std::vector<Vector> f = locals;
    f[j] = basis_vector(dj, a);
    const Vector col = kron_all(f);
    if (a == 0) b.resize(col.size(), dj);
    b.col(a) = col;
  }
  return b;
}

inline LmoResult alternating_descent(const Matrix& g, const Dims& dims, std::vector<Vector> locals,
                                     const LmoConfig& cfg) {
  LmoResult r;
  double prev = std::numeric_limits<double>::infinity();
  int sweep = 0;
  double value = prev;
  for (; sweep < cfg.sweeps; ++sweep) {
    for (int j = 0; j < dims.parties(); ++j) {
      const Matrix b = slot_embedding(locals, j);
      const Matrix h = hermitian_part(b.adjoint() * g * b);
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      locals[j] = es.eigenvectors().col(0);
      value = es.eigenvalues()(0);
    }
    if (prev - value < cfg.sweep_tolerance) {
      ++sweep;
      break;
    }
    prev = value;
  }
  r.joint = kron_all(locals);
  r.value = (r.joint.adjoint() * g * r.joint)(0, 0).real();
  r.locals = std::move(locals);
  r.sweeps = sweep;
  return r;
}

}  // namespace detail

/// Approximately minimizes <psi_1..psi_n| g |psi_1..psi_n> over product pure
/// states by alternating smallest-eigenvector sweeps from random starts.
/// `warm` supplies extra deterministic starting points.
inline LmoResult sep_lmo(const Matrix& g, const Dims& dims, const LmoConfig& cfg, Rng& rng,
                         const std::vector<std::vector<Vector>>& warm = {}) {
  if (g.rows() != dims.total()) throw InputError("sep_lmo: operator does not match dims");
  if (dims.parties() == 1) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(g));
    return {{es.eigenvectors().col(0)}, es.eigenvectors().col(0), es.eigenvalues()(0), 0};
  }
  std::optional<LmoResult> best;
  auto consider = [&](LmoResult&& r) {
    if (!best || r.value < best->value - 1e-15 ||
        (std::abs(r.value - best->value) <= 1e-15 && r.sweeps < best->sweeps))
      best = std::move(r);
  };
  for (const auto& w : warm) consider(detail::alternating_descent(g, dims, w, cfg));
  for (int k = 0; k < cfg.restarts; ++k) {
    std::vector<Vector> start;
    for (int j = 0; j < dims.parties(); ++j) start.push_back(random_vector(dims[j], rng));
    consider(detail::alternating_descent(g, dims, std::move(start), cfg));
  }
  return *best;
}

/// Euclidean projection of a Hermitian matrix onto {X >= 0, Tr X = 1}.
inline Matrix project_spectraplex(const Matrix& x) {
  Spectrum s = spectral_decompose(x, 1e-6);
  const Eigen::Index n = s.values.size();
  // values are sorted descending
  double cumsum = 0, theta = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumsum += s.values(k);
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (s.values(k) - t > 0) theta = t;
  }
  return apply_function(s, [&](double v) { return std::max(v - theta, 0.0); });
}

struct PptProjectionConfig {
  int max_iterations = 20000;
  double tolerance = 1e-10;
};

/// Projection onto the PPT states of the grouped system via Dykstra's
/// alternating projections between the unit-trace PSD cone and each cut's
/// partially transposed copy. The output is exactly PSD with unit trace;
/// partial transposes are PSD to within `feasibility`.
inline Matrix project_ppt(const Matrix& x, const Dims& dims, const PptProjectionConfig& cfg = {},
                          double feasibility = 1e-8) {
  if (x.rows() != dims.total()) throw InputError("project_ppt: matrix does not match dims");
  if (hermiticity_error(x) > 1e-8) throw InputError("project_ppt: input is not Hermitian");
  const auto cuts = bipartition_cuts(dims.parties());
  const std::size_t nsets = cuts.size() + 1;
  std::vector<Matrix> incr(nsets, Matrix::Zero(x.rows(), x.cols()));
  Matrix cur = hermitian_part(x);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const Matrix start = cur;
    for (std::size_t s = 0; s < nsets; ++s) {
      const Matrix y = cur + incr[s];
      Matrix p;
      if (s < cuts.size()) {
        p = partial_transpose(project_spectraplex(partial_transpose(y, dims, cuts[s])), dims,
                              cuts[s]);
      } else {
        p = project_spectraplex(y);
      }
      incr[s] = y - p;
      cur = p;
    }
    if ((cur - start).norm() < cfg.tolerance) {
      double worst = 0;
      for (const auto& c : cuts) worst = std::min(worst, min_eigenvalue(partial_transpose(cur, dims, c)));
      if (worst >= -feasibility) return cur;
    }
  }
  double worst = 0;
  for (const auto& c : cuts) worst = std::min(worst, min_eigenvalue(partial_transpose(cur, dims, c)));
  if (worst >= -feasibility) return cur;
  throw ConvergenceError("project_ppt: Dykstra iteration did not reach PPT feasibility");
}

inline DensityOperator project_ppt(const Operator& x) {
  return DensityOperator(project_ppt(x.matrix, x.dims), x.dims, 1e-9);
}

/// Smallest mixture with the maximally mixed state that makes every cut's
/// partial transpose PSD; returns the input when already PPT.
inline Matrix ppt_interior_correction(const Matrix& sigma, const Dims& dims) {
  double worst = 0;
  for (const auto& c : bipartition_cuts(dims.parties()))
    worst = std::min(worst, min_eigenvalue(partial_transpose(sigma, dims, c)));
  worst = std::min(worst, min_eigenvalue(sigma));
  if (worst >= 0) return sigma;
  const double d = dims.total();
  const double t = std::min(1.0, (-worst * d) / (1.0 - worst * d) * (1.0 + 1e-9) + 1e-15);
  return (1.0 - t) * sigma + t * Matrix::Identity(sigma.rows(), sigma.cols()) / d;
}

/// Lower bound on min { Tr(G s) : s PPT state } from the dual
/// max_{B_c >= 0} lambda_min(G - sum_c B_c^{T_c}).
inline double ppt_linear_lower_bound(const Matrix& g, const Dims& dims, int iterations = 300) {
  const auto cuts = bipartition_cuts(dims.parties());
  std::vector<Matrix> b(cuts.size(), Matrix::Zero(g.rows(), g.cols()));
  double best = min_eigenvalue(g);
  const double scale = std::max(1e-12, trace_norm(hermitian_part(g)) / g.rows());
  for (int it = 1; it <= iterations; ++it) {
    Matrix h = g;
    for (std::size_t c = 0; c < cuts.size(); ++c) h -= partial_transpose(b[c], dims, cuts[c]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
    best = std::max(best, es.eigenvalues()(0));
    const Vector v = es.eigenvectors().col(0);
    const Matrix vv = v * v.adjoint();
    const double step = scale / std::sqrt(static_cast<double>(it));
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      const Matrix y = b[c] - step * partial_transpose(vv, dims, cuts[c]);
      const Spectrum s = spectral_decompose(y, 1e-6);
      b[c] = apply_function(s, [](double x) { return std::max(x, 0.0); });
    }
  }
  return best;
}

}  // namespace reent

#endif  // REENT_REFSETS_HPP
