#ifndef REENT_MEASUREMENT_SEARCH_HPP
#define REENT_MEASUREMENT_SEARCH_HPP

// Ascent of S(M(rho)||M(sigma)) over structured measurement families. Every
// local POVM is stored as a stacked isometry V (K d x d) with effects
// V_o^dagger V_o, so completeness holds by construction; steps are retracted
// onto the isometries by the polar factor.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "reent/povm.hpp"

namespace reent {

struct AscentConfig {
  int restarts = 10;
  int iterations = 500;
  double min_step = 1e-9;
  std::uint64_t seed = 1;
};

struct MeasurementClassSpec {
  MeasurementClass cls = MeasurementClass::Sep;
  std::vector<int> budgets;  // outcomes per party; empty means 4 each

  int budget(int party) const {
    if (budgets.empty()) return 4;
    return budgets.at(static_cast<std::size_t>(party));
  }

  void validate(const Dims& dims) const {
    if (!budgets.empty() && static_cast<int>(budgets.size()) != dims.parties())
      throw InputError("measurement class: need one outcome budget per party");
    for (int b : budgets)
      if (b < 1) throw InputError("measurement class: outcome budgets must be >= 1");
  }
};

/// Measurement family parametrized by a list of stacked isometries.
class ProductFamily {
 public:
  enum class Kind { Local, OneWay, Full };

  static ProductFamily local(const Dims& dims, const std::vector<int>& budgets) {
    ProductFamily f(Kind::Local, dims, dims, -1);
    for (int j = 0; j < dims.parties(); ++j) f.blocks_.push_back({j, budgets[j], dims[j]});
    std::vector<int> idx(dims.parties(), 0);
    f.enumerate([&](int j, int) { return j; }, budgets, -1, 0);
    return f;
  }

  /// `first` measures with its budget; every other party then measures with
  /// a POVM chosen by that outcome.
  static ProductFamily one_way(const Dims& dims, int first, const std::vector<int>& budgets) {
    ProductFamily f(Kind::OneWay, dims, dims, first);
    const int n = dims.parties();
    f.blocks_.push_back({first, budgets[first], dims[first]});
    for (int k = 0; k < budgets[first]; ++k)
      for (int j = 0; j < n; ++j)
        if (j != first) f.blocks_.push_back({j, budgets[j], dims[j]});
    for (int k = 0; k < budgets[first]; ++k)
      f.enumerate(
          [&, k](int j, int) {
            if (j == first) return 0;
            return 1 + k * (n - 1) + (j < first ? j : j - 1);
          },
          budgets, first, k);
    return f;
  }

  /// Unstructured POVM with `outcomes` effects on the whole space.
  static ProductFamily full(const Dims& dims, int outcomes) {
    ProductFamily f(Kind::Full, dims, Dims{dims.total()}, -1);
    f.blocks_.push_back({0, outcomes, dims.total()});
    for (int o = 0; o < outcomes; ++o) f.slots_.push_back({{0, o}});
    return f;
  }

  Kind kind() const { return kind_; }
  int first() const { return first_; }
  std::size_t outcomes() const { return slots_.size(); }

  std::vector<Matrix> random_point(Rng& rng) const {
    std::vector<Matrix> v;
    for (const auto& b : blocks_) v.push_back(random_isometry(b.dim, b.outcomes * b.dim, rng));
    return v;
  }

  std::vector<Matrix> effects(const std::vector<Matrix>& v) const {
    const auto loc = local_effects(v);
    std::vector<Matrix> out;
    out.reserve(slots_.size());
    for (const auto& s : slots_) {
      Matrix m = loc[s[0].first][s[0].second];
      for (std::size_t j = 1; j < s.size(); ++j) m = kron(m, loc[s[j].first][s[j].second]);
      out.push_back(std::move(m));
    }
    return out;
  }

  /// Euclidean gradient with respect to each block, given dF/dM_e = h[e].
  std::vector<Matrix> gradient(const std::vector<Matrix>& v, const std::vector<Matrix>& h) const {
    const auto loc = local_effects(v);
    std::vector<std::vector<Matrix>> g(blocks_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      g[b].assign(blocks_[b].outcomes, Matrix::Zero(blocks_[b].dim, blocks_[b].dim));
    const int n = local_dims_.parties();
    for (std::size_t e = 0; e < slots_.size(); ++e) {
      const auto& s = slots_[e];
      if (n == 1) {
        g[s[0].first][s[0].second] += h[e];
        continue;
      }
      for (int j = 0; j < n; ++j) {
        std::vector<Matrix> f;
        for (int l = 0; l < n; ++l)
          f.push_back(l == j ? Matrix::Identity(local_dims_[l], local_dims_[l]) : loc[s[l].first][s[l].second]);
        g[s[j].first][s[j].second] += partial_trace(Matrix(kron_all(f) * h[e]), local_dims_, {j});
      }
    }
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const int d = blocks_[b].dim;
      Matrix gb(v[b].rows(), v[b].cols());
      for (int o = 0; o < blocks_[b].outcomes; ++o)
        gb.middleRows(o * d, d) = 2.0 * v[b].middleRows(o * d, d) * hermitian_part(g[b][o]);
      out.push_back(std::move(gb));
    }
    return out;
  }

  static Matrix retract(const Matrix& x) {
    Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
  }

  /// The family member as a POVM with its class structure.
  Povm povm(const std::vector<Matrix>& v) const {
    const auto loc = local_effects(v);
    switch (kind_) {
      case Kind::Local: return Povm::from_local(dims_, loc);
      case Kind::OneWay: {
        const int n = dims_.parties();
        OneWayStructure s;
        s.first = first_;
        s.first_povm = loc[0];
        for (std::size_t k = 0; k < loc[0].size(); ++k) {
          std::vector<std::vector<Matrix>> stage(n);
          for (int j = 0; j < n; ++j)
            if (j != first_) stage[j] = loc[1 + k * (n - 1) + (j < first_ ? j : j - 1)];
          s.second.push_back(std::move(stage));
        }
        return Povm::from_one_way(dims_, std::move(s));
      }
      default: return Povm::from_effects(dims_, loc[0], MeasurementClass::All);
    }
  }

  /// Parameters reproducing `m` (outcome lists padded with zero effects), if
  /// its structure fits this family.
  std::optional<std::vector<Matrix>> point_of(const Povm& m) const {
    if (!(m.dims == dims_)) return std::nullopt;
    std::vector<std::vector<Matrix>> loc;
    switch (kind_) {
      case Kind::Local:
        if (!m.local) return std::nullopt;
        loc = *m.local;
        break;
      case Kind::OneWay: {
        const auto ow = m.one_way ? m.one_way : (m.local ? retag(m, MeasurementClass::Locc1).one_way : std::nullopt);
        if (!ow) return std::nullopt;
        if (ow->first != first_) {
          if (!m.local) return std::nullopt;
          // a product measurement is one-way from any party
          const int n = dims_.parties();
          loc.push_back((*m.local)[first_]);
          for (std::size_t k = 0; k < (*m.local)[first_].size(); ++k)
            for (int j = 0; j < n; ++j)
              if (j != first_) loc.push_back((*m.local)[j]);
          break;
        }
        loc.push_back(ow->first_povm);
        for (const auto& stage : ow->second)
          for (int j = 0; j < dims_.parties(); ++j)
            if (j != first_) loc.push_back(stage[j]);
        // padded first outcomes are zero effects; their second stages are arbitrary
        const std::size_t stage_blocks = static_cast<std::size_t>(dims_.parties() - 1);
        while (loc.size() < blocks_.size() && loc.size() > stage_blocks)
          for (std::size_t b = 1; b <= stage_blocks; ++b) loc.push_back(loc[b]);
        break;
      }
      default: loc.push_back(m.effects);
    }
    if (loc.size() != blocks_.size()) return std::nullopt;
    std::vector<Matrix> v;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const int d = blocks_[b].dim, k = blocks_[b].outcomes;
      if (static_cast<int>(loc[b].size()) > k || loc[b].empty() || loc[b][0].rows() != d) return std::nullopt;
      Matrix vb = Matrix::Zero(k * d, d);
      for (std::size_t o = 0; o < loc[b].size(); ++o) {
        const Spectrum s = spectral_decompose(hermitian_part(loc[b][o]), 1e-6);
        vb.middleRows(static_cast<Eigen::Index>(o) * d, d) =
            apply_function(s, [](double x) { return std::sqrt(std::max(x, 0.0)); });
      }
      v.push_back(retract(vb));
    }
    return v;
  }

 private:
  struct Block {
    int party;
    int outcomes;
    int dim;
  };

  ProductFamily(Kind k, Dims dims, Dims local_dims, int first)
      : kind_(k), dims_(std::move(dims)), local_dims_(std::move(local_dims)), first_(first) {}

  // Adds the effects of one first-stage branch in mixed-radix order.
  template <class BlockOf>
  void enumerate(BlockOf block_of, const std::vector<int>& budgets, int first, int k) {
    const int n = dims_.parties();
    std::vector<int> idx(n, 0);
    while (true) {
      std::vector<std::pair<int, int>> s(n);
      for (int j = 0; j < n; ++j) s[j] = {block_of(j, idx[j]), j == first ? k : idx[j]};
      slots_.push_back(std::move(s));
      int j = n - 1;
      for (; j >= 0; --j) {
        if (j == first) continue;
        if (++idx[j] < budgets[j]) break;
        idx[j] = 0;
      }
      if (j < 0) break;
    }
  }

  std::vector<std::vector<Matrix>> local_effects(const std::vector<Matrix>& v) const {
    std::vector<std::vector<Matrix>> loc(blocks_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const int d = blocks_[b].dim;
      for (int o = 0; o < blocks_[b].outcomes; ++o) {
        const auto vo = v[b].middleRows(o * d, d);
        loc[b].push_back(vo.adjoint() * vo);
      }
    }
    return loc;
  }

  Kind kind_;
  Dims dims_;
  Dims local_dims_;
  int first_;
  std::vector<Block> blocks_;
  std::vector<std::vector<std::pair<int, int>>> slots_;  // [effect][local party] -> (block, outcome)
};

namespace detail {

/// KL of the outcome distributions and dKL/dM_e for every effect.
inline double measured_kl_and_gradient(const std::vector<Matrix>& eff, const Matrix& rho, const Matrix& sigma,
                                       std::vector<Matrix>* grad) {
  double f = 0;
  if (grad) grad->clear();
  for (const auto& m : eff) {
    const double p = std::max(trace_product(m, rho), 0.0);
    const double q = std::max(trace_product(m, sigma), 1e-300);
    if (p >= kProbabilityFloor) f += p * std::log2(p / q);
    if (grad) {
      const double pp = std::max(p, 1e-300);
      const double a = p >= kProbabilityFloor ? std::log2(pp / q) + 1 / kLn2 : 0.0;
      const double b = -pp / (q * kLn2);
      grad->push_back(a * rho + b * sigma);
    }
  }
  return f;
}

}  // namespace detail

struct AscentResult {
  std::vector<Matrix> point;
  Povm povm;
  double value = -std::numeric_limits<double>::infinity();
  int iterations = 0;
};

/// Multi-start ascent of S(M(rho)||M(sigma)) over a family. `feasible`, when
/// given, rejects steps whose effects leave an extra constraint set.
template <class Feasible>
AscentResult ascend(const ProductFamily& fam, const Matrix& rho, const Matrix& sigma, const AscentConfig& cfg,
                    int restarts, Rng& rng, const std::vector<std::vector<Matrix>>& warm, Feasible&& feasible) {
  AscentResult best;
  std::vector<std::vector<Matrix>> starts = warm;
  for (int r = 0; r < restarts; ++r) starts.push_back(fam.random_point(rng));
  for (auto& v : starts) {
    std::vector<Matrix> h;
    double f = detail::measured_kl_and_gradient(fam.effects(v), rho, sigma, &h);
    double t = 0.3;
    int it = 0;
    for (; it < cfg.iterations && t > cfg.min_step; ++it) {
      auto g = fam.gradient(v, h);
      double norm = 0;
      for (const auto& x : g) norm += x.squaredNorm();
      norm = std::sqrt(norm);
      if (!(norm > 1e-14)) break;
      bool moved = false;
      while (t > cfg.min_step) {
        std::vector<Matrix> trial;
        for (std::size_t b = 0; b < v.size(); ++b) trial.push_back(ProductFamily::retract(v[b] + (t / norm) * g[b]));
        const auto eff = fam.effects(trial);
        if (!feasible(eff)) {
          t *= 0.5;
          continue;
        }
        std::vector<Matrix> ht;
        const double ft = detail::measured_kl_and_gradient(eff, rho, sigma, &ht);
        if (ft > f) {
          v = std::move(trial);
          h = std::move(ht);
          const bool small = ft - f < 1e-13;
          f = ft;
          t = std::min(2.0, t * 1.5);
          moved = !small;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
    }
    best.iterations += it;
    if (f > best.value) {
      best.value = f;
      best.point = v;
    }
  }
  best.povm = fam.povm(best.point);
  best.value = measured_relative_entropy(best.povm.effects, rho, sigma).as_double();
  return best;
}

inline AscentResult ascend(const ProductFamily& fam, const Matrix& rho, const Matrix& sigma, const AscentConfig& cfg,
                           int restarts, Rng& rng, const std::vector<std::vector<Matrix>>& warm = {}) {
  return ascend(fam, rho, sigma, cfg, restarts, rng, warm, [](const std::vector<Matrix>&) { return true; });
}

namespace detail {

inline std::vector<int> budgets_of(const MeasurementClassSpec& spec, const Dims& dims) {
  spec.validate(dims);
  std::vector<int> b;
  for (int j = 0; j < dims.parties(); ++j) b.push_back(spec.budget(j));
  return b;
}

/// Families searched for a class, smallest first.
inline std::vector<ProductFamily> families_for(const MeasurementClassSpec& spec, const Dims& dims) {
  const auto b = budgets_of(spec, dims);
  std::vector<ProductFamily> out{ProductFamily::local(dims, b)};
  if (dims.parties() == 1) {
    if (spec.cls == MeasurementClass::All || spec.cls == MeasurementClass::Ppt)
      out.push_back(ProductFamily::full(dims, dims.total()));
    return out;
  }
  if (spec.cls == MeasurementClass::Lo) return out;
  out.push_back(ProductFamily::one_way(dims, 0, b));
  if (spec.cls == MeasurementClass::Locc1) return out;
  for (int j = 1; j < dims.parties(); ++j) out.push_back(ProductFamily::one_way(dims, j, b));
  if (spec.cls == MeasurementClass::All) out.push_back(ProductFamily::full(dims, dims.total()));
  return out;
}

inline bool effects_ppt(const std::vector<Matrix>& eff, const Dims& dims, double tol = 1e-12) {
  const auto cuts = bipartition_cuts(dims.parties());
  for (const auto& e : eff)
    for (const auto& c : cuts)
      if (min_eigenvalue(partial_transpose(hermitian_part(e), dims, c)) < -tol) return false;
  return true;
}

}  // namespace detail

struct SearchResult {
  double value = 0;
  Povm povm;
  int iterations = 0;
};

/// Best measured relative entropy found over the class on `dims` (which are
/// the measurement's parties). `warm` members seed the families they fit.
inline SearchResult search_measurement(const Matrix& rho, const Matrix& sigma, const Dims& dims,
                                       const MeasurementClassSpec& spec, const AscentConfig& cfg, int restarts,
                                       Rng& rng, const std::vector<Povm>& warm = {}) {
  SearchResult best;
  best.value = -1;
  for (const auto& fam : detail::families_for(spec, dims)) {
    std::vector<std::vector<Matrix>> w;
    for (const auto& m : warm)
      if (auto p = fam.point_of(m)) w.push_back(std::move(*p));
    const AscentResult r = ascend(fam, rho, sigma, cfg, restarts, rng, w);
    best.iterations += r.iterations;
    if (r.value > best.value) {
      best.value = r.value;
      best.povm = r.povm;
    }
  }
  // warm members that no family reproduces still count as they are
  for (const auto& m : warm) {
    if (!(m.dims == dims) || !class_included(m.tag, spec.cls)) continue;
    const double v = measured_relative_entropy(m.effects, rho, sigma).as_double();
    if (v > best.value) {
      best.value = v;
      best.povm = m;
    }
  }
  if (spec.cls == MeasurementClass::Ppt && dims.parties() > 1) {
    // refine the best separable measurement inside the PPT effects
    const ProductFamily fam = ProductFamily::full(dims, static_cast<int>(best.povm.size()));
    if (auto p = fam.point_of(best.povm)) {
      const AscentResult r = ascend(fam, rho, sigma, cfg, 0, rng, {*p},
                                    [&](const std::vector<Matrix>& e) { return detail::effects_ppt(e, dims); });
      best.iterations += r.iterations;
      if (r.value > best.value && detail::effects_ppt(r.povm.effects, dims)) {
        best.value = r.value;
        best.povm = r.povm;
        best.povm.tag = MeasurementClass::Ppt;
      }
    }
  }
  return best;
}

/// Estimate, lower bound and witnesses of a restricted quantity.
struct CertifiedValue {
  double estimate = 0;
  double certified_lower = 0;
  Povm witness_measurement;
  DensityOperator witness_state;
  std::optional<SeparableDecomposition> witness_decomposition;
  /// Best response at witness_state (restricted_ree only).
  std::optional<Povm> estimate_measurement;
  double reference_upper = 0;  // E_R^P upper value at the start (restricted_ree only)
  int rounds = 0;
  std::vector<double> estimate_trace;
  std::vector<double> lower_trace;
};

/// sup over the class of S(M(rho)||M(sigma)), searched by ascent. The value
/// is attained by the returned measurement, so it is a lower bound on the sup.
inline CertifiedValue restricted_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma,
                                                  const MeasurementClassSpec& spec, const AscentConfig& cfg = {}) {
  if (!(rho.dims() == sigma.dims())) throw InputError("restricted_relative_entropy: states differ in dims");
  Rng rng(cfg.seed);
  const SearchResult r = search_measurement(rho.matrix(), sigma.matrix(), rho.dims(), spec, cfg, cfg.restarts, rng);
  CertifiedValue out;
  out.witness_measurement = r.povm;
  out.witness_state = sigma;
  out.estimate = measured_relative_entropy(r.povm.effects, rho.matrix(), sigma.matrix()).as_double();
  out.certified_lower = out.estimate;
  return out;
}

}  // namespace reent

#endif  // REENT_MEASUREMENT_SEARCH_HPP
