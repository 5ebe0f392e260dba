#ifndef REENT_POVM_HPP
#define REENT_POVM_HPP

// Finite POVMs on multipartite systems, tagged with a measurement class and
// carrying the structure that proves membership in it.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "reent/entropy.hpp"
#include "reent/ree.hpp"

namespace reent {

/// Ordered by inclusion: LO < LOCC1 < SEP < PPT < ALL.
enum class MeasurementClass { Lo, Locc1, Sep, Ppt, All };

inline std::string to_string(MeasurementClass c) {
  switch (c) {
    case MeasurementClass::Lo: return "lo";
    case MeasurementClass::Locc1: return "locc1";
    case MeasurementClass::Sep: return "sep";
    case MeasurementClass::Ppt: return "ppt";
    default: return "all";
  }
}

inline MeasurementClass parse_measurement_class(const std::string& s) {
  if (s == "lo") return MeasurementClass::Lo;
  if (s == "locc1") return MeasurementClass::Locc1;
  if (s == "sep") return MeasurementClass::Sep;
  if (s == "ppt") return MeasurementClass::Ppt;
  if (s == "all") return MeasurementClass::All;
  throw InputError("unknown measurement class '" + s + "'");
}

/// True when every measurement of class `a` also lies in class `b`.
inline bool class_included(MeasurementClass a, MeasurementClass b) {
  return static_cast<int>(a) <= static_cast<int>(b);
}

/// One-way two-stage structure: party `first` measures, then every other
/// party applies a POVM chosen by the first outcome.
struct OneWayStructure {
  int first = 0;
  std::vector<Matrix> first_povm;
  std::vector<std::vector<std::vector<Matrix>>> second;  // [first outcome][party][outcome]; empty at `first`
};

/// Effect i = sum_k M_{i,k}^(1) x ... x M_{i,k}^(n), factors PSD.
using ProductTerms = std::vector<std::vector<std::vector<Matrix>>>;  // [effect][term][party]

struct Povm {
  Dims dims;
  std::vector<Matrix> effects;
  MeasurementClass tag = MeasurementClass::All;
  std::optional<std::vector<std::vector<Matrix>>> local;  // [party][outcome], effects in mixed radix order
  std::optional<OneWayStructure> one_way;
  std::optional<ProductTerms> terms;

  std::size_t size() const { return effects.size(); }

  static Povm from_effects(const Dims& dims, std::vector<Matrix> effects,
                           MeasurementClass tag = MeasurementClass::All) {
    if (effects.empty()) throw InputError("POVM needs at least one effect");
    for (const auto& m : effects)
      if (m.rows() != dims.total() || m.cols() != dims.total())
        throw InputError("POVM effect is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", dims need " + std::to_string(dims.total()));
    Povm p;
    p.dims = dims;
    p.effects = std::move(effects);
    p.tag = tag;
    return p;
  }

  /// Product of local POVMs, party 0 the slowest outcome index.
  static Povm from_local(const Dims& dims, std::vector<std::vector<Matrix>> factors) {
    if (static_cast<int>(factors.size()) != dims.parties())
      throw InputError("local POVM: need one factor POVM per party");
    std::vector<Matrix> eff{Matrix::Identity(1, 1)};
    for (int j = 0; j < dims.parties(); ++j) {
      if (factors[j].empty()) throw InputError("local POVM: empty factor");
      std::vector<Matrix> next;
      for (const auto& e : eff)
        for (const auto& f : factors[j]) {
          if (f.rows() != dims[j]) throw InputError("local POVM: factor dimension mismatch");
          next.push_back(kron(e, f));
        }
      eff = std::move(next);
    }
    Povm p = from_effects(dims, std::move(eff), MeasurementClass::Lo);
    p.local = std::move(factors);
    return p;
  }

  static Povm from_one_way(const Dims& dims, OneWayStructure s) {
    const int n = dims.parties();
    if (s.first < 0 || s.first >= n) throw InputError("one-way POVM: first party out of range");
    if (s.second.size() != s.first_povm.size())
      throw InputError("one-way POVM: need one second stage per first outcome");
    std::vector<Matrix> eff;
    for (std::size_t k = 0; k < s.first_povm.size(); ++k) {
      if (static_cast<int>(s.second[k].size()) != n)
        throw InputError("one-way POVM: second stage needs an entry per party");
      std::vector<std::vector<Matrix>> slots(n);
      for (int j = 0; j < n; ++j) slots[j] = j == s.first ? std::vector<Matrix>{s.first_povm[k]} : s.second[k][j];
      std::vector<Matrix> part{Matrix::Identity(1, 1)};
      for (int j = 0; j < n; ++j) {
        if (slots[j].empty()) throw InputError("one-way POVM: empty local stage");
        std::vector<Matrix> next;
        for (const auto& e : part)
          for (const auto& f : slots[j]) {
            if (f.rows() != dims[j]) throw InputError("one-way POVM: factor dimension mismatch");
            next.push_back(kron(e, f));
          }
        part = std::move(next);
      }
      for (auto& m : part) eff.push_back(std::move(m));
    }
    Povm p = from_effects(dims, std::move(eff), MeasurementClass::Locc1);
    p.one_way = std::move(s);
    return p;
  }

  /// Per-effect product decomposition from whatever structure is present.
  std::optional<ProductTerms> product_terms() const {
    if (terms) return terms;
    const int n = dims.parties();
    if (local) {
      ProductTerms out;
      std::vector<std::size_t> idx(n, 0);
      for (std::size_t e = 0; e < effects.size(); ++e) {
        std::vector<Matrix> f;
        for (int j = 0; j < n; ++j) f.push_back((*local)[j][idx[j]]);
        out.push_back({f});
        for (int j = n - 1; j >= 0; --j) {
          if (++idx[j] < (*local)[j].size()) break;
          idx[j] = 0;
        }
      }
      return out;
    }
    if (one_way) {
      ProductTerms out;
      const auto& s = *one_way;
      for (std::size_t k = 0; k < s.first_povm.size(); ++k) {
        std::vector<std::size_t> idx(n, 0);
        std::size_t count = 1;
        for (int j = 0; j < n; ++j)
          if (j != s.first) count *= s.second[k][j].size();
        for (std::size_t c = 0; c < count; ++c) {
          std::vector<Matrix> f;
          for (int j = 0; j < n; ++j) f.push_back(j == s.first ? s.first_povm[k] : s.second[k][j][idx[j]]);
          out.push_back({f});
          for (int j = n - 1; j >= 0; --j) {
            if (j == s.first) continue;
            if (++idx[j] < s.second[k][j].size()) break;
            idx[j] = 0;
          }
        }
      }
      return out;
    }
    return std::nullopt;
  }
};

/// Sum of the effects minus the identity, spectral norm.
inline double completeness_error(const Povm& m) {
  Matrix s = -Matrix::Identity(m.dims.total(), m.dims.total());
  for (const auto& e : m.effects) s += e;
  const RealVector l = eigenvalues(hermitian_part(s));
  return std::max(std::abs(l(0)), std::abs(l(l.size() - 1)));
}

struct PovmReport {
  bool complete = false;
  bool positive = false;
  bool structure = false;
  double completeness_error = 0;  // ||sum M_i - I||_inf
  double min_eigenvalue = 0;      // over all effects
  double structure_error = 0;     // reassembly error, or failing effect's certificate
  std::string structure_detail;

  bool valid() const { return complete && positive && structure; }
};

namespace detail {

inline double local_povm_defect(const std::vector<Matrix>& f, int dim) {
  Matrix s = -Matrix::Identity(dim, dim);
  double worst = 0;
  for (const auto& m : f) {
    s += m;
    worst = std::max(worst, -min_eigenvalue(hermitian_part(m)));
  }
  return std::max(worst, trace_norm(hermitian_part(s)));
}

}  // namespace detail

/// Checks completeness, positivity and the class structure.
///
/// SEP effects without a product decomposition are tested individually: the
/// normalized effect must be PPT, and (beyond 2x2 and 2x3, where PPT decides)
/// its separable relative entropy must be below 1e-4.
inline PovmReport validate_povm(const Povm& m, double tol = kStateTolerance) {
  PovmReport r;
  r.completeness_error = completeness_error(m);
  r.complete = r.completeness_error <= tol;
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& e : m.effects) r.min_eigenvalue = std::min(r.min_eigenvalue, min_eigenvalue(hermitian_part(e)));
  r.positive = r.min_eigenvalue >= -tol;

  const int n = m.dims.parties();
  auto reassembly = [&](const ProductTerms& t) {
    if (t.size() != m.effects.size()) return std::numeric_limits<double>::infinity();
    double err = 0;
    for (std::size_t e = 0; e < t.size(); ++e) {
      Matrix s = Matrix::Zero(m.dims.total(), m.dims.total());
      for (const auto& term : t[e]) {
        if (static_cast<int>(term.size()) != n) return std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
          if (term[j].rows() != m.dims[j]) return std::numeric_limits<double>::infinity();
          err = std::max(err, std::max(0.0, -min_eigenvalue(hermitian_part(term[j]))));
        }
        s += kron_all(term);
      }
      err = std::max(err, (s - m.effects[e]).cwiseAbs().maxCoeff());
    }
    return err;
  };

  switch (m.tag) {
    case MeasurementClass::All:
      r.structure = true;
      r.structure_detail = "no structure required";
      break;
    case MeasurementClass::Ppt: {
      double worst = 0;
      for (const auto& e : m.effects)
        for (const auto& c : bipartition_cuts(n))
          worst = std::min(worst, min_eigenvalue(partial_transpose(hermitian_part(e), m.dims, c)));
      r.structure_error = -worst;
      r.structure = worst >= -tol;
      r.structure_detail = "minimum partial-transpose eigenvalue over effects and cuts";
      break;
    }
    case MeasurementClass::Lo: {
      if (!m.local) {
        r.structure_detail = "LO tag without local factor POVMs";
        break;
      }
      double err = reassembly(*m.product_terms());
      for (int j = 0; j < n && j < static_cast<int>(m.local->size()); ++j)
        err = std::max(err, detail::local_povm_defect((*m.local)[j], m.dims[j]));
      r.structure_error = err;
      r.structure = static_cast<int>(m.local->size()) == n && err <= 1e-9;
      r.structure_detail = "local factors reassemble and are POVMs";
      break;
    }
    case MeasurementClass::Locc1: {
      const auto t = m.product_terms();
      if (!m.one_way && !m.local) {
        r.structure_detail = "LOCC1 tag without a one-way structure";
        break;
      }
      double err = reassembly(*t);
      if (m.one_way) {
        const auto& s = *m.one_way;
        err = std::max(err, detail::local_povm_defect(s.first_povm, m.dims[s.first]));
        for (const auto& stage : s.second)
          for (int j = 0; j < n; ++j)
            if (j != s.first) err = std::max(err, detail::local_povm_defect(stage[j], m.dims[j]));
      } else {
        for (int j = 0; j < n; ++j) err = std::max(err, detail::local_povm_defect((*m.local)[j], m.dims[j]));
      }
      r.structure_error = err;
      r.structure = err <= 1e-9;
      r.structure_detail = "one-way stages reassemble and are POVMs";
      break;
    }
    case MeasurementClass::Sep: {
      if (const auto t = m.product_terms()) {
        r.structure_error = reassembly(*t);
        r.structure = r.structure_error <= 1e-9;
        r.structure_detail = "product decomposition reassembles with PSD factors";
        break;
      }
      r.structure = true;
      r.structure_detail = "each normalized effect passes the separability test";
      const bool ppt_decides = n == 2 && m.dims.total() <= 6;
      for (std::size_t e = 0; e < m.effects.size(); ++e) {
        const Matrix h = hermitian_part(m.effects[e]);
        const double tr = h.trace().real();
        if (tr <= tol) continue;
        const Matrix tau = h / tr;
        const PptReport ppt = is_ppt_all_cuts(tau, m.dims, Partition::finest(m.dims), tol);
        if (!ppt.ppt) {
          r.structure = false;
          r.structure_error = -ppt.min_eigenvalue();
          r.structure_detail = "effect " + std::to_string(e) + " is not PPT";
          break;
        }
        if (ppt_decides) continue;
        try {
          const DensityOperator st(tau, m.dims, 1e-8);
          const auto er = relative_entropy_of_entanglement(st, ReferenceSetSpec::sep(m.dims));
          if (er.value > 1e-4) {
            r.structure = false;
            r.structure_error = er.value;
            r.structure_detail = "effect " + std::to_string(e) + " is entangled";
            break;
          }
          r.structure_error = std::max(r.structure_error, er.value);
        } catch (const InputError&) {
          r.structure = false;
          r.structure_detail = "effect " + std::to_string(e) + " is not a positive operator";
          break;
        }
      }
      break;
    }
  }
  return r;
}

/// Same effects and structure under another class tag. Moving up the
/// hierarchy keeps a valid witness (LO -> LOCC1 -> SEP).
inline Povm retag(const Povm& m, MeasurementClass tag) {
  Povm out = m;
  out.tag = tag;
  if (tag == MeasurementClass::Locc1 && m.local && !m.one_way) {
    const int n = m.dims.parties();
    OneWayStructure s;
    s.first = 0;
    s.first_povm = (*m.local)[0];
    for (std::size_t k = 0; k < s.first_povm.size(); ++k) {
      std::vector<std::vector<Matrix>> stage(n);
      for (int j = 1; j < n; ++j) stage[j] = (*m.local)[j];
      s.second.push_back(std::move(stage));
    }
    out.one_way = std::move(s);
  }
  if (tag == MeasurementClass::Sep && !m.terms) out.terms = m.product_terms();
  return out;
}

/// Rank-one projectors onto |i>, (|i> +- |j>)/sqrt2 and (|i> +- i|j>)/sqrt2,
/// scaled by 1/(2d - 1). For a qubit these are the six Pauli eigenstates / 3.
inline std::vector<Matrix> informationally_complete_local(int d) {
  std::vector<Matrix> out;
  const double s = 1.0 / (2 * d - 1);
  const double h = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) out.push_back(s * projector(basis_vector(d, i)));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (Complex c : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
        const Vector v = h * (basis_vector(d, i) + c * basis_vector(d, j));
        out.push_back(s * projector(v));
      }
  return out;
}

/// Tensor product of single-party IC POVMs.
inline Povm informationally_complete_lo(const Dims& dims) {
  std::vector<std::vector<Matrix>> f;
  for (int j = 0; j < dims.parties(); ++j) f.push_back(informationally_complete_local(dims[j]));
  return Povm::from_local(dims, std::move(f));
}

/// Effects V_o^dagger V_o of a Haar-random isometry C^d -> C^(outcomes d).
inline std::vector<Matrix> random_local_povm(int d, int outcomes, Rng& rng) {
  const Matrix v = random_isometry(d, outcomes * d, rng);
  std::vector<Matrix> out;
  for (int o = 0; o < outcomes; ++o) {
    const Matrix b = v.middleRows(o * d, d);
    out.push_back(hermitian_part(b.adjoint() * b));
  }
  return out;
}

/// Product of independent random local POVMs.
inline Povm random_lo_povm(const Dims& dims, int outcomes, Rng& rng) {
  std::vector<std::vector<Matrix>> f;
  for (int j = 0; j < dims.parties(); ++j) f.push_back(random_local_povm(dims[j], outcomes, rng));
  return Povm::from_local(dims, std::move(f));
}

/// Random one-way measurement: `first` measures, the others choose random
/// local POVMs depending on its outcome.
inline Povm random_one_way_povm(const Dims& dims, int first, int outcomes, Rng& rng) {
  OneWayStructure s;
  s.first = first;
  s.first_povm = random_local_povm(dims[first], outcomes, rng);
  for (int k = 0; k < outcomes; ++k) {
    std::vector<std::vector<Matrix>> stage(static_cast<std::size_t>(dims.parties()));
    for (int j = 0; j < dims.parties(); ++j)
      if (j != first) stage[j] = random_local_povm(dims[j], outcomes, rng);
    s.second.push_back(std::move(stage));
  }
  return Povm::from_one_way(dims, std::move(s));
}

/// Rank of the linear map X -> (Tr M_i X)_i on D x D complex matrices.
inline int outcome_map_rank(const Povm& m, double tol = 1e-10) {
  const int d = m.dims.total();
  Matrix a(static_cast<Eigen::Index>(m.size()), d * d);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) a(static_cast<Eigen::Index>(i), r * d + c) = m.effects[i](c, r);
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > tol * std::max(1.0, sv(0))) ++rank;
  return rank;
}

/// Measurement on X x Y made of independent measurements on each side; the
/// outcome of `x` is the slow index. Both must share a party count when the
/// parties are merged pairwise later; here parties simply concatenate.
inline Povm tensor_povm(const Povm& x, const Povm& y) {
  const Dims dims = x.dims.concat(y.dims);
  if (x.local && y.local && x.tag == MeasurementClass::Lo && y.tag == MeasurementClass::Lo) {
    auto f = *x.local;
    for (const auto& g : *y.local) f.push_back(g);
    return Povm::from_local(dims, std::move(f));
  }
  std::vector<Matrix> eff;
  for (const auto& a : x.effects)
    for (const auto& b : y.effects) eff.push_back(kron(a, b));
  MeasurementClass tag = static_cast<int>(x.tag) > static_cast<int>(y.tag) ? x.tag : y.tag;
  if (tag == MeasurementClass::Locc1) tag = MeasurementClass::Sep;
  Povm out = Povm::from_effects(dims, std::move(eff), tag);
  const auto tx = x.product_terms(), ty = y.product_terms();
  if (tx && ty) {
    ProductTerms t;
    for (const auto& a : *tx)
      for (const auto& b : *ty) {
        std::vector<std::vector<Matrix>> e;
        for (const auto& ta : a)
          for (const auto& tb : b) {
            auto f = ta;
            f.insert(f.end(), tb.begin(), tb.end());
            e.push_back(std::move(f));
          }
        t.push_back(std::move(e));
      }
    out.terms = std::move(t);
  }
  return out;
}

/// Re-expresses a measurement in the coordinates of `partition`'s groups.
/// Product structure survives by merging the factors of each group; the tag
/// is kept for LO and SEP, and LOCC1 becomes SEP.
inline Povm regroup(const Povm& m, const Partition& partition) {
  partition.validate(m.dims);
  const Dims gd = partition.grouped_dims(m.dims);
  auto merge = [&](const std::vector<Matrix>& f) {
    std::vector<Matrix> out;
    for (const auto& g : partition.groups()) {
      std::vector<Matrix> parts;
      for (int p : g) parts.push_back(f[p]);
      out.push_back(kron_all(parts));
    }
    return out;
  };
  std::vector<Matrix> eff;
  std::vector<std::size_t> order(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) order[i] = i;
  if (m.local && m.tag == MeasurementClass::Lo) {
    // group factors: outcomes of a group are the mixed-radix tuple of its parties
    std::vector<std::vector<Matrix>> f;
    for (const auto& g : partition.groups()) {
      std::vector<Matrix> acc{Matrix::Identity(1, 1)};
      for (int p : g) {
        std::vector<Matrix> next;
        for (const auto& a : acc)
          for (const auto& b : (*m.local)[p]) next.push_back(kron(a, b));
        acc = std::move(next);
      }
      f.push_back(std::move(acc));
    }
    return Povm::from_local(gd, std::move(f));
  }
  for (const auto& e : m.effects) eff.push_back(partition.to_grouped(e, m.dims));
  MeasurementClass tag = m.tag == MeasurementClass::Locc1 ? MeasurementClass::Sep : m.tag;
  if (tag == MeasurementClass::Lo) tag = MeasurementClass::Sep;
  Povm out = Povm::from_effects(gd, std::move(eff), tag);
  if (const auto t = m.product_terms()) {
    ProductTerms g;
    for (const auto& e : *t) {
      std::vector<std::vector<Matrix>> terms;
      for (const auto& term : e) terms.push_back(merge(term));
      g.push_back(std::move(terms));
    }
    out.terms = std::move(g);
  }
  return out;
}

/// Convex combination with labels: effects w_k M_{k,i} over all (k, i).
/// The outcome relative entropy is the w-average of the members'.
inline Povm labeled_mixture(const std::vector<Povm>& members, const std::vector<double>& w) {
  if (members.empty() || members.size() != w.size()) throw InputError("mixture: weight count mismatch");
  std::vector<Matrix> eff;
  ProductTerms terms;
  bool have_terms = true;
  MeasurementClass tag = MeasurementClass::Lo;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (!(members[k].dims == members[0].dims)) throw InputError("mixture: members differ in dims");
    if (static_cast<int>(members[k].tag) > static_cast<int>(tag)) tag = members[k].tag;
    const auto t = members[k].product_terms();
    if (!t) have_terms = false;
    for (std::size_t i = 0; i < members[k].size(); ++i) {
      if (w[k] <= 0) continue;
      eff.push_back(w[k] * members[k].effects[i]);
      if (t) {
        auto e = (*t)[i];
        for (auto& term : e) term[0] *= w[k];
        terms.push_back(std::move(e));
      }
    }
  }
  // a shared coin is not local, but a common first party can toss it and
  // announce it together with its own outcome
  if (tag == MeasurementClass::Lo || tag == MeasurementClass::Locc1) {
    std::vector<Povm> ow;
    for (const auto& m : members) ow.push_back(m.one_way ? m : retag(m, MeasurementClass::Locc1));
    bool common = true;
    for (const auto& m : ow) common = common && m.one_way && m.one_way->first == ow[0].one_way->first;
    if (common) {
      OneWayStructure s;
      s.first = ow[0].one_way->first;
      for (std::size_t k = 0; k < ow.size(); ++k) {
        if (w[k] <= 0) continue;
        for (std::size_t a = 0; a < ow[k].one_way->first_povm.size(); ++a) {
          s.first_povm.push_back(w[k] * ow[k].one_way->first_povm[a]);
          s.second.push_back(ow[k].one_way->second[a]);
        }
      }
      return Povm::from_one_way(members[0].dims, std::move(s));
    }
    tag = MeasurementClass::Sep;
  }
  Povm out = Povm::from_effects(members[0].dims, std::move(eff), tag);
  if (have_terms) out.terms = std::move(terms);
  return out;
}

/// Conjugates every effect (and local factor) by U_1 x ... x U_n.
inline Povm rotate_locally(const Povm& m, const std::vector<Matrix>& u) {
  if (static_cast<int>(u.size()) != m.dims.parties()) throw InputError("rotate: one unitary per party");
  const Matrix big = kron_all(u);
  Povm out = m;
  for (auto& e : out.effects) e = big * e * big.adjoint();
  auto rot = [&](std::vector<Matrix>& f, int j) {
    for (auto& x : f) x = u[j] * x * u[j].adjoint();
  };
  if (out.local)
    for (int j = 0; j < m.dims.parties(); ++j) rot((*out.local)[j], j);
  if (out.one_way) {
    rot(out.one_way->first_povm, out.one_way->first);
    for (auto& stage : out.one_way->second)
      for (int j = 0; j < m.dims.parties(); ++j) rot(stage[j], j);
  }
  if (out.terms)
    for (auto& e : *out.terms)
      for (auto& term : e)
        for (int j = 0; j < m.dims.parties(); ++j) term[j] = u[j] * term[j] * u[j].adjoint();
  return out;
}

/// (1/(2 ln 2)) ||p - q||_1^2 for two outcome distributions.
inline double pinsker_lower_bound(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw InputError("pinsker: distributions differ in length");
  double tv = 0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return tv * tv / (2 * kLn2);
}

inline double pinsker_lower_bound(const DensityOperator& rho, const DensityOperator& sigma, const Povm& m) {
  if (!(rho.dims() == m.dims) || !(sigma.dims() == m.dims))
    throw InputError("pinsker: POVM dims do not match the states");
  return pinsker_lower_bound(outcome_weights(m.effects, rho.matrix()), outcome_weights(m.effects, sigma.matrix()));
}

}  // namespace reent

#endif  // REENT_POVM_HPP
