#ifndef REENT_PARTITION_HPP
#define REENT_PARTITION_HPP

#include <string>
#include <vector>

#include "reent/qops.hpp"

namespace reent {

/// Grouping of elementary parties into the parties a reference set refers
/// to. `{{0, 2}, {1, 3}}` on dims [2,2,2,2] is the AA':BB' cut of two qubit
/// pairs.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::vector<int>> groups) : groups_(std::move(groups)) {}

  /// Every party on its own.
  static Partition finest(const Dims& dims) {
    std::vector<std::vector<int>> g;
    for (int j = 0; j < dims.parties(); ++j) g.push_back({j});
    return Partition(std::move(g));
  }

  const std::vector<std::vector<int>>& groups() const { return groups_; }
  int size() const { return static_cast<int>(groups_.size()); }

  /// Throws unless the groups cover the parties of `dims` exactly once.
  void validate(const Dims& dims) const {
    std::vector<int> seen(static_cast<std::size_t>(dims.parties()), 0);
    if (groups_.empty()) throw InputError("partition has no groups");
    for (const auto& g : groups_) {
      if (g.empty()) throw InputError("partition contains an empty group");
      for (int p : g) {
        if (p < 0 || p >= dims.parties())
          throw InputError("partition names party " + std::to_string(p) +
                           " outside dims " + to_string(dims));
        if (seen[p]++) throw InputError("partition names a party twice");
      }
    }
    for (int s : seen)
      if (!s) throw InputError("partition does not cover every party");
  }

  /// Party order obtained by concatenating the groups.
  std::vector<int> order() const {
    std::vector<int> out;
    for (const auto& g : groups_) out.insert(out.end(), g.begin(), g.end());
    return out;
  }

  bool is_identity_order() const {
    const auto o = order();
    for (std::size_t k = 0; k < o.size(); ++k)
      if (o[k] != static_cast<int>(k)) return false;
    return true;
  }

  /// Dimensions of the coarse-grained parties.
  Dims grouped_dims(const Dims& dims) const {
    std::vector<int> out;
    for (const auto& g : groups_) out.push_back(dims.total(g));
    return Dims(out);
  }

  /// Matrix in natural party order -> matrix on the grouped system.
  Matrix to_grouped(const Matrix& m, const Dims& dims) const {
    return is_identity_order() ? m : permute_subsystems(m, dims, order());
  }

  /// Inverse of to_grouped.
  Matrix from_grouped(const Matrix& m, const Dims& dims) const {
    if (is_identity_order()) return m;
    const auto o = order();
    return permute_subsystems(m, dims.subset(o), inverse_permutation(o));
  }

  Vector from_grouped(const Vector& v, const Dims& dims) const {
    if (is_identity_order()) return v;
    const auto o = order();
    return permute_subsystems(v, dims.subset(o), inverse_permutation(o));
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::vector<int>> groups_;
};

/// sigma = sum_i w_i |a_i^1><a_i^1| x ... x |a_i^k><a_i^k| with one local
/// pure state per partition group.
struct SeparableDecomposition {
  Dims dims;
  Partition partition;
  std::vector<double> weights;
  std::vector<std::vector<Vector>> locals;  // [term][group]

  /// Product vector of term `i` in natural party order.
  Vector joint(std::size_t i) const { return partition.from_grouped(kron_all(locals[i]), dims); }

  Matrix assemble() const {
    const int n = dims.total();
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const Vector v = joint(i);
      out.noalias() += weights[i] * (v * v.adjoint());
    }
    return out;
  }

  /// Checks normalization and local dimensions; returns the assembled matrix.
  Matrix validated_assembly() const {
    partition.validate(dims);
    if (weights.size() != locals.size())
      throw InputError("separable decomposition: weight/term count mismatch");
    double total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] < -1e-12) throw InputError("separable decomposition: negative weight");
      total += weights[i];
      if (static_cast<int>(locals[i].size()) != partition.size())
        throw InputError("separable decomposition: term has wrong number of factors");
      for (int g = 0; g < partition.size(); ++g)
        if (locals[i][g].size() != dims.total(partition.groups()[g]))
          throw InputError("separable decomposition: local factor has wrong dimension");
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw InputError("separable decomposition: weights do not sum to 1");
    return assemble();
  }
};

enum class ReferenceKind { Sep, Ppt };

inline std::string to_string(ReferenceKind k) { return k == ReferenceKind::Sep ? "sep" : "ppt"; }

/// Reference set P: separable or PPT states with respect to a partition.
struct ReferenceSetSpec {
  ReferenceKind kind = ReferenceKind::Sep;
  Partition partition;

  static ReferenceSetSpec sep(const Dims& dims) {
    return {ReferenceKind::Sep, Partition::finest(dims)};
  }
  static ReferenceSetSpec ppt(const Dims& dims) {
    return {ReferenceKind::Ppt, Partition::finest(dims)};
  }
};

}  // namespace reent

#endif  // REENT_PARTITION_HPP
