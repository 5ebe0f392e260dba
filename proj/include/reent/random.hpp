#ifndef REENT_RANDOM_HPP
#define REENT_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "reent/partition.hpp"
#include "reent/qops.hpp"

namespace reent {

/// Seeded generator used for every random draw in the library.
///
/// Uniform and normal variates are derived from raw mt19937_64 output by
/// fixed formulas, so streams are identical across standard libraries.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64/box-muller/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  Complex complex_normal() { return {normal(), normal()}; }

  int uniform_int(int n) { return static_cast<int>(uniform() * n); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 mix of (seed, index); independent substreams per instance.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) g(r, c) = rng.complex_normal();
  return g;
}

inline Vector random_vector(int dim, Rng& rng) {
  Vector v(dim);
  for (int k = 0; k < dim; ++k) v(k) = rng.complex_normal();
  return v / v.norm();
}

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
inline Matrix random_unitary(int dim, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    if (a > 0) q.col(k) *= d / a;
  }
  return q;
}

/// Random isometry C^in -> C^out (out >= in).
inline Matrix random_isometry(int in, int out, Rng& rng) {
  if (out < in) throw InputError("isometry output dimension must be >= input dimension");
  return random_unitary(out, rng).leftCols(in);
}

/// Ginibre-induced mixed state of the given rank.
inline DensityOperator random_state(const Dims& dims, int rank, Rng& rng) {
  const int d = dims.total();
  if (rank < 1 || rank > d)
    throw InputError("random_state: rank must lie in [1, " + std::to_string(d) + "]");
  const Matrix g = ginibre(d, rank, rng);
  const Matrix m = g * g.adjoint();
  return DensityOperator(m / m.trace().real(), dims, 1e-9);
}

inline DensityOperator random_pure(const Dims& dims, Rng& rng) {
  return DensityOperator::pure(random_vector(dims.total(), rng), dims);
}

/// Product of independent full-rank local states.
inline DensityOperator random_product(const Dims& dims, Rng& rng) {
  Matrix m = Matrix::Identity(1, 1);
  for (int j = 0; j < dims.parties(); ++j)
    m = kron(m, random_state(Dims{dims[j]}, dims[j], rng).matrix());
  return DensityOperator(m, dims, 1e-9);
}

struct SeparableSample {
  DensityOperator state;
  SeparableDecomposition witness;
};

/// Mixture of `terms` random product pure states across `partition`.
inline SeparableSample random_separable(const Dims& dims, const Partition& partition, int terms,
                                        Rng& rng) {
  partition.validate(dims);
  if (terms < 1) throw InputError("random_separable: need at least one term");
  SeparableDecomposition dec{dims, partition, {}, {}};
  double total = 0;
  for (int i = 0; i < terms; ++i) {
    const double w = -std::log(1.0 - rng.uniform());
    dec.weights.push_back(w);
    total += w;
    std::vector<Vector> loc;
    for (const auto& g : partition.groups()) loc.push_back(random_vector(dims.total(g), rng));
    dec.locals.push_back(std::move(loc));
  }
  for (double& w : dec.weights) w /= total;
  Matrix m = dec.assemble();
  return {DensityOperator(hermitian_part(m), dims, 1e-9), std::move(dec)};
}

inline SeparableSample random_separable(const Dims& dims, Rng& rng) {
  return random_separable(dims, Partition::finest(dims), 2 * dims.total(), rng);
}

/// Channel given by Kraus operators sum_k K_k rho K_k^dagger.
struct Channel {
  std::vector<Matrix> kraus;
  Dims in;
  Dims out;

  Matrix apply(const Matrix& rho) const {
    Matrix r = Matrix::Zero(out.total(), out.total());
    for (const auto& k : kraus) r.noalias() += k * rho * k.adjoint();
    return r;
  }

  DensityOperator apply(const DensityOperator& rho) const {
    return DensityOperator(hermitian_part(apply(rho.matrix())), out, 1e-9);
  }
};

/// Stinespring channel rho -> Tr_E(V rho V^dagger) for a random isometry
/// V : C^d_in -> C^d_out (x) C^env.
inline Channel random_channel(const Dims& in, const Dims& out, int env, Rng& rng) {
  const Matrix v = random_isometry(in.total(), out.total() * env, rng);
  Channel ch{{}, in, out};
  for (int e = 0; e < env; ++e) {
    Matrix k(out.total(), in.total());
    for (int r = 0; r < out.total(); ++r) k.row(r) = v.row(r * env + e);
    ch.kraus.push_back(std::move(k));
  }
  return ch;
}

}  // namespace reent

#endif  // REENT_RANDOM_HPP
