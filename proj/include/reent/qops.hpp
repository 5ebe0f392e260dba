#ifndef REENT_QOPS_HPP
#define REENT_QOPS_HPP

// Dense operator algebra on multipartite Hilbert spaces.
//
// Subsystem ordering is row-major Kronecker: party 0 is the slowest-varying
// index, so |i_0 i_1 ... i_{n-1}> has flat index sum_j i_j * stride_j with
// stride_j = d_{j+1} * ... * d_{n-1}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace reent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kLn2 = 0.69314718055994530942;
inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kSupportCutoff = 1e-9;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (wrong dimensions, invalid states, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to reach its tolerance within its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Local dimensions d_0..d_{n-1} of a multipartite system.
class Dims {
 public:
  Dims() = default;
  Dims(std::initializer_list<int> d) : Dims(std::vector<int>(d)) {}
  explicit Dims(std::vector<int> d) : d_(std::move(d)) {
    if (d_.empty()) throw InputError("dimension vector must name at least one party");
    for (int v : d_)
      if (v < 1) throw InputError("local dimensions must be >= 1");
  }

  int parties() const { return static_cast<int>(d_.size()); }
  int operator[](int j) const { return d_.at(static_cast<std::size_t>(j)); }
  int total() const {
    return std::accumulate(d_.begin(), d_.end(), 1, std::multiplies<>());
  }
  const std::vector<int>& values() const { return d_; }

  /// Product of the dimensions of the listed parties.
  int total(const std::vector<int>& parties) const {
    int t = 1;
    for (int p : parties) t *= (*this)[p];
    return t;
  }

  Dims subset(const std::vector<int>& parties) const {
    std::vector<int> out;
    out.reserve(parties.size());
    for (int p : parties) out.push_back((*this)[p]);
    return Dims(out);
  }

  Dims concat(const Dims& other) const {
    std::vector<int> out = d_;
    out.insert(out.end(), other.d_.begin(), other.d_.end());
    return Dims(out);
  }

  friend bool operator==(const Dims&, const Dims&) = default;

 private:
  std::vector<int> d_;
};

inline std::string to_string(const Dims& dims) {
  std::string s = "[";
  for (int j = 0; j < dims.parties(); ++j) {
    if (j) s += ",";
    s += std::to_string(dims[j]);
  }
  return s + "]";
}

/// Square complex matrix carrying its subsystem structure.
struct Operator {
  Matrix matrix;
  Dims dims;

  Operator() = default;
  Operator(Matrix m, Dims d) : matrix(std::move(m)), dims(std::move(d)) {
    if (matrix.rows() != matrix.cols())
      throw InputError("operator matrix must be square");
    if (matrix.rows() != dims.total())
      throw InputError("operator side length " + std::to_string(matrix.rows()) +
                       " does not match dims " + to_string(dims));
  }
};

inline Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) / 2.0; }

inline double hermiticity_error(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.
struct Spectrum {
  RealVector values;
  Matrix vectors;  // columns are eigenvectors
};

/// Spectral decomposition of the Hermitian part of `h`.
/// Throws InputError if `h` deviates from Hermitian by more than `tol`.
inline Spectrum spectral_decompose(const Matrix& h, double tol = 1e-8) {
  if (h.rows() != h.cols()) throw InputError("spectral_decompose: matrix not square");
  if (h.size() > 0 && hermiticity_error(h) > tol)
    throw InputError("spectral_decompose: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  const Eigen::Index n = h.rows();
  Spectrum s{RealVector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    s.values(k) = es.eigenvalues()(n - 1 - k);
    s.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return s;
}

inline Spectrum spectral_decompose(const Operator& h, double tol = 1e-8) {
  return spectral_decompose(h.matrix, tol);
}

inline RealVector eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

inline double min_eigenvalue(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  return eigenvalues(h)(0);
}

/// Rebuild U diag(f(lambda)) U^dagger from a spectrum.
template <class F>
Matrix apply_function(const Spectrum& s, F&& f) {
  RealVector fv(s.values.size());
  for (Eigen::Index k = 0; k < fv.size(); ++k) fv(k) = f(s.values(k));
  return s.vectors * fv.cast<Complex>().asDiagonal() * s.vectors.adjoint();
}

class DensityOperator {
 public:
  DensityOperator() = default;

  /// Validates Hermiticity, positivity and unit trace at `tol`.
  DensityOperator(Matrix m, Dims d, double tol = kStateTolerance)
      : op_(std::move(m), std::move(d)) {
    if (hermiticity_error(op_.matrix) > tol)
      throw InputError("density operator is not Hermitian (hermiticity invariant)");
    op_.matrix = hermitian_part(op_.matrix);
    const double tr = op_.matrix.trace().real();
    if (std::abs(tr - 1.0) > tol)
      throw InputError("density operator trace " + std::to_string(tr) +
                       " differs from 1 (trace invariant)");
    const double lmin = min_eigenvalue(op_.matrix);
    if (lmin < -tol)
      throw InputError("density operator has negative eigenvalue " + std::to_string(lmin) +
                       " (positivity invariant)");
  }

  explicit DensityOperator(Operator op, double tol = kStateTolerance)
      : DensityOperator(std::move(op.matrix), std::move(op.dims), tol) {}

  /// Normalizes a positive operator by its trace before validation.
  static DensityOperator from_unnormalized(const Matrix& m, const Dims& d,
                                           double tol = kStateTolerance) {
    const double tr = m.trace().real();
    if (!(tr > 0)) throw InputError("cannot normalize an operator with non-positive trace");
    return DensityOperator(m / tr, d, tol);
  }

  static DensityOperator pure(const Vector& psi, const Dims& d) {
    const Vector v = psi / psi.norm();
    return DensityOperator(v * v.adjoint(), d);
  }

  static DensityOperator maximally_mixed(const Dims& d) {
    const int n = d.total();
    return DensityOperator(Matrix::Identity(n, n) / static_cast<double>(n), d);
  }

  const Matrix& matrix() const { return op_.matrix; }
  const Dims& dims() const { return op_.dims; }
  const Operator& op() const { return op_; }
  int dim() const { return static_cast<int>(op_.matrix.rows()); }

 private:
  Operator op_;
};

namespace detail {

inline std::vector<int> strides(const Dims& dims) {
  std::vector<int> s(static_cast<std::size_t>(dims.parties()), 1);
  for (int j = dims.parties() - 2; j >= 0; --j) s[j] = s[j + 1] * dims[j + 1];
  return s;
}

inline void check_party_set(const Dims& dims, const std::vector<int>& parties) {
  std::set<int> seen;
  for (int p : parties) {
    if (p < 0 || p >= dims.parties())
      throw InputError("party index " + std::to_string(p) + " out of range for dims " +
                       to_string(dims));
    if (!seen.insert(p).second) throw InputError("party index repeated");
  }
}

inline std::vector<int> complement(int n, const std::vector<int>& parties) {
  std::vector<int> out;
  for (int j = 0; j < n; ++j)
    if (std::find(parties.begin(), parties.end(), j) == parties.end()) out.push_back(j);
  return out;
}

// Flat offsets contributed by all joint values of `parties`, in row-major
// order over those parties.
inline std::vector<int> offsets(const Dims& dims, const std::vector<int>& parties) {
  const auto st = strides(dims);
  std::vector<int> out{0};
  for (int p : parties) {
    std::vector<int> next;
    next.reserve(out.size() * static_cast<std::size_t>(dims[p]));
    for (int base : out)
      for (int i = 0; i < dims[p]; ++i) next.push_back(base + i * st[p]);
    out = std::move(next);
  }
  return out;
}

}  // namespace detail

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Matrix kron_all(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

inline Vector kron_all(const std::vector<Vector>& factors) {
  Vector out = Vector::Ones(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

inline Operator tensor_product(const Operator& a, const Operator& b) {
  return Operator(kron(a.matrix, b.matrix), a.dims.concat(b.dims));
}

inline DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(kron(a.matrix(), b.matrix()), a.dims().concat(b.dims()), 1e-9);
}

inline Vector basis_vector(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

inline Matrix projector(const Vector& v) { return v * v.adjoint(); }

/// Partial trace keeping `keep` (in ascending party order).
inline Matrix partial_trace(const Matrix& m, const Dims& dims, std::vector<int> keep) {
  if (keep.empty()) throw InputError("partial_trace: keep set must be nonempty");
  detail::check_party_set(dims, keep);
  std::sort(keep.begin(), keep.end());
  const auto traced = detail::complement(dims.parties(), keep);
  const auto ko = detail::offsets(dims, keep);
  const auto to = detail::offsets(dims, traced);
  const Eigen::Index dk = static_cast<Eigen::Index>(ko.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex acc = 0;
      for (int t : to) acc += m(ko[r] + t, ko[c] + t);
      out(r, c) = acc;
    }
  return out;
}

inline DensityOperator partial_trace(const DensityOperator& rho, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  Matrix out = partial_trace(rho.matrix(), rho.dims(), keep);
  return DensityOperator(std::move(out), rho.dims().subset(keep), 1e-9);
}

/// Partial transpose on every party in `parties`.
inline Matrix partial_transpose(const Matrix& m, const Dims& dims,
                                const std::vector<int>& parties) {
  detail::check_party_set(dims, parties);
  const auto st = detail::strides(dims);
  const int n = dims.total();
  Matrix out(n, n);
  std::vector<int> rd(static_cast<std::size_t>(dims.parties()));
  std::vector<int> cd(rd.size());
  for (int r = 0; r < n; ++r) {
    for (int j = 0, x = r; j < dims.parties(); ++j) {
      rd[j] = x / st[j];
      x %= st[j];
    }
    for (int c = 0; c < n; ++c) {
      for (int j = 0, x = c; j < dims.parties(); ++j) {
        cd[j] = x / st[j];
        x %= st[j];
      }
      int r2 = r, c2 = c;
      for (int p : parties) {
        r2 += (cd[p] - rd[p]) * st[p];
        c2 += (rd[p] - cd[p]) * st[p];
      }
      out(r2, c2) = m(r, c);
    }
  }
  return out;
}

inline Operator partial_transpose(const Operator& a, int party) {
  return Operator(partial_transpose(a.matrix, a.dims, {party}), a.dims);
}

/// Reorders tensor factors: new party k is old party perm[k].
inline Matrix permute_subsystems(const Matrix& m, const Dims& dims, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != dims.parties())
    throw InputError("permutation length does not match number of parties");
  detail::check_party_set(dims, perm);
  const auto src = detail::offsets(dims, perm);  // row-major over new order
  const int n = dims.total();
  Matrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = m(src[r], src[c]);
  return out;
}

inline Vector permute_subsystems(const Vector& v, const Dims& dims, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != dims.parties())
    throw InputError("permutation length does not match number of parties");
  detail::check_party_set(dims, perm);
  const auto src = detail::offsets(dims, perm);
  Vector out(v.size());
  for (Eigen::Index r = 0; r < v.size(); ++r) out(r) = v(src[r]);
  return out;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = static_cast<int>(k);
  return inv;
}

/// Base-2 logarithm restricted to the support of a positive operator.
struct SupportLog {
  Matrix log;      // log2 on the support, zero on the kernel
  Matrix support;  // orthogonal projector onto the support
  int rank = 0;
};

inline SupportLog matrix_log_on_support(const Matrix& rho, double cutoff = kSupportCutoff) {
  const Spectrum s = spectral_decompose(rho);
  SupportLog out;
  out.log = apply_function(s, [&](double x) { return x > cutoff ? std::log2(x) : 0.0; });
  out.support = apply_function(s, [&](double x) { return x > cutoff ? 1.0 : 0.0; });
  for (Eigen::Index k = 0; k < s.values.size(); ++k) out.rank += s.values(k) > cutoff;
  return out;
}

inline SupportLog matrix_log_on_support(const DensityOperator& rho) {
  return matrix_log_on_support(rho.matrix());
}

inline double trace_norm(const Matrix& a) {
  if (hermiticity_error(a) < 1e-12) return eigenvalues(a).cwiseAbs().sum();
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

inline double trace_norm(const Operator& a) { return trace_norm(a.matrix); }

/// Von Neumann entropy in bits.
inline double von_neumann_entropy(const Matrix& rho) {
  const RealVector ev = eigenvalues(rho);
  double s = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev(k) > 1e-15) s -= ev(k) * std::log2(ev(k));
  return s;
}

inline double von_neumann_entropy(const DensityOperator& rho) {
  return von_neumann_entropy(rho.matrix());
}

/// Tr(A B) for Hermitian A, B without forming the product.
inline double trace_product(const Matrix& a, const Matrix& b) {
  return (a.transpose().array() * b.array()).sum().real();
}

}  // namespace reent

#endif  // REENT_QOPS_HPP
