#ifndef REENT_STATES_HPP
#define REENT_STATES_HPP

#include <array>
#include <cmath>

#include "reent/qops.hpp"

namespace reent {

/// Bell basis (Phi+, Phi-, Psi+, Psi-) as two-qubit vectors.
inline std::array<Vector, 4> bell_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  std::array<Vector, 4> b;
  for (auto& v : b) v = Vector::Zero(4);
  b[0](0) = h, b[0](3) = h;
  b[1](0) = h, b[1](3) = -h;
  b[2](1) = h, b[2](2) = h;
  b[3](1) = h, b[3](2) = -h;
  return b;
}

/// Phi+ = (|00> + |11>)/sqrt(2).
inline DensityOperator bell_state() { return DensityOperator::pure(bell_basis()[0], Dims{2, 2}); }

/// Maximally entangled state on d x d.
inline DensityOperator maximally_entangled(int d) {
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return DensityOperator::pure(v, Dims{d, d});
}

/// (|0...0> + |1...1>)/sqrt(2) on n qubits.
inline DensityOperator ghz_state(int n) {
  const int d = 1 << n;
  Vector v = Vector::Zero(d);
  v(0) = 1.0;
  v(d - 1) = 1.0;
  return DensityOperator::pure(v, Dims(std::vector<int>(static_cast<std::size_t>(n), 2)));
}

/// Bell-diagonal state with weights on (Phi+, Phi-, Psi+, Psi-).
inline DensityOperator bell_diagonal(const std::array<double, 4>& w) {
  const auto b = bell_basis();
  Matrix m = Matrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) m += w[k] * projector(b[k]);
  return DensityOperator(m, Dims{2, 2});
}

/// W(lambda): Bell-diagonal state with weight lambda on Phi+ and the rest
/// spread evenly, lambda Phi+ + (1 - lambda)(I - Phi+)/3.
inline DensityOperator werner_state(double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw InputError("werner_state: lambda must lie in [0, 1]");
  const double r = (1 - lambda) / 3;
  return bell_diagonal({lambda, r, r, r});
}

/// The five product vectors of the 3x3 Tiles unextendible product basis.
inline std::array<Vector, 5> tiles_vectors() {
  auto q = [](double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
  };
  const double h = 1.0 / std::sqrt(2.0), t = 1.0 / std::sqrt(3.0);
  return {kron(q(1, 0, 0), q(h, -h, 0)), kron(q(h, -h, 0), q(0, 0, 1)),
          kron(q(0, 0, 1), q(0, h, -h)), kron(q(0, h, -h), q(1, 0, 0)),
          kron(q(t, t, t), q(t, t, t))};
}

/// Uniform mixture on the complement of the Tiles UPB: PPT yet entangled.
inline DensityOperator tiles_state() {
  Matrix m = Matrix::Identity(9, 9);
  for (const auto& v : tiles_vectors()) m -= projector(v);
  return DensityOperator(m / 4.0, Dims{3, 3});
}

}  // namespace reent

#endif  // REENT_STATES_HPP
