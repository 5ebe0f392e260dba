#ifndef REENT_TESTS_ORACLES_HPP
#define REENT_TESTS_ORACLES_HPP

// Independent reference computations for test expectations. Nothing here
// calls the library's solvers.

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

inline double h2(double p) {
  auto t = [](double x) { return x > 0 ? -x * std::log2(x) : 0.0; };
  return t(p) + t(1 - p);
}

inline double kl(const std::array<double, 4>& p, const std::array<double, 4>& q) {
  double s = 0;
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0) continue;
    if (q[i] <= 0) return std::numeric_limits<double>::infinity();
    s += p[i] * std::log2(p[i] / q[i]);
  }
  return s;
}

/// Brute-force min over separable Bell-diagonal q (all q_i <= 1/2) of
/// KL(p || q). Twirling makes the Bell-diagonal restriction exact for a
/// Bell-diagonal p. Step 1/n with n divisible by 6 hits thirds and sixths.
inline double bell_diagonal_ree(const std::array<double, 4>& p, int n = 240) {
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= n / 2; ++a)
    for (int b = 0; b <= n / 2 && a + b <= n; ++b)
      for (int c = 0; c <= n / 2 && a + b + c <= n; ++c) {
        const int d = n - a - b - c;
        if (2 * d > n) continue;
        best = std::min(best, kl(p, {double(a) / n, double(b) / n, double(c) / n, double(d) / n}));
      }
  return best;
}

/// Nearest (Frobenius) PPT Bell-diagonal weights to p, by grid search.
inline std::array<double, 4> nearest_ppt_bell_diagonal(const std::array<double, 4>& p, int n = 240) {
  double best = std::numeric_limits<double>::infinity();
  std::array<double, 4> arg{};
  for (int a = 0; a <= n / 2; ++a)
    for (int b = 0; b <= n / 2 && a + b <= n; ++b)
      for (int c = 0; c <= n / 2 && a + b + c <= n; ++c) {
        const int d = n - a - b - c;
        if (2 * d > n) continue;
        const std::array<double, 4> q{double(a) / n, double(b) / n, double(c) / n, double(d) / n};
        double s = 0;
        for (int i = 0; i < 4; ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
        if (s < best) best = s, arg = q;
      }
  return arg;
}

/// S(rho||sigma) in bits via the Pade/Schur matrix logarithm; both arguments
/// must be full rank.
inline double relative_entropy_full_rank(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  const Eigen::MatrixXcd lr = rho.log();
  const Eigen::MatrixXcd ls = sigma.log();
  return (rho * (lr - ls)).trace().real() / std::log(2.0);
}

// Measured KL minimized over separable two-qubit states for the product of
// six-outcome Pauli POVMs, from the exponential-cone program in
// tests/oracles/measured_kl_oracle.py.
inline constexpr double kPauliCertificateBell = 0.1949875028;
inline constexpr double kPauliCertificateWerner075 = 0.0338689205;

}  // namespace oracle

#endif  // REENT_TESTS_ORACLES_HPP
