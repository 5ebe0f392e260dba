"""Convex-programming oracle for inf over two-qubit separable sigma of
KL(M(rho) || M(sigma)), M the product of two six-outcome Pauli POVMs.

For two qubits separable = PPT, so the infimum is an exponential-cone
program with a PSD and a PT constraint. Prints the value in bits."""
import itertools
import sys

import cvxpy as cp
import numpy as np


def pauli6():
    s = 1 / np.sqrt(2)
    vecs = [
        np.array([1, 0]), np.array([0, 1]),
        s * np.array([1, 1]), s * np.array([1, -1]),
        s * np.array([1, 1j]), s * np.array([1, -1j]),
    ]
    return [np.outer(v, v.conj()) / 3 for v in vecs]


def partial_transpose_b(x):
    blocks = [[x[2 * i:2 * i + 2, 2 * j:2 * j + 2] for j in range(2)] for i in range(2)]
    return cp.bmat([[blocks[i][j].T for j in range(2)] for i in range(2)])


def oracle(rho):
    effects = [np.kron(a, b) for a, b in itertools.product(pauli6(), pauli6())]
    p = np.array([np.real(np.trace(e @ rho)) for e in effects])
    sigma = cp.Variable((4, 4), hermitian=True)
    q = cp.hstack([cp.real(cp.trace(e @ sigma)) for e in effects])
    keep = p > 1e-15
    objective = cp.sum(cp.rel_entr(p[keep], q[keep])) / np.log(2)
    constraints = [sigma >> 0, partial_transpose_b(sigma) >> 0, cp.real(cp.trace(sigma)) == 1]
    problem = cp.Problem(cp.Minimize(objective), constraints)
    problem.solve(solver=cp.CLARABEL)
    return problem.value


def bell():
    v = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return np.outer(v, v)


def werner(lam):
    # weight lam on phi+, the rest spread over the other Bell states
    return lam * bell() + (1 - lam) * (np.eye(4) - bell()) / 3


if __name__ == "__main__":
    values = {"bell": oracle(bell()), "werner0.75": oracle(werner(0.75))}
    for k, v in values.items():
        print(f"{k} {v:.10f}")
    if len(sys.argv) == 3:
        # compare against a frozen value: measured_kl_oracle.py NAME VALUE
        diff = abs(values[sys.argv[1]] - float(sys.argv[2]))
        print(f"difference {diff:.3g}")
        sys.exit(0 if diff < 1e-6 else 1)
