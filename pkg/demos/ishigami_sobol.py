"""Sobol indices of the Ishigami function against their closed-form values.

Run with ``python demos/ishigami_sobol.py``.
"""
import math

import numpy as np

from porosol.sobol import Dim, InputSpace, design, evaluate_design, index_report, sobol_indices

A, B = 7.0, 0.1


def ishigami(X):
    return np.sin(X[:, 0]) + A * np.sin(X[:, 1]) ** 2 + B * X[:, 2] ** 4 * np.sin(X[:, 0])


def exact():
    pi4, pi8 = math.pi ** 4, math.pi ** 8
    d1 = B * pi4 / 5 + B * B * pi8 / 50 + 0.5
    d2 = A * A / 8
    d13 = 8 * B * B * pi8 / 225
    total = d1 + d2 + d13
    return {"S1": d1 / total, "S2": d2 / total, "S13": d13 / total}


def main():
    space = InputSpace(Dim(f"x{i}", -math.pi, math.pi) for i in (1, 2, 3))
    d = design(space, 2 ** 13, seed=0)
    res = sobol_indices(evaluate_design(d, ishigami, vectorized=True), space.names)
    print(index_report(res, threshold=0.01))
    print()
    for name, value in exact().items():
        print(f"exact {name:<6} {value:.4f}   estimated {res.get(name):.4f}")


if __name__ == "__main__":
    main()
