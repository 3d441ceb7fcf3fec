"""Shared random generators for the test suite."""
from __future__ import annotations

import numpy as np

from choifactor import PairSumMap


def cgauss(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_hermitian(rng, n):
    g = cgauss(rng, n, n)
    return (g + g.conj().T) / 2


def random_psd(rng, n):
    g = cgauss(rng, n, n)
    return g @ g.conj().T


def random_unit(rng, n):
    v = cgauss(rng, n)
    return v / np.linalg.norm(v)


def random_map(rng, n, k):
    return PairSumMap(n, tuple((cgauss(rng, n, n), cgauss(rng, n, n)) for _ in range(k)))


def random_cp_map(rng, n, k):
    vs = [cgauss(rng, n, n) for _ in range(k)]
    return PairSumMap(n, tuple((v.conj().T, v) for v in vs))


def random_hp_map(rng, n, k):
    # real combination of conjugations: Hermiticity-preserving, sign-mixed
    vs = [cgauss(rng, n, n) for _ in range(k)]
    ts = rng.standard_normal(k)
    return PairSumMap(n, tuple((t * v.conj().T, v) for t, v in zip(ts, vs)))


def random_selfadjoint_terms(rng, n, k_pairs, with_diagonal=False):
    # terms plus their adjoints, optionally one manifestly self-adjoint term
    terms = []
    for _ in range(k_pairs):
        a, b = cgauss(rng, n, n), cgauss(rng, n, n)
        terms.append((a, b))
        terms.append((b.conj().T, a.conj().T))
    if with_diagonal:
        a = cgauss(rng, n, n)
        terms.append((a, a.conj().T))
    return tuple(terms)


def matrix_unit(n, i, j):
    u = np.zeros((n, n), dtype=np.complex128)
    u[i, j] = 1.0
    return u
