"""Random stable symplectic data with prescribed rank of G.

Data are generated directly in block normal form with ``G = diag(1_k, 0)``:

    A = [[A0, 0], [a, alpha]],  B = [[B0, 0], [0, beta]],  I = [[I0], [X]].

The equations then reduce to ``A0, B0`` symmetric with ``[A0, B0] = I0 K I0^T``,
``[alpha, beta] = 0`` and ``a B0 - beta a = X K I0^T``.
"""

from __future__ import annotations

import numpy as np

from .adhm import SymplecticDatum, SymplecticForm, act, is_stable, random_gauge
from .errors import GenerationFailed, NoSolution
from .linalg import (FieldKind, as_matrix, convert, identity, inverse, is_nonderogatory, polynomial_in,
                     spectra_disjoint, sylvester_solve, zeros)
from .linalg.matrices import block_diag

ATTEMPTS = 32


def _small_ints(rng, shape, bound=2):
    return as_matrix(rng.integers(-bound, bound + 1, size=shape).tolist() if np.prod(shape) else
                     np.zeros(shape, dtype=int).tolist(), FieldKind.RATIONAL, shape=shape)


def _symmetric_nonderogatory(rng, k: int):
    for _ in range(ATTEMPTS):
        m = rng.integers(-2, 3, size=(k, k))
        m = np.triu(m) + np.triu(m, 1).T
        A0 = as_matrix(m.tolist(), FieldKind.RATIONAL, shape=(k, k))
        if is_nonderogatory(A0):
            return A0
    raise GenerationFailed("symmetric nonderogatory A0", ATTEMPTS)


def _cycle_generator(rng, m: int):
    """A nonderogatory m x m rational matrix with distinct eigenvalues, some possibly irrational."""
    pool = [int(v) for v in rng.permutation(np.arange(-4, 5))]
    owner = []
    blocks = []
    quads = set()
    while len(owner) < m:
        if m - len(owner) >= 2 and rng.random() < 0.25:
            c, d = int(rng.integers(-2, 3)), int(rng.choice([2, 3, 5, -2, -3]))
            if (c, d) in quads:
                continue
            quads.add((c, d))
            blocks.append(as_matrix([[c, -d], [1, c]], FieldKind.RATIONAL))
        else:
            blocks.append(as_matrix([[pool.pop()]], FieldKind.RATIONAL))
        owner.extend([len(blocks)] * blocks[-1].shape[0])
    T = block_diag(*blocks, kind=FieldKind.RATIONAL) if m else zeros(0, 0)
    for j in range(m):
        for l in range(j):
            if owner[j] != owner[l] and rng.random() < 0.5:
                T[j, l] = T[j, l] + int(rng.integers(-1, 2))
    P = random_gauge(m, rng).g if m else identity(0)
    return P @ T @ inverse(P)


def _sample_pair(rng, m: int):
    """Commuting (alpha, beta), polynomials in a single nonderogatory matrix, with distinct joint pairs."""
    M = _cycle_generator(rng, m)
    p = [int(rng.integers(-2, 3)), int(rng.choice([1, -1, 2]))]
    q = [int(rng.integers(-2, 3)), int(rng.integers(-1, 2)), int(rng.integers(-1, 2))]
    return polynomial_in(M, p), polynomial_in(M, q)


def random_datum(r: int, n: int, k: int, seed=None, *, mix: bool = False, gauge: bool = False,
                 field: FieldKind = FieldKind.RATIONAL) -> SymplecticDatum:
    """A valid stable datum with rank(G) = k in block normal form.

    ``mix`` applies a lower block-unitriangular gauge (keeps G, makes the
    lower-left block of B nonzero); ``gauge`` applies a general unimodular gauge.
    """
    if r < 2 or r % 2:
        raise ValueError("r must be even and at least 2")
    if not 0 <= k <= n:
        raise ValueError("k must satisfy 0 <= k <= n")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    omega = SymplecticForm.darboux(r)
    K = omega.inverse
    m = n - k
    from .deform.tools import solve_bracket_symmetric

    for _ in range(ATTEMPTS):
        A0 = _symmetric_nonderogatory(rng, k)
        I0 = _small_ints(rng, (k, r))
        C0 = I0 @ K @ I0.T
        B0 = solve_bracket_symmetric(A0, C0) if k else zeros(0, 0)
        B0 = B0 + polynomial_in(A0, [int(rng.integers(-2, 3)), int(rng.integers(-1, 2))]) if k else B0
        for _ in range(ATTEMPTS):
            alpha, beta = _sample_pair(rng, m)
            if spectra_disjoint(B0, beta):
                break
        else:
            raise GenerationFailed("disjoint spectra of B0 and beta", ATTEMPTS)
        X = _small_ints(rng, (m, r))
        try:
            a = sylvester_solve(B0, beta, X @ K @ I0.T)
        except NoSolution:  # pragma: no cover - excluded by disjoint spectra
            continue
        A = block_diag(A0, alpha)
        A[k:, :k] = a
        B = block_diag(B0, beta)
        I = np.concatenate([I0, X], axis=0)
        G = block_diag(identity(k), zeros(m, m))
        d = SymplecticDatum(A, B, I, G, omega)
        if not is_stable(d):
            continue
        if mix and k and m:
            g = identity(n)
            g[k:, :k] = _small_ints(rng, (m, k), 1)
            d = act(g, d)
        if gauge:
            d = act(random_gauge(n, rng), d)
        return d.to_field(field) if field is not FieldKind.RATIONAL else d
    raise GenerationFailed("stability", ATTEMPTS)


__all__ = ["random_datum"]
