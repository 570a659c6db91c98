import numpy as np

from symplectic_adhm.linalg import FieldKind, as_matrix

DESK_R = (2, 4, 6)
DESK_N = (1, 2, 3, 4, 5, 6)


def Q(rows):
    """Exact rational matrix from nested integer or "p/q" string lists."""
    return as_matrix(rows, FieldKind.RATIONAL)


def rng_for(*key) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(list(key)))


def desk_shape(i: int, rng: np.random.Generator) -> tuple[int, int, int]:
    """(r, n, k) cycling through the desk sizes with a random rank of G."""
    r = DESK_R[i % 3]
    n = DESK_N[(i // 3) % 6]
    k = int(rng.integers(0, n + 1))
    return r, n, k
