"""Exact nullspace computation for the rational-function fitter.

Two strategies, both with exact results:

* small systems: straight fraction-managed Gauss-Jordan over Fraction;
* large systems: row reduction modulo several 31-bit primes (vectorized with
  numpy int64), Chinese-remainder combination, rational reconstruction, and
  a final exact big-integer verification M v = 0 of every basis vector.

A nullity of zero modulo any prime already proves the exact nullspace is
trivial, so failed fit degrees are rejected quickly; reconstructed vectors
are never trusted without the exact verification step.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import List, Sequence, Tuple

import numpy as np

_MODULAR_THRESHOLD = 48  # columns; below this the pure-Fraction path is used
_MAX_PRIMES = 24


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin for n < 3.2e9 with bases 2, 3, 5, 7.
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below_2_31(count: int) -> List[int]:
    primes = []
    n = 2**31 - 1
    while len(primes) < count:
        if _is_prime(n):
            primes.append(n)
        n -= 2
    return primes


_PRIMES = _primes_below_2_31(_MAX_PRIMES)


def _clear_row(row: Sequence[Fraction | int]) -> List[int]:
    fracs = [Fraction(x) for x in row]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _canonical_vector(vec: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Scale to primitive integers with the first nonzero entry positive."""
    lcm = 1
    for f in vec:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-x for x in ints]
            break
    return tuple(Fraction(v) for v in ints)


def _nullspace_fraction(int_rows: List[List[int]], ncols: int) -> List[Tuple[Fraction, ...]]:
    m = [[Fraction(x) for x in row] for row in int_rows]
    nrows = len(m)
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(_canonical_vector(v))
    return basis


def _rref_mod(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    m = matrix % p
    nrows, ncols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        rows = np.nonzero(m[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            m[rows] = (m[rows] - np.outer(m[rows, c], m[r])) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def _crt_combine(residues: List[int], primes: List[int]) -> Tuple[int, int]:
    x, mod = 0, 1
    for r, p in zip(residues, primes):
        inv = pow(mod % p, p - 2, p)
        x = x + mod * ((r - x) % p * inv % p)
        mod *= p
    return x % mod, mod


def _rational_reconstruct(x: int, mod: int) -> Fraction | None:
    bound = isqrt(mod // 2)
    r0, r1 = mod, x % mod
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 > bound or abs(t1) > bound or t1 == 0 or gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


def _verify(int_rows: List[List[int]], vec: Sequence[Fraction]) -> bool:
    lcm = 1
    for f in vec:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in vec]
    return all(sum(a * v for a, v in zip(row, ints)) == 0 for row in int_rows)


def _nullspace_modular(int_rows: List[List[int]], ncols: int) -> List[Tuple[Fraction, ...]]:
    group_pivots: List[int] | None = None
    group_primes: List[int] = []
    group_bases: List[np.ndarray] = []
    for p in _PRIMES:
        matrix = np.array([[x % p for x in row] for row in int_rows], dtype=np.int64)
        rref, pivots = _rref_mod(matrix, p)
        nullity = ncols - len(pivots)
        if nullity == 0:
            return []  # full column rank mod p implies full rank over Q
        if group_pivots is None or len(pivots) > len(group_pivots):
            # higher rank wins: primes showing lower rank were unlucky
            group_pivots, group_primes, group_bases = pivots, [], []
        if pivots != group_pivots:
            continue
        group_primes.append(p)
        group_bases.append(rref)
        basis = _try_reconstruct(int_rows, ncols, group_pivots, group_primes, group_bases)
        if basis is not None:
            return basis
    # modular attempts exhausted; fall back to the exact slow path
    return _nullspace_fraction(int_rows, ncols)


def _try_reconstruct(
    int_rows: List[List[int]],
    ncols: int,
    pivots: List[int],
    primes: List[int],
    rrefs: List[np.ndarray],
) -> List[Tuple[Fraction, ...]] | None:
    free = [c for c in range(ncols) if c not in pivots]
    basis: List[Tuple[Fraction, ...]] = []
    for fc in free:
        vec: List[Fraction] = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            residues = [int(r[i, fc]) for r in rrefs]
            if len(primes) == 1:
                x, mod = residues[0], primes[0]
            else:
                x, mod = _crt_combine(residues, primes)
            val = _rational_reconstruct((-x) % mod, mod)
            if val is None:
                return None
            vec[pc] = val
        if not _verify(int_rows, vec):
            return None
        basis.append(_canonical_vector(vec))
    return basis


def solve_nullspace(rows: Sequence[Sequence[Fraction | int]]) -> List[Tuple[Fraction, ...]]:
    """Exact basis of {v : M v = 0}, canonically scaled; empty list if trivial.

    Basis vectors are scaled to primitive integer entries with the first
    nonzero entry positive, so results are reproducible across runs.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("matrix must have at least one row")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("matrix rows must all have the same length")
    int_rows = [_clear_row(r) for r in rows]
    int_rows = [r for r in int_rows if any(r)]
    if not int_rows:
        ident = [
            tuple(Fraction(1 if i == j else 0) for j in range(ncols))
            for i in range(ncols)
        ]
        return ident
    if ncols <= _MODULAR_THRESHOLD:
        return _nullspace_fraction(int_rows, ncols)
    return _nullspace_modular(int_rows, ncols)
