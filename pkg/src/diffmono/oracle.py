"""Numeric distinct-root oracle: Aberth-Ehrlich simultaneous iteration plus clustering.

Independent of the exact squarefree machinery: it only sees multiprecision
floating coefficients.  A root of multiplicity ``k`` is resolved to roughly
``eps**(1/k)``, so the working precision grows with the degree to keep every
cluster far inside the clustering tolerance.
"""

from __future__ import annotations

import gmpy2
from gmpy2 import mpc, mpfr

from .exact import Polynomial

CLUSTER_TOL = 1e-6
STEP_TOL = 1e-18


def aberth_roots(p: Polynomial, bits: int, maxsteps: int = 5000) -> list[complex]:
    """All ``p.degree`` roots of ``p`` (with repetition), rounded to Python complex."""
    n = p.degree
    if n < 1:
        return []
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        c = [
            mpc(mpfr(x.re.numerator) / x.re.denominator, mpfr(x.im.numerator) / x.im.denominator)
            for x in p.coefficients
        ]
        lead = c[-1]
        c = [x / lead for x in c]
        dc = [j * c[j] for j in range(1, n + 1)]
        radius = 1 + max(abs(x) for x in c[:-1]) if n > 0 else mpfr(1)
        two_pi = 2 * gmpy2.const_pi()
        # start on a circle of the Cauchy radius, rotated off the real axis
        z = [radius * gmpy2.exp(mpc(0, two_pi * j / n + mpfr("0.4"))) for j in range(n)]
        tol = mpfr(STEP_TOL) * radius
        for _ in range(maxsteps):
            biggest = mpfr(0)
            for i in range(n):
                zi = z[i]
                val = c[n]
                for a in reversed(c[:-1]):
                    val = val * zi + a
                if val == 0:
                    continue
                der = dc[-1]
                for a in reversed(dc[:-1]):
                    der = der * zi + a
                if der == 0:
                    z[i] = zi + tol
                    biggest = max(biggest, tol)
                    continue
                ratio = val / der
                s = mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (zi - z[j])
                step = ratio / (1 - ratio * s)
                z[i] = zi - step
                biggest = max(biggest, abs(step))
            if biggest < tol:
                break
        return [complex(x) for x in z]


def cluster_count(points: list[complex], tol: float = CLUSTER_TOL) -> int:
    """Connected components when points closer than ``tol`` are linked."""
    n = len(points)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(a + 1, n):
            if abs(points[a] - points[b]) < tol:
                parent[find(a)] = find(b)
    return len({find(a) for a in range(n)})


def numeric_distinct_roots(p: Polynomial, tol: float = CLUSTER_TOL, bits: int | None = None) -> int:
    if p.degree < 1:
        return 0
    if bits is None:
        bits = max(256, 50 * p.degree)
    return cluster_count(aberth_roots(p, bits), tol)
