"""Slow, independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy


def sylvester_resultant(f, g):
    """Res(f, g) as the determinant of the Sylvester matrix (descending rows)."""
    F = list(reversed(f.coeffs))
    G = list(reversed(g.coeffs))
    m, n = len(F) - 1, len(G) - 1
    N = m + n
    rows = [[0] * i + F + [0] * (N - m - 1 - i) for i in range(n)]
    rows += [[0] * i + G + [0] * (N - n - 1 - i) for i in range(m)]
    return int(sympy.Matrix(rows).det())


def _mulmod(a, b, f):
    n = len(f) - 1
    prod = [Fraction(0)] * (2 * n - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        prod[k] = 0
        for i in range(n):
            prod[k - n + i] -= c * f[i]
    return prod[:n]


def _mult_matrix(x, f):
    n = len(f) - 1
    cols = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        cols.append(_mulmod(x, e, f))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _charpoly(M):
    """Faddeev-LeVerrier: coefficients c_0..c_n (monic) of det(X - M)."""
    n = len(M)
    I = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        A = [[sum(M[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        Mk = [[A[i][j] + c[n - k + 1] * I[i][j] for j in range(n)] for i in range(n)]
        AM = [[sum(M[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return c


def _integral(x, f):
    return all(v.denominator == 1 for v in _charpoly(_mult_matrix(x, f)))


def _hnf_rows(rows, n):
    mat = sympy.Matrix(rows)
    from sympy.matrices.normalforms import hermite_normal_form

    h = hermite_normal_form(mat.T).T
    return [list(h.row(i)) for i in range(h.rows) if any(h.row(i))]


def index_valuation_bruteforce(f, p):
    """v_p of [O_K : Z[theta]] by searching for integral elements v/p."""
    fc = list(f.coeffs)
    n = len(fc) - 1
    den = 1
    basis = [[int(i == j) for j in range(n)] for i in range(n)]  # numerators over den
    v = 0
    while True:
        found = None
        for cs in itertools.product(range(p), repeat=n):
            if not any(cs):
                continue
            num = [sum(c * basis[i][j] for i, c in enumerate(cs)) for j in range(n)]
            x = [Fraction(a, den * p) for a in num]
            if _integral(x, fc):
                found = num
                break
        if found is None:
            return v
        rows = [[a * p for a in b] for b in basis] + [found]
        basis = _hnf_rows(rows, n)
        den *= p
        v += 1
