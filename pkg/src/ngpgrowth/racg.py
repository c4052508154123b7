"""Closed-form geodesic growth of link-regular right-angled Coxeter groups.

Everything here is driven by the link profile ell = (l_0, ..., l_d): l_0 is
the vertex count and l_k the common link size of k-cliques.  The counting
numbers N[m, k] are available both in closed form and from their
recurrence; the series itself comes from the signed chain sums M[i, j] or,
independently, from the p/q polynomial recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod
from typing import Sequence

from .algebra import ONE, Polynomial, RationalFunction, Z, expand, poly, solve_linear
from .errors import HypothesisError
from .graphs import LinkProfile

NTable = dict[tuple[int, int], int]


def as_profile(ell) -> LinkProfile:
    """Accept a LinkProfile or a raw sequence; check l_d = 0 and nonnegativity."""
    if isinstance(ell, LinkProfile):
        values = tuple(ell.ell)
    else:
        values = tuple(int(x) for x in ell)
    if len(values) < 1:
        raise HypothesisError("link profile must contain at least l_0")
    if any(x < 0 for x in values):
        raise HypothesisError(f"link profile entries must be nonnegative: {values}")
    if values[-1] != 0:
        raise HypothesisError(f"maximal cliques have empty links, so l_d must be 0: {values}")
    return LinkProfile(len(values) - 1, values)


def n_table_closed(ell) -> NTable:
    p = as_profile(ell)
    l, d = p.ell, p.d
    out: NTable = {}
    for m in range(1, d + 1):
        for k in range(m + 1):
            if k == m:
                out[m, k] = 1
            elif k == m - 1:
                out[m, k] = l[m - 1] - l[m] - 1
            else:
                s = sum(comb(m - k, j - k) * (-1) ** (j - k) * l[j] for j in range(k, m + 1))
                out[m, k] = prod(l[k + 1 : m]) * s
    return out


def n_table_recurrence(ell) -> NTable:
    p = as_profile(ell)
    l, d = p.ell, p.d
    out: NTable = {}
    for m in range(1, d + 1):
        out[m, m] = 1
        out[m, m - 1] = l[m - 1] - l[m] - 1
        for k in range(m - 2, -1, -1):
            out[m, k] = l[m - 1] * out[m - 1, k] - l[k + 1] * out[m, k + 1]
    return out


@dataclass
class RacgCoefficients:
    d: int
    ell: LinkProfile
    N_table: NTable
    b_table: NTable
    M_table: NTable
    a: list[int]


def racg_coefficients(ell) -> RacgCoefficients:
    p = as_profile(ell)
    d, l = p.d, p.ell
    N = n_table_closed(p)
    b = {(m, k): comb(m, k) * n for (m, k), n in N.items()}
    a = [prod(l[:m]) for m in range(d + 1)]

    @lru_cache(maxsize=None)
    def chains(weight: int, lo: int) -> int:
        # signed sum over chains lo <= s1 < t1 <= s2 < ... <= d of total length weight
        total = 1 if weight == 0 else 0
        for s in range(lo, d):
            for t in range(s + 1, min(d, s + weight) + 1):
                total -= b[t, s] * chains(weight - (t - s), t)
        return total

    M = {(i, j): chains(i - j, j) for i in range(d + 1) for j in range(i + 1)}
    return RacgCoefficients(d, p, N, b, M, a)


def racg_growth(ell) -> RationalFunction:
    """Series as sum_i (sum_j a_j M[i, j]) z^i over sum_i M[i, 0] z^i."""
    c = racg_coefficients(ell)
    num = Polynomial(sum(c.a[j] * c.M_table[i, j] for j in range(i + 1)) for i in range(c.d + 1))
    den = Polynomial(c.M_table[i, 0] for i in range(c.d + 1))
    return RationalFunction(num, den)


def pq_polynomials(ell) -> tuple[list[Polynomial], list[Polynomial]]:
    """p_1..p_{d+1} and q_1..q_{d+1}, returned as lists indexed from 1 (index 0 unused)."""
    c = racg_coefficients(ell)
    d, b, a = c.d, c.b_table, c.a
    p: list[Polynomial] = [Polynomial(), ONE]
    q: list[Polynomial] = [Polynomial(), ONE]
    for m in range(1, d + 1):
        pn, qn = p[m], q[m] + Polynomial.monomial(a[m], m)
        for k in range(m):
            zk = Polynomial.monomial(b[m, k], m - k)
            pn = pn - zk * p[k + 1]
            qn = qn - zk * q[k + 1]
        p.append(pn)
        q.append(qn)
    return p, q


def racg_growth_via_pq(ell) -> RationalFunction:
    p, q = pq_polynomials(ell)
    return RationalFunction(q[-1], p[-1])


def racg_system(ell) -> tuple[list[list[Polynomial]], list[Polynomial]]:
    """Linear system in G_0..G_d over ordered cliques.

    G_0 = 1 + z G_1 and G_m = a_m + z sum_k C(m,k) N[m,k] G_{k+1}, G_{d+1} = 0.
    """
    c = racg_coefficients(ell)
    d = c.d
    n = d + 1
    rows = [[Polynomial.constant(1 if i == j else 0) for j in range(n)] for i in range(n)]
    rhs = [poly(c.a[m]) for m in range(n)]
    if d >= 1:
        rows[0][1] = -Z
    for m in range(1, n):
        for k in range(m + 1):
            if k + 1 <= d:
                rows[m][k + 1] = rows[m][k + 1] - Z * c.b_table[m, k]
    return rows, rhs


def racg_growth_via_system(ell) -> list[RationalFunction]:
    """G_0..G_d by direct elimination; G_0 is the growth series."""
    rows, rhs = racg_system(ell)
    return solve_linear(rows, rhs)


def corollary_d4(ell) -> RationalFunction:
    """Hard-coded q/p for clique number 4, the known closed form kept unmodified.

    Its denominator disagrees with racg_growth in the z^3 coefficient (see README).
    """
    p = as_profile(ell)
    if p.d != 4:
        raise HypothesisError(f"the d = 4 formula needs clique number 4, got d = {p.d}")
    l0, l1, l2, l3, _ = p.ell
    q = Polynomial(
        [
            1,
            -l1 - l2 - l3 + 10,
            l1 * l2 + l1 * l3 + l2 * l3 - 7 * l1 - 5 * l2 - 3 * l3 + 35,
            -l1 * l2 * l3 + 4 * l1 * l2 + l2 * l3 - 12 * l1 - 4 * l2 - 2 * l3 + 50,
            24,
        ]
    )
    pp = Polynomial(
        [
            1,
            -l0 - l1 - l2 - l3 + 10,
            l0 * l1 + l0 * l2 + l1 * l2 + l0 * l3 + l1 * l3 + l2 * l3
            - 9 * l0 - 7 * l1 - 5 * l2 - 3 * l3 + 35,
            -l0 * l1 * l2 - l0 * l1 * l3 - l0 * l2 * l3 - l1 * l2 * l3
            + 7 * l0 * l1 + 4 * l0 * l2 + 4 * l1 * l2 + 2 * l0 * l3 + l2 * l3
            - 26 * l0 - 12 * l1 - 4 * l2 - 2 * l3 - 50,
            l0 * l1 * l2 * l3 - 4 * l0 * l1 * l2 + 12 * l0 * l1 - 24 * l0 + 24,
        ]
    )
    return RationalFunction(q, pp)


def gm_residuals(ell, grouped: Sequence, order: int) -> list[list[int]]:
    """Truncated residuals of the G_m equations for given series G_0..G_d.

    grouped[m] may be a RationalFunction or a coefficient list; each residual
    is returned as coefficients up to z^(order-1).
    """
    c = racg_coefficients(ell)
    d = c.d

    def coeffs(x):
        if isinstance(x, RationalFunction):
            return list(expand(x, order))
        return list(x)[: order + 1]

    g = [coeffs(x) for x in grouped] + [[0] * (order + 1)]
    out = []
    for m in range(d + 1):
        rhs = [0] * order
        rhs[0] = c.a[m]
        terms = [(1, 1)] if m == 0 else [(c.b_table[m, k], k + 1) for k in range(m + 1)]
        for coef, idx in terms:
            for n in range(1, order):
                rhs[n] += coef * g[idx][n - 1]
        out.append([g[m][n] - rhs[n] for n in range(order)])
    return out
