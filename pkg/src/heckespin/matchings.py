"""Two-boundary non-crossing perfect matchings and the matchmaker action.

Sites are 0, 1, ..., n, n+1; the inner sites 1..n are each matched exactly
once, the boundary sites 0 and n+1 may carry any number of arcs (or none),
the pair {0, n+1} is forbidden, and arcs never cross.  There are exactly 2^n
such matchings; the sign string

    nu(p)_i = '-'  iff  the partner of i lies to its left

is a bijection onto {+,-}^n and fixes the basis order used everywhere here
(+ sorts before -, so the index of p is the binary number with - as 1,
aligning with the spin basis where v_+ is bit 0).

The matchmaker operators e_j re-pair sites (j with j+1, or a boundary with
its neighbour) with multiplicative weights delta_j for closed loops and
beta_0/beta_1 for arcs swallowed between the two boundaries.  Oriented
matchings, their counters and the resulting intertwiner into the spin module
live here as well.

>>> [m.nu_string() for m in enumerate_matchings(2)]
['(+,+)', '(+,-)', '(-,+)', '(-,-)']
>>> Matching.from_signs(2, (1, -1)).pairs
((1, 2),)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .numerics import ParamSet
from .spinrep import TLParams


@dataclass(frozen=True)
class Matching:
    """pairs: sorted tuple of (a, b) with a < b, sites in 0..n+1."""

    n: int
    pairs: tuple

    @classmethod
    def make(cls, n: int, pairs) -> "Matching":
        norm = tuple(sorted(tuple(sorted(p)) for p in pairs))
        m = cls(n, norm)
        m.validate()
        return m

    def validate(self):
        n = self.n
        seen_inner = {}
        for a, b in self.pairs:
            if not (0 <= a < b <= n + 1):
                raise ValueError(f"bad pair ({a},{b})")
            if (a, b) == (0, n + 1):
                raise ValueError("the two boundaries may not be paired")
            for s in (a, b):
                if 1 <= s <= n:
                    seen_inner[s] = seen_inner.get(s, 0) + 1
        if any(c != 1 for c in seen_inner.values()) or len(seen_inner) != n:
            raise ValueError("every inner site must be matched exactly once")
        ps = self.pairs
        for x in range(len(ps)):
            a, b = ps[x]
            for y in range(x + 1, len(ps)):
                c, d = ps[y]
                if a < c < b < d or c < a < d < b:
                    raise ValueError(f"arcs ({a},{b}) and ({c},{d}) cross")

    def partner(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError("partner is defined for inner sites only")
        for a, b in self.pairs:
            if a == i:
                return b
            if b == i:
                return a
        raise ValueError(f"site {i} unmatched")

    def nu(self) -> tuple:
        return tuple(
            -1 if self.partner(i) < i else 1 for i in range(1, self.n + 1)
        )

    def nu_string(self) -> str:
        return "(" + ",".join("+" if a > 0 else "-" for a in self.nu()) + ")"

    def nu_index(self) -> int:
        idx = 0
        for a in self.nu():
            idx = 2 * idx + (0 if a > 0 else 1)
        return idx

    @classmethod
    def from_signs(cls, n: int, alpha) -> "Matching":
        """The unique matching with the given sign string (stack pairing)."""
        alpha = tuple(alpha)
        if len(alpha) != n:
            raise ValueError("sign string length must be n")
        stack, pairs = [], []
        for i in range(1, n + 1):
            if alpha[i - 1] > 0:
                stack.append(i)
            elif stack:
                pairs.append((stack.pop(), i))
            else:
                pairs.append((0, i))
        pairs.extend((j, n + 1) for j in stack)
        return cls.make(n, pairs)

    @classmethod
    def from_nu_string(cls, n: int, s: str) -> "Matching":
        body = s.strip().strip("()")
        alpha = [1 if tok.strip() == "+" else -1 for tok in body.split(",")]
        return cls.from_signs(n, alpha)

    def drop_sites(self, *sites):
        """Pairs surviving after removing every pair touching the sites."""
        sites = set(sites)
        return tuple(p for p in self.pairs if not (p[0] in sites or p[1] in sites))

    def to_dict(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_dict(cls, d: dict) -> "Matching":
        return cls.make(int(d["n"]), [tuple(p) for p in d["pairs"]])


def enumerate_matchings(n: int):
    """All 2^n matchings, ordered by their sign strings (+ before -)."""
    return [
        Matching.from_signs(n, alpha)
        for alpha in itertools.product((1, -1), repeat=n)
    ]


def pty(i: int) -> int:
    return i % 2


def matchmaker_apply(j: int, vec: dict, tl: TLParams, beta0: complex, beta1: complex, n: int) -> dict:
    """Apply e_j to a linear combination {Matching: coeff}."""
    out: dict = {}

    def add(m: Matching, c: complex):
        if c != 0:
            out[m] = out.get(m, 0j) + c

    for p, c in vec.items():
        for m, w in _apply_generator(j, p, tl, beta0, beta1, n):
            add(m, c * w)
    return out


def _apply_generator(j: int, p: Matching, tl: TLParams, beta0, beta1, n: int):
    if p.n != n:
        raise ValueError("matching size mismatch")
    if j == 0:
        m1 = p.partner(1)
        if m1 == 0:
            return [(p, tl.delta0)]
        if m1 == n + 1:
            return [(Matching.make(n, p.drop_sites(1) + ((0, 1),)), beta0)]
        return [
            (Matching.make(n, p.drop_sites(1) + ((0, 1), (0, m1))), 1.0)
        ]
    if j == n:
        mn = p.partner(n)
        if mn == n + 1:
            return [(p, tl.deltan)]
        if mn == 0:
            w = beta1 if pty(n) else beta0
            return [(Matching.make(n, p.drop_sites(n) + ((n, n + 1),)), w)]
        return [
            (Matching.make(n, p.drop_sites(n) + ((n, n + 1), (mn, n + 1))), 1.0)
        ]
    if not 1 <= j < n:
        raise ValueError("generator index out of range")
    mi, mi1 = p.partner(j), p.partner(j + 1)
    if mi == j + 1:
        return [(p, tl.delta)]
    base = p.drop_sites(j, j + 1) + ((j, j + 1),)
    if mi == 0 and mi1 == 0:
        w = tl.delta0 if pty(j - 1) else 1.0
        return [(Matching.make(n, base), w)]
    if mi == n + 1 and mi1 == n + 1:
        w = tl.deltan if pty(n + 1 - j) else 1.0
        return [(Matching.make(n, base), w)]
    if mi == 0 and mi1 == n + 1:
        w = beta1 if pty(j) else beta0
        return [(Matching.make(n, base), w)]
    return [(Matching.make(n, base + (tuple(sorted((mi, mi1))),)), 1.0)]


def matchmaker_matrix(j: int, tl: TLParams, beta0, beta1, n: int) -> np.ndarray:
    """omega(e_j) as a 2^n x 2^n matrix in the sign-string basis order."""
    basis = enumerate_matchings(n)
    mat = np.zeros((2**n, 2**n), dtype=complex)
    for col, p in enumerate(basis):
        for m, w in _apply_generator(j, p, tl, beta0, beta1, n):
            mat[m.nu_index(), col] += w
    return mat


def beta_product(params: ParamSet) -> complex:
    """The constraint value of beta_0 * beta_1 for equivalence with the spin
    module; the numerator alternates with the parity of n."""
    p = params
    k, k0, kn = p.kappa, p.kappa0, p.kappan
    ps = p.psi0 * p.psin
    den = (k / k0 + k0 / k) * (k / kn + kn / k)
    if p.n % 2 == 1:
        num = (1 + k0 / kn * ps) * (1 + kn / k0 * ps)
    else:
        num = (1 - k0 * kn / k * ps) * (1 - k * ps / (k0 * kn))
    return num / (ps * den)


def matchmaker_betas(params: ParamSet):
    """The (beta_0, beta_1) split used throughout: beta_0 = 1."""
    return 1.0 + 0j, beta_product(params)


def boundary_arc_counts(p: Matching) -> dict:
    """The per-parity counters of arcs into each boundary."""
    L = {(0, 0): 0, (0, 1): 0, (p.n, 0): 0, (p.n, 1): 0}
    for a, b in p.pairs:
        if a == 0:
            L[(0, pty(b))] += 1
        elif b == p.n + 1:
            L[(p.n, pty(a))] += 1
    return L


def m_constants(params: ParamSet, beta0: complex = 1.0 + 0j) -> dict:
    """The boundary-arc weights M_{j,h}, gauge-fixed by M_{0,0} = 1.

    They satisfy the two product relations
        M_{j,0} M_{j,1} = 1/(psi_j (kappa/kappa_j + kappa_j/kappa)),
        M_{0,0} M_{n,1} = beta0 / f_n   (f_n the n-parity factor),
    which pin every value once the gauge and beta0 are chosen.
    """
    p = params
    k, k0, kn = p.kappa, p.kappa0, p.kappan
    ps = p.psi0 * p.psin
    if p.n % 2 == 1:
        fn = 1 + k0 / kn * ps
    else:
        fn = 1 - k0 * kn / k * ps
    M = {(0, 0): 1.0 + 0j}
    M[(0, 1)] = 1 / (p.psi0 * (k / k0 + k0 / k)) / M[(0, 0)]
    M[(p.n, 1)] = beta0 / fn / M[(0, 0)]
    M[(p.n, 0)] = 1 / (p.psin * (k / kn + kn / k)) / M[(p.n, 1)]
    return M


def orientations(p: Matching):
    """All 2^(#pairs) oriented refinements, as tuples of directed arcs."""
    for flips in itertools.product((False, True), repeat=len(p.pairs)):
        yield tuple(
            (b, a) if f else (a, b) for (a, b), f in zip(p.pairs, flips)
        )


def orientation_stats(n: int, arcs) -> dict:
    """Counters of one oriented matching: crossing-free rightward order
    violations, boundary counters N_{j,h}, the spin word and its index."""
    under = Matching.make(n, [tuple(sorted(a)) for a in arcs])
    # site i points outward iff (i, partner) is among the directed arcs
    arcset = set(map(tuple, arcs))
    rword = []
    for i in range(1, n + 1):
        mi = under.partner(i)
        rword.append(1 if (i, mi) in arcset else -1)
    N = {(0, 0): 0, (0, 1): 0, (n, 0): 0, (n, 1): 0}
    orient = 0
    for a, b in arcs:
        if b == 0:
            N[(0, pty(a))] += 1
        elif a == n + 1:
            N[(n, pty(n + 1 - b))] += 1
        elif 1 <= b < a <= n:
            orient += 1
    orient += N[(0, 0)] + N[(n, 0)]
    idx = 0
    for s in rword:
        idx = 2 * idx + (0 if s > 0 else 1)
    return {
        "or": orient,
        "N": N,
        "r": tuple(rword),
        "spin_index": idx,
        "matching": under,
    }


def intertwiner_Psi(params: ParamSet, limit: bool = False):
    """The equivalence from the matching module to the spin module.

    Columns follow the sign-string order of enumerate_matchings; rows are the
    spin basis.  With limit=True the weights are evaluated at the degenerate
    point psi0 = psin = 1/kappa = 0 (and the boundary-arc prefactor M drops),
    where only the all-rightward orientation of each matching survives.
    """
    n = params.n
    basis = enumerate_matchings(n)
    M = None if limit else m_constants(params, matchmaker_betas(params)[0])
    k, k0, kn = params.kappa, params.kappa0, params.kappan
    psi = {0: params.psi0, n: params.psin}
    kjs = {0: k0, n: kn}
    mat = np.zeros((2**n, 2**n), dtype=complex)
    for col, p in enumerate(basis):
        if limit:
            pref = 1.0 + 0j
        else:
            L = boundary_arc_counts(p)
            pref = 1.0 + 0j
            for key, count in L.items():
                pref *= M[key] ** count
        for arcs in orientations(p):
            st = orientation_stats(n, arcs)
            Nc = st["N"]
            if limit:
                # each summand is a monomial in 1/kappa, psi0, psin of
                # multidegree (or, N_{0,*}, N_{n,*}); only degree zero survives
                vanishing = st["or"] > 0 or any(v > 0 for v in Nc.values())
                w = 0j if vanishing else 1.0 + 0j
            else:
                w = (-k) ** (-st["or"])
                for j in (0, n):
                    w *= (-kjs[j]) ** (Nc[(j, 0)] - Nc[(j, 1)])
                    w *= psi[j] ** (Nc[(j, 0)] + Nc[(j, 1)])
            if w != 0:
                mat[st["spin_index"], col] += pref * w
    return mat
