"""The affine Weyl group of two-boundary type and its two actions.

Elements are pairs (u, lam) with u a signed permutation (the finite part)
and lam an integer translation vector, composed as u o tau(lam).  The group
is generated by s_0, ..., s_n acting on R^n by

    s_0: x -> (1 - x_1, x_2, ..., x_n)
    s_i: x -> x with x_i, x_{i+1} exchanged        (1 <= i <= n-1)
    s_n: x -> (x_1, ..., x_{n-1}, -x_n)

and on the torus (C*)^n by the q-deformed counterpart (act_point below),
where s_0 sends t_1 to q/t_1 and tau(mu) multiplies by q^mu.

Reduced words come from a greedy descent walk against a generic point of the
fundamental alcove {1/2 > x_1 > ... > x_n > 0}; ties always take the
smallest generator index, which makes every emitted word the lexicographically
smallest reduced word of its element.

>>> s0 = WeylElem.generator(0, 2)
>>> s1 = WeylElem.generator(1, 2)
>>> (s0 * s1 * s0 * s1) == (s1 * s0 * s1 * s0)
True
>>> tau1 = WeylElem.from_word([0, 1, 2, 1], 2)
>>> tau1.trans, tau1.is_finite()
((1, 0), False)
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .numerics import InternalDefectError, ParamSet


def _compose_signed(pu, su, pv, sv):
    """Signed permutation composition (u o v) in image convention.

    u maps e_j to su[pu[j]] e_{pu[j]}; signs are indexed by the target slot.
    """
    n = len(pu)
    perm = tuple(pu[pv[j]] for j in range(n))
    signs = tuple(su[pu[pv[j]]] * sv[pv[j]] for j in range(n))
    # reindex signs by target slot
    out_signs = [1] * n
    for j in range(n):
        out_signs[perm[j]] = signs[j]
    return perm, tuple(out_signs)


@dataclass(frozen=True)
class WeylElem:
    """One element u o tau(trans); perm[j] is the 0-based image of slot j,
    signs are indexed by the target slot, trans is the translation part."""

    perm: tuple
    signs: tuple
    trans: tuple

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "WeylElem":
        return cls(tuple(range(n)), (1,) * n, (0,) * n)

    @classmethod
    def generator(cls, i: int, n: int) -> "WeylElem":
        """The simple reflection s_i, 0 <= i <= n."""
        if i == 0:
            signs = (-1,) + (1,) * (n - 1)
            return cls(tuple(range(n)), signs, (-1,) + (0,) * (n - 1))
        if i == n:
            return cls(tuple(range(n)), (1,) * (n - 1) + (-1,), (0,) * n)
        if 0 < i < n:
            perm = list(range(n))
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
            return cls(tuple(perm), (1,) * n, (0,) * n)
        raise ValueError(f"generator index {i} out of range for n={n}")

    @classmethod
    def translation(cls, mu, n: int) -> "WeylElem":
        return cls(tuple(range(n)), (1,) * n, tuple(int(m) for m in mu))

    @classmethod
    def longest_w0(cls, n: int) -> "WeylElem":
        """The longest element of the finite group; acts as -1 and is central."""
        return cls(tuple(range(n)), (-1,) * n, (0,) * n)

    def is_identity(self) -> bool:
        return self == WeylElem.identity(self.n)

    def is_finite(self) -> bool:
        return all(m == 0 for m in self.trans)

    def finite_part(self) -> "WeylElem":
        return WeylElem(self.perm, self.signs, (0,) * self.n)

    def linear_apply(self, x):
        """The finite part acting linearly (translation ignored)."""
        out = [0] * self.n
        for j in range(self.n):
            out[self.perm[j]] = self.signs[self.perm[j]] * x[j]
        return tuple(out)

    def affine_apply(self, x):
        """The full affine-linear action u(x + trans) on R^n."""
        shifted = tuple(a + b for a, b in zip(x, self.trans))
        return self.linear_apply(shifted)

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        if self.n != other.n:
            raise ValueError("rank mismatch")
        # (u, a)(v, b) = (uv, v^{-1}(a) + b)
        perm, signs = _compose_signed(self.perm, self.signs, other.perm, other.signs)
        vinv = other.inverse_finite()
        a = vinv.linear_apply(self.trans)
        trans = tuple(x + y for x, y in zip(a, other.trans))
        return WeylElem(perm, signs, trans)

    def inverse_finite(self) -> "WeylElem":
        inv_perm = [0] * self.n
        for j in range(self.n):
            inv_perm[self.perm[j]] = j
        # signs of the inverse live on the source slots of the original
        inv_signs = tuple(self.signs[self.perm[i]] for i in range(self.n))
        return WeylElem(tuple(inv_perm), inv_signs, (0,) * self.n)

    def inverse(self) -> "WeylElem":
        u_inv = self.inverse_finite()
        lam = self.finite_part().linear_apply(self.trans)
        return WeylElem(u_inv.perm, u_inv.signs, tuple(-x for x in lam))

    @classmethod
    def from_word(cls, letters, n: int) -> "WeylElem":
        out = cls.identity(n)
        for a in letters:
            out = out * cls.generator(a, n)
        return out

    def to_dict(self) -> dict:
        return {
            "perm": [p + 1 for p in self.perm],
            "signs": list(self.signs),
            "trans": list(self.trans),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WeylElem":
        return cls(
            tuple(p - 1 for p in d["perm"]),
            tuple(d["signs"]),
            tuple(d["trans"]),
        )

    def __repr__(self):
        return f"WeylElem(perm={self.perm}, signs={self.signs}, trans={self.trans})"


def act_point(w: WeylElem, point, params: ParamSet):
    """The q-deformed action on (C*)^n.

    tau(mu) multiplies by q^mu, the finite part permutes coordinates and
    inverts those with negative sign.

    >>> import numpy as np
    >>> from .numerics import sample_generic
    >>> p = sample_generic(1, 2)
    >>> t = (0.3 + 0.1j, 1.2 - 0.4j)
    >>> s0t = act_point(WeylElem.generator(0, 2), t, p)
    >>> abs(s0t[0] - p.q / t[0]) < 1e-14 and s0t[1] == t[1]
    True
    """
    q = params.q
    shifted = [q**m * t for m, t in zip(w.trans, point)]
    out = [0j] * w.n
    for j in range(w.n):
        i = w.perm[j]
        out[i] = shifted[j] if w.signs[i] == 1 else 1 / shifted[j]
    return tuple(out)


def _alcove_point(n: int):
    c = 0.4 / (n + 1) + 1e-4 * math.pi
    return tuple((n + 1 - i) * c for i in range(1, n + 1))


def _descents(w: WeylElem):
    """Left descent set of w, read off the image of a generic alcove point."""
    x = w.affine_apply(_alcove_point(w.n))
    out = []
    if x[0] > 0.5:
        out.append(0)
    for i in range(1, w.n):
        if x[i - 1] < x[i]:
            out.append(i)
    if x[-1] < 0.0:
        out.append(w.n)
    return out

def reduced_word(w: WeylElem):
    """Lexicographically smallest reduced word of w as a list of indices.

    >>> reduced_word(WeylElem.longest_w0(1))
    [1]
    >>> reduced_word(WeylElem.translation((1,), 1))
    [0, 1]
    """
    letters = []
    cur = w
    guard = 0
    while not cur.is_identity():
        ds = _descents(cur)
        if not ds:
            raise InternalDefectError("non-identity element with empty descent set")
        a = ds[0]
        letters.append(a)
        cur = WeylElem.generator(a, cur.n) * cur
        guard += 1
        if guard > 10_000:
            raise InternalDefectError("descent walk failed to terminate")
    return letters


def length(w: WeylElem) -> int:
    return len(reduced_word(w))


@functools.lru_cache(maxsize=8)
def _finite_group_table(n: int):
    """All of W_0 with lengths, by breadth-first search from the identity.

    Returns {(perm, signs): length}; 2^n n! elements, capped at n <= 6.
    """
    if n > 6:
        raise ValueError("finite Weyl group enumeration is capped at n = 6")
    gens = [WeylElem.generator(i, n) for i in range(1, n + 1)]
    start = WeylElem.identity(n)
    table = {(start.perm, start.signs): 0}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                v = w * g
                key = (v.perm, v.signs)
                if key not in table:
                    table[key] = table[(w.perm, w.signs)] + 1
                    nxt.append(v)
        frontier = nxt
    return table


def finite_group(n: int):
    """All elements of W_0 as WeylElems."""
    return [
        WeylElem(perm, signs, (0,) * n) for perm, signs in _finite_group_table(n)
    ]


def finite_length(w: WeylElem) -> int:
    if not w.is_finite():
        raise ValueError("finite_length needs a finite element")
    return _finite_group_table(w.n)[(w.perm, w.signs)]


def parabolic_subgroup(I, n: int):
    """The subgroup of W_0 generated by s_i, i in I (subset of 1..n)."""
    I = sorted(set(I))
    if any(not 1 <= i <= n for i in I):
        raise ValueError("parabolic index out of range")
    gens = [WeylElem.generator(i, n) for i in I]
    seen = {}
    start = WeylElem.identity(n)
    seen[(start.perm, start.signs)] = start
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                v = w * g
                key = (v.perm, v.signs)
                if key not in seen:
                    seen[key] = v
                    nxt.append(v)
        frontier = nxt
    return list(seen.values())


def longest_parabolic(I, n: int) -> "WeylElem":
    """Longest element w_{0,I} of the parabolic subgroup."""
    elems = parabolic_subgroup(I, n)
    return max(elems, key=finite_length)


def min_coset_reps(I, n: int):
    """Minimal-length representatives of W_0 / W_{0,I}.

    Sorted by (length, reduced word); w qualifies iff every i in I lengthens
    it on the right.

    >>> [reduced_word(w) for w in min_coset_reps([1], 2)]
    [[], [2], [1, 2], [2, 1, 2]]
    """
    I = sorted(set(I))
    table = _finite_group_table(n)
    reps = []
    for w in finite_group(n):
        lw = table[(w.perm, w.signs)]
        ok = True
        for i in I:
            v = w * WeylElem.generator(i, n)
            if table[(v.perm, v.signs)] <= lw:
                ok = False
                break
        if ok:
            reps.append(w)
    keyed = [(finite_length(w), reduced_word(w), w) for w in reps]
    keyed.sort(key=lambda kk: (kk[0], kk[1]))
    return [w for _, _, w in keyed]


def w0_coset_element(I, n: int) -> "WeylElem":
    """w_0^I = w_0 w_{0,I}^{-1}, the longest minimal coset representative."""
    w0 = WeylElem.longest_w0(n)
    return w0 * longest_parabolic(I, n).inverse()


def star_involution(I, n: int):
    """The index involution i -> i* with w_0^I s_i = s_{i*} w_0^I.

    Returns (I_star, mapping).

    >>> star_involution([1, 2], 3)
    ([1, 2], {1: 2, 2: 1})
    """
    I = sorted(set(I))
    wI = w0_coset_element(I, n)
    wI_inv = wI.inverse()
    mapping = {}
    for i in I:
        conj = wI * WeylElem.generator(i, n) * wI_inv
        found = None
        for j in range(1, n + 1):
            if conj == WeylElem.generator(j, n):
                found = j
                break
        if found is None:
            raise InternalDefectError(f"conjugate of s_{i} by w_0^I is not simple")
        mapping[i] = found
    return sorted(mapping.values()), mapping


def tau_word(i: int, n: int):
    """Letters of the standard word for the translation tau_i.

    >>> tau_word(1, 2), tau_word(2, 2)
    ([0, 1, 2, 1], [1, 0, 1, 2])
    """
    if not 1 <= i <= n:
        raise ValueError("translation index out of range")
    return (
        list(range(i - 1, 0, -1))
        + [0]
        + list(range(1, n))
        + [n]
        + list(range(n - 1, i - 1, -1))
    )


def weight_orbit(I, lam, n: int):
    """Orbit facts for a weight: True iff s_i lam = lam for every i in I."""
    for i in I:
        g = WeylElem.generator(i, n)
        if g.linear_apply(lam) != tuple(lam):
            return False
    return True
