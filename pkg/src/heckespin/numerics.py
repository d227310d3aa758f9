"""Scalar parameters, exact Laurent-polynomial arithmetic, and generic sampling.

Everything downstream runs over one immutable bundle of nonzero complex
scalars (kappa0, kappa, kappan, upsilon0, upsilonn, psi0, psin) plus a rank n
and a square root of q.  q itself is always recovered as q_sqrt**2 so the two
can never drift apart.

Laurent polynomials in t_1..t_n are dicts mapping integer exponent tuples to
complex coefficients.  The only division ever performed on them is by the
three reflection denominators

    1 - q*t_1**-2,      1 - t_i/t_{i+1},      1 - t_n**2,

and those quotients are assembled term by term from geometric sums, so the
exponent arithmetic is exact; floats only enter through the coefficients.
``divided_difference`` additionally re-multiplies by the denominator and
checks the product, raising ``InternalDefectError`` on any mismatch.
"""

from __future__ import annotations

import cmath
import dataclasses
import hashlib
import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TOLERANCE = 1e-9

# attempts before sample_generic gives up on a seed
_MAX_DRAWS = 64
# moduli of the sampled scalars and of the probe points
_SCALAR_BAND = (0.6, 1.6)
_PROBE_BAND = (0.7, 1.4)
_PROBE_COUNT = 32
_DENOM_FLOOR = 1e-3
_GAMMA_DEGREE = 4
_GAMMA_GAP = 1e-6


class GenericityError(RuntimeError):
    """Sampling could not reach a parameter point clear of all denominators."""


class RefusalError(RuntimeError):
    """A precondition of the requested construction does not hold."""


class InternalDefectError(RuntimeError):
    """An internal exactness invariant failed; this is a bug, not bad input."""


class PoleProximityError(RuntimeError):
    """A spectral-parameter evaluation landed too close to a pole."""


def eta(x) -> int:
    """Sign function with eta(0) = -1."""
    return 1 if x > 0 else -1


@dataclass(frozen=True)
class ScalarPolicy:
    """Numeric regime: float64 by default, mpmath at >= 50 digits otherwise."""

    mode: str = "double"
    tolerance: float = DEFAULT_TOLERANCE
    digits: int = 50

    def __post_init__(self):
        if self.mode not in ("double", "extended"):
            raise ValueError(f"unknown scalar mode {self.mode!r}")
        if self.mode == "extended" and self.digits < 50:
            raise ValueError("extended mode runs at no fewer than 50 digits")


def _c2d(z: complex) -> dict:
    return {"im": float(z.imag), "re": float(z.real)}


def _d2c(d: dict) -> complex:
    return complex(d["re"], d["im"])


_SCALAR_FIELDS = (
    "q_sqrt",
    "kappa0",
    "kappa",
    "kappan",
    "upsilon0",
    "upsilonn",
    "psi0",
    "psin",
    "kappa_sqrt",
)


@dataclass(frozen=True)
class ParamSet:
    """The full scalar bundle at a fixed rank n.

    kappa_sqrt is a chosen square root of kappa (it appears on its own only
    inside the twist matrix of the transfer trace); the constructor refuses a
    root that does not square back to kappa.
    """

    n: int
    q_sqrt: complex
    kappa0: complex
    kappa: complex
    kappan: complex
    upsilon0: complex
    upsilonn: complex
    psi0: complex
    psin: complex
    kappa_sqrt: complex

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rank n must be at least 1")
        for name in _SCALAR_FIELDS:
            z = getattr(self, name)
            if z == 0:
                raise ValueError(f"{name} must be nonzero")
        if abs(self.kappa_sqrt**2 - self.kappa) > 1e-12 * max(1.0, abs(self.kappa)):
            raise ValueError("kappa_sqrt**2 does not match kappa")

    @property
    def q(self) -> complex:
        return self.q_sqrt**2

    def kappa_j(self, j: int) -> complex:
        """The deformation scalar attached to generator index j in 0..n."""
        if j == 0:
            return self.kappa0
        if j == self.n:
            return self.kappan
        if 0 < j < self.n:
            return self.kappa
        raise ValueError(f"generator index {j} out of range for n={self.n}")

    def upsilon_j(self, j: int) -> complex:
        if j == 0:
            return self.upsilon0
        if j == self.n:
            return self.upsilonn
        raise ValueError(f"no upsilon attached to index {j}")

    def psi_j(self, j: int) -> complex:
        if j == 0:
            return self.psi0
        if j == self.n:
            return self.psin
        raise ValueError(f"no psi attached to index {j}")

    def replace(self, **kw) -> "ParamSet":
        return dataclasses.replace(self, **kw)

    def to_dict(self) -> dict:
        d = {"n": self.n}
        for name in _SCALAR_FIELDS:
            d[name] = _c2d(getattr(self, name))
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "ParamSet":
        kw = {"n": int(d["n"])}
        for name in _SCALAR_FIELDS:
            kw[name] = _d2c(d[name])
        return cls(**kw)

    @classmethod
    def from_json(cls, s: str) -> "ParamSet":
        return cls.from_dict(json.loads(s))

    def fingerprint(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()


class LaurentPoly:
    """Laurent polynomial in n_vars variables, exponent-dict representation.

    >>> f = LaurentPoly.monomial(2, (1, 0)) + LaurentPoly.monomial(2, (0, -1), 2.0)
    >>> sorted(f.terms)
    [(0, -1), (1, 0)]
    >>> f.eval((2.0, 4.0))
    (2.5+0j)
    """

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms=None):
        self.n_vars = int(n_vars)
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != self.n_vars:
                    raise ValueError("exponent arity does not match n_vars")
                c = complex(c)
                if c != 0:
                    clean[tuple(int(e) for e in exp)] = c
        self.terms = clean

    @classmethod
    def zero(cls, n_vars: int) -> "LaurentPoly":
        return cls(n_vars)

    @classmethod
    def one(cls, n_vars: int) -> "LaurentPoly":
        return cls(n_vars, {(0,) * n_vars: 1.0})

    @classmethod
    def monomial(cls, n_vars: int, exp, coeff=1.0) -> "LaurentPoly":
        return cls(n_vars, {tuple(exp): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp) -> complex:
        return self.terms.get(tuple(exp), 0j)

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def l1_degree(self) -> int:
        return max((sum(abs(e) for e in exp) for exp in self.terms), default=0)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.n_vars != other.n_vars:
            raise ValueError("arity mismatch")
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0j) + c
        return LaurentPoly(self.n_vars, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def scale(self, z: complex) -> "LaurentPoly":
        z = complex(z)
        return LaurentPoly(self.n_vars, {e: z * c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return laurent_mul(self, other)
        return self.scale(other)

    __rmul__ = scale

    def shift(self, exp) -> "LaurentPoly":
        """Multiply by the monomial t**exp."""
        exp = tuple(exp)
        return LaurentPoly(
            self.n_vars,
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()},
        )

    def chop(self, tol: float) -> "LaurentPoly":
        return LaurentPoly(
            self.n_vars, {e: c for e, c in self.terms.items() if abs(c) > tol}
        )

    def eval(self, point) -> complex:
        point = tuple(point)
        if len(point) != self.n_vars:
            raise ValueError("point arity mismatch")
        total = 0j
        for exp, c in self.terms.items():
            v = c
            for t, e in zip(point, exp):
                if e:
                    v *= t**e
            total += v
        return total

    def eval_mp(self, point, digits: int = 50):
        """Evaluate with mpmath at the given working precision."""
        import mpmath

        with mpmath.workdps(digits):
            total = mpmath.mpc(0)
            for exp, c in self.terms.items():
                v = mpmath.mpc(c)
                for t, e in zip(point, exp):
                    if e:
                        v *= mpmath.mpc(t) ** e
                total += v
            return total

    # reflection substitutions; these are the only variable changes the
    # operators downstream ever need
    def act_s0(self, q: complex) -> "LaurentPoly":
        """f(t) -> f(q/t_1, t_2, ..., t_n)."""
        terms = {}
        for exp, c in self.terms.items():
            m = exp[0]
            new = (-m,) + exp[1:]
            terms[new] = terms.get(new, 0j) + c * q**m
        return LaurentPoly(self.n_vars, terms)

    def act_si(self, i: int) -> "LaurentPoly":
        """f(t) -> f with t_i and t_{i+1} exchanged, 1 <= i <= n-1."""
        if not 1 <= i <= self.n_vars - 1:
            raise ValueError("middle reflection index out of range")
        a, b = i - 1, i
        terms = {}
        for exp, c in self.terms.items():
            e = list(exp)
            e[a], e[b] = e[b], e[a]
            e = tuple(e)
            terms[e] = terms.get(e, 0j) + c
        return LaurentPoly(self.n_vars, terms)

    def act_sn(self) -> "LaurentPoly":
        """f(t) -> f(t_1, ..., t_{n-1}, 1/t_n)."""
        terms = {}
        for exp, c in self.terms.items():
            new = exp[:-1] + (-exp[-1],)
            terms[new] = terms.get(new, 0j) + c
        return LaurentPoly(self.n_vars, terms)

    def act_sj(self, j: int, q: complex) -> "LaurentPoly":
        if j == 0:
            return self.act_s0(q)
        if j == self.n_vars:
            return self.act_sn()
        return self.act_si(j)

    def to_dict(self) -> dict:
        items = sorted(self.terms.items())
        return {
            "n_vars": self.n_vars,
            "terms": [
                {"exp": list(e), "im": float(c.imag), "re": float(c.real)}
                for e, c in items
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "LaurentPoly":
        terms = {
            tuple(t["exp"]): complex(t["re"], t["im"]) for t in d["terms"]
        }
        return cls(int(d["n_vars"]), terms)

    @classmethod
    def from_json(cls, s: str) -> "LaurentPoly":
        return cls.from_dict(json.loads(s))

    def __repr__(self):
        return f"LaurentPoly(n_vars={self.n_vars}, {len(self.terms)} terms)"


def laurent_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    if f.n_vars != g.n_vars:
        raise ValueError("arity mismatch")
    terms = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            terms[e] = terms.get(e, 0j) + c1 * c2
    return LaurentPoly(f.n_vars, terms)


def _denominator(j: int, n: int, q: complex) -> LaurentPoly:
    if j == 0:
        return LaurentPoly(n, {(0,) * n: 1.0, (-2,) + (0,) * (n - 1): -q})
    if j == n:
        return LaurentPoly(n, {(0,) * n: 1.0, (0,) * (n - 1) + (2,): -1.0})
    e = [0] * n
    e[j - 1], e[j] = 1, -1
    return LaurentPoly(n, {(0,) * n: 1.0, tuple(e): -1.0})


def divided_difference(
    f: LaurentPoly, j: int, params: ParamSet, verify: bool = True
) -> LaurentPoly:
    """The exact quotient (f o s_j - f) / denom_j, denominators as in the
    module docstring.

    Assembled monomial by monomial from geometric sums, never by pointwise
    division.  With verify=True the quotient is multiplied back and compared
    against f o s_j - f; disagreement raises InternalDefectError.

    >>> p = ParamSet(n=1, q_sqrt=1.2, kappa0=0.7, kappa=1.1, kappan=0.9,
    ...              upsilon0=1.3, upsilonn=0.8, psi0=1.0, psin=1.0,
    ...              kappa_sqrt=1.1**0.5)
    >>> g = divided_difference(LaurentPoly.monomial(1, (1,)), 1, p)
    >>> g.terms
    {(-1,): (1+0j)}
    """
    n = f.n_vars
    if n != params.n:
        raise ValueError("polynomial arity does not match ParamSet rank")
    if not 0 <= j <= n:
        raise ValueError("reflection index out of range")
    q = params.q
    terms: dict = {}

    def add(exp, c):
        terms[exp] = terms.get(exp, 0j) + c

    for exp, c in f.terms.items():
        if j == 0:
            m = exp[0]
            # (u^m - 1)/(1 - u) with u = q/t_1^2; each u^l sends t_1^m to
            # q^l t_1^(m-2l)
            if m > 0:
                for l in range(m):
                    add((m - 2 * l,) + exp[1:], -c * q**l)
            elif m < 0:
                for l in range(m, 0):
                    add((m - 2 * l,) + exp[1:], c * q**l)
        elif j == n:
            m = exp[-1]
            # here the denominator is 1 - t_n^2 = -u^{-1}(1 - u) for
            # u = t_n^{-2}, which shifts the geometric sum by one step
            if m > 0:
                for l in range(1, m + 1):
                    add(exp[:-1] + (m - 2 * l,), c)
            elif m < 0:
                for l in range(m + 1, 1):
                    add(exp[:-1] + (m - 2 * l,), -c)
        else:
            a, b = j - 1, j
            d = exp[a] - exp[b]
            # (u^{-d} - 1)/(1 - u) with u = t_j/t_{j+1}
            if d < 0:
                for l in range(-d):
                    e = list(exp)
                    e[a] += l
                    e[b] -= l
                    add(tuple(e), -c)
            elif d > 0:
                for l in range(-d, 0):
                    e = list(exp)
                    e[a] += l
                    e[b] -= l
                    add(tuple(e), c)

    g = LaurentPoly(n, terms)
    if verify:
        lhs = laurent_mul(g, _denominator(j, n, q))
        rhs = f.act_sj(j, q) - f
        scale = max(lhs.max_abs(), rhs.max_abs(), 1.0)
        if (lhs - rhs).max_abs() > 1e-12 * scale:
            raise InternalDefectError(
                f"divided difference failed re-multiplication check at j={j}"
            )
    return g


def l1_ball(n: int, radius: int):
    """All integer vectors mu in Z^n with sum |mu_i| <= radius, sorted."""
    out = []
    for exp in itertools.product(range(-radius, radius + 1), repeat=n):
        if sum(abs(e) for e in exp) <= radius:
            out.append(exp)
    out.sort()
    return out


def _gamma_lambda_raw(lam, params: ParamSet):
    """Spectral vector attached to an integer weight; eta(0) = -1 throughout."""
    n = params.n
    q = params.q
    k0n = params.kappa0 * params.kappan
    out = []
    for i in range(n):
        s = 0
        for jj in range(n):
            if jj == i:
                continue
            if jj < i:
                s += eta(lam[jj] - lam[i])
            else:
                s -= eta(lam[i] - lam[jj])
            s -= eta(lam[i] + lam[jj])
        out.append(q ** lam[i] * k0n ** (-eta(lam[i])) * params.kappa**s)
    return tuple(out)


def _gamma_distinct(params: ParamSet, radius: int = _GAMMA_DEGREE) -> bool:
    lams = l1_ball(params.n, radius)
    gam = np.array([_gamma_lambda_raw(l, params) for l in lams], dtype=complex)
    m = len(lams)
    for start in range(0, m, 64):
        block = gam[start : start + 64]
        # max-abs coordinate distance from each block row to every row
        dist = np.max(np.abs(block[:, None, :] - gam[None, :, :]), axis=2)
        for r in range(block.shape[0]):
            dist[r, start + r] = np.inf
        if dist.min() <= _GAMMA_GAP:
            return False
    return True


def _kbar_trace_denominator(p: ParamSet) -> complex:
    """Tr(theta kbar(kappa^2) theta) as needed by the transfer normalization."""
    x = p.kappa**2
    pref = p.kappa0 / ((1 - p.kappa0 * p.upsilon0 * x) * (1 + p.kappa0 / p.upsilon0 * x))
    a = (1 / p.kappa0 - p.kappa0) * x**2 + (1 / p.upsilon0 - p.upsilon0) * x
    d = 1 / p.kappa0 - p.kappa0 + (1 / p.upsilon0 - p.upsilon0) * x
    return pref * (a / p.kappa + d * p.kappa)


def _denominator_values(p: ParamSet, rng) -> float:
    """Smallest magnitude over every structural denominator at probe points."""
    n = p.n
    vals = []
    k, k0, kn, u0, un = p.kappa, p.kappa0, p.kappan, p.upsilon0, p.upsilonn
    # parameter-only denominators
    for kj in (k0, k, kn):
        vals.append(kj + 1 / kj)
    for kj in (k0, kn):
        vals.append(k / kj + kj / k)
    for kj, uj in ((k0, u0), (kn, un)):
        for w in (kj * uj, kj / uj, uj / kj, 1 / (kj * uj)):
            vals.append(1 - w)
            vals.append(1 + w)
    vals.append(k**2 - 1)
    vals.append(k**2 + 1)
    vals.append(_kbar_trace_denominator(p))
    if n % 2 == 1:
        vals.append(1 + k0 / kn * p.psi0 * p.psin)
        vals.append(1 + kn / k0 * p.psi0 * p.psin)
    else:
        vals.append(1 - k0 * kn / k * p.psi0 * p.psin)
        vals.append(1 - k / (k0 * kn) * p.psi0 * p.psin)
    q = p.q

    def draw(count):
        mod = rng.uniform(*_PROBE_BAND, size=count)
        ph = rng.uniform(0.0, 2 * math.pi, size=count)
        return mod * np.exp(1j * ph)

    for _ in range(_PROBE_COUNT):
        t = draw(n)
        x = draw(1)[0]
        vals.append(1 - q / t[0] ** 2)
        vals.append(1 - q * t[0] ** 2)
        for i in range(n - 1):
            vals.append(1 - t[i] / t[i + 1])
        vals.append(1 - t[-1] ** 2)
        for z in (x, x**2):
            vals.append(1 - k**2 * z)
            vals.append(1 - z / k**2)
        for kj, uj in ((k0, u0), (kn, un)):
            for w in (kj * uj, kj / uj, uj / kj, 1 / (kj * uj)):
                vals.append(1 - w * x)
                vals.append(1 + w * x)
            vals.append(1 - k**2 * kj * uj * x)
            vals.append(1 + k**2 * kj / uj * x)
    return min(abs(v) for v in vals)


def sample_generic(seed: int, n: int, constraints=None) -> ParamSet:
    """Draw a deterministic generic ParamSet.

    Moduli land in [0.6, 1.6] with uniform phases; draws are rejected until
    |q| sits away from 1, the spectral vectors of all weights of l1-degree
    <= 4 are pairwise distinct, and every structural denominator stays above
    1e-3 in magnitude at 32 probe points.  ``constraints={"mcondition": m}``
    solves the boundary compatibility for psin before screening.  Raises
    GenericityError after a bounded number of attempts.
    """
    rng = np.random.default_rng(seed)
    constraints = constraints or {}
    unknown = set(constraints) - {"mcondition"}
    if unknown:
        raise ValueError(f"unknown constraint keys {sorted(unknown)}")
    last = "no attempt"
    for _ in range(_MAX_DRAWS):
        mod = rng.uniform(*_SCALAR_BAND, size=8)
        ph = rng.uniform(0.0, 2 * math.pi, size=8)
        z = mod * np.exp(1j * ph)
        q_sqrt, kappa0, kappa, kappan, upsilon0, upsilonn, psi0, psin = map(
            complex, z
        )
        if "mcondition" in constraints:
            m = int(constraints["mcondition"])
            rhs = (kappa0 * kappan * kappa ** (n - 1)) ** eta(m)
            psin = rhs / (psi0 * (q_sqrt**2) ** m)
        p = ParamSet(
            n=n,
            q_sqrt=q_sqrt,
            kappa0=kappa0,
            kappa=kappa,
            kappan=kappan,
            upsilon0=upsilon0,
            upsilonn=upsilonn,
            psi0=psi0,
            psin=psin,
            kappa_sqrt=cmath.sqrt(kappa),
        )
        if abs(abs(p.q) - 1.0) < 0.05:
            last = "q too close to the unit circle"
            continue
        if _denominator_values(p, rng) <= _DENOM_FLOOR:
            last = "structural denominator below floor"
            continue
        if not _gamma_distinct(p):
            last = "spectral vectors collide at low degree"
            continue
        return p
    raise GenericityError(
        f"no generic parameter point for seed={seed}, n={n}: {last}"
    )


def max_abs(a) -> float:
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def rel_residual(a, b, scale: float | None = None) -> float:
    """Max-abs difference normalized by the larger of the compared objects.

    An explicit ``scale`` overrides the denominator (used when comparing
    against zero, where the natural scale is the size of the inputs that
    produced the residual)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    num = max_abs(a - b)
    if scale is None:
        scale = max(max_abs(a), max_abs(b))
    if scale < 1e-300:
        return 0.0 if num < 1e-300 else float("inf")
    return float(num / scale)
