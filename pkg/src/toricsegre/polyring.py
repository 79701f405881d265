"""Sparse multivariate polynomials over a prime field, graded by Pic(X).

A :class:`GradedRing` names the Cox variables of a toric variety and records the
Pic-degree of each one.  Auxiliary variables (the Rabinowitsch variable ``T``,
a saturation variable ...) may be appended; they carry degree zero and make
any polynomial that involves them non-homogeneous in the sense of
:func:`multidegree`.

Polynomials are immutable maps ``exponent tuple -> nonzero coefficient``.
"""

from __future__ import annotations

import ast
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import EmptyDegree, NotHomogeneous, ParseError, ZeroPolynomial

DEFAULT_PRIME = 32749


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field GF(p)."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.p <= 2 or not _is_prime(self.p):
            raise ValueError(f"modulus must be an odd prime, got {self.p}")

    def __call__(self, a) -> int:
        if isinstance(a, Fraction):
            return a.numerator * pow(a.denominator, -1, self.p) % self.p
        return int(a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.p)

    def signed(self, a: int) -> int:
        """Symmetric representative in (-p/2, p/2]."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a


class GradedRing:
    """Polynomial ring k[x_1..x_m, aux...] with a Pic-valued grading.

    ``degrees`` holds one Pic vector (length q) per graded variable.
    """

    def __init__(
        self,
        names: Sequence[str],
        degrees: Sequence[Sequence[int]],
        field: PrimeField | None = None,
        aux: Sequence[str] = (),
    ):
        if len(names) != len(degrees):
            raise ValueError("need one degree per graded variable")
        all_names = list(names) + list(aux)
        if len(set(all_names)) != len(all_names):
            raise ValueError("variable names must be distinct")
        self.graded_names = tuple(names)
        self.aux_names = tuple(aux)
        self.names = tuple(all_names)
        self.degrees = tuple(tuple(int(c) for c in d) for d in degrees)
        self.q = len(self.degrees[0]) if self.degrees else 0
        if any(len(d) != self.q for d in self.degrees):
            raise ValueError("all degree vectors must have the same length")
        self.field = field or PrimeField()
        self.index = {name: i for i, name in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def ngraded(self) -> int:
        return len(self.graded_names)

    @property
    def p(self) -> int:
        return self.field.p

    def __repr__(self):
        aux = f", aux={list(self.aux_names)}" if self.aux_names else ""
        return f"GradedRing({list(self.graded_names)}, p={self.p}{aux})"

    def __eq__(self, other):
        return (
            isinstance(other, GradedRing)
            and self.names == other.names
            and self.degrees == other.degrees
            and self.aux_names == other.aux_names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.degrees, self.field.p))

    def with_aux(self, *names: str) -> "GradedRing":
        """The same ring with extra ungraded variables appended."""
        return GradedRing(
            self.graded_names, self.degrees, self.field, self.aux_names + tuple(names)
        )

    def base(self) -> "GradedRing":
        if not self.aux_names:
            return self
        return GradedRing(self.graded_names, self.degrees, self.field)

    # -- construction helpers -------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name_or_index) -> "Polynomial":
        i = self.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) < self.nvars:
            exps = exps + (0,) * (self.nvars - len(exps))
        c = self.field(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def from_terms(self, terms: Mapping[tuple, int]) -> "Polynomial":
        p = self.p
        out = {}
        for e, c in terms.items():
            c %= p
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def embed(self, f: "Polynomial") -> "Polynomial":
        """Map f from a ring whose variable names are a subset of ours."""
        if f.ring is self:
            return f
        pos = [self.index[name] for name in f.ring.names]
        out = {}
        for e, c in f.terms.items():
            new = [0] * self.nvars
            for i, a in zip(pos, e):
                new[i] = a
            out[tuple(new)] = c
        return Polynomial(self, out)

    # -- grading --------------------------------------------------------------

    def monomial_degree(self, exps: Sequence[int]) -> tuple[int, ...]:
        deg = [0] * self.q
        for a, d in zip(exps, self.degrees):
            if a:
                for j in range(self.q):
                    deg[j] += a * d[j]
        return tuple(deg)

    @cached_property
    def _positive_weight(self) -> tuple[Fraction, ...]:
        # A functional w on Pic with w(deg x_i) >= 1 for every variable; it
        # exists exactly when R_0 = k, i.e. the toric variety is complete.
        from scipy.optimize import linprog

        q = self.q
        A = [[-d[j] for j in range(q)] for d in self.degrees]
        res = linprog(
            c=[sum(d[j] for d in self.degrees) for j in range(q)],
            A_ub=A,
            b_ub=[-1] * len(A),
            bounds=[(None, None)] * q,
            method="highs",
        )
        if not res.success:
            raise ValueError("grading is not positive: degree-0 piece is infinite")
        # Rationalise, then verify exactly.
        w = tuple(Fraction(x).limit_denominator(1000) for x in res.x)
        scale = 1
        for x in w:
            scale = scale * x.denominator // _gcd(scale, x.denominator)
        w = tuple(x * scale for x in w)
        for d in self.degrees:
            if sum(a * b for a, b in zip(w, d)) <= 0:
                raise ValueError("could not find a positive weight for the grading")
        return w

    def monomials_of_degree(self, beta: Sequence[int]) -> list[tuple[int, ...]]:
        """All exponent vectors of graded monomials with Pic-degree beta.

        Aux variables get exponent 0.  Order is descending lexicographic.
        """
        pad = (0,) * len(self.aux_names)
        return [
            e + pad
            for e in _monomials_of_degree(self.degrees, tuple(beta), self._positive_weight)
        ]

    def random_form(self, beta: Sequence[int], rng: random.Random) -> "Polynomial":
        """Dense general form of degree beta: every monomial, random nonzero coefficients."""
        mons = self.monomials_of_degree(beta)
        if not mons:
            raise EmptyDegree(f"no monomial of degree {tuple(beta)}")
        p = self.p
        return Polynomial(self, {e: rng.randrange(1, p) for e in mons})

    # -- parsing --------------------------------------------------------------

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@lru_cache(maxsize=4096)
def _monomials_of_degree(degrees, beta, weight) -> tuple[tuple[int, ...], ...]:
    m = len(degrees)
    q = len(beta)
    w = [sum(a * b for a, b in zip(weight, d)) for d in degrees]
    budget = sum(a * b for a, b in zip(weight, beta))
    if budget < 0:
        return ()
    out = []
    exps = [0] * m
    # the weight bounds each exponent; the leaf checks the exact Pic-degree
    def rec(i, remaining, left):
        if i == m - 1:
            if left % w[i] != 0:
                return
            a = int(left // w[i])
            if all(remaining[j] == a * degrees[i][j] for j in range(q)):
                exps[i] = a
                out.append(tuple(exps))
                exps[i] = 0
            return
        top = int(left // w[i])
        for a in range(top, -1, -1):
            exps[i] = a
            rec(i + 1, [remaining[j] - a * degrees[i][j] for j in range(q)], left - a * w[i])
        exps[i] = 0

    if m == 0:
        return ((),) if all(b == 0 for b in beta) else ()
    rec(0, list(beta), budget)
    return tuple(out)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients in [1, p)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: GradedRing, terms: Mapping[tuple, int]):
        self.ring = ring
        self.terms = dict(terms)
        self._hash = None

    # -- basic protocol -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.names == other.ring.names and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return render(self)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.names != self.ring.names:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        if len(other.terms) == 1:
            ((e2, c2),) = other.terms.items()
            return Polynomial(
                self.ring,
                {tuple(a + b for a, b in zip(e1, e2)): c1 * c2 % p for e1, c1 in self.terms.items()},
            )
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if c == 0:
            return self.ring.zero()
        p = self.ring.p
        return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def diff(self, var) -> "Polynomial":
        if isinstance(var, Polynomial):
            (e0,) = var.terms
            i = e0.index(1)
        else:
            i = self.ring.index[var] if isinstance(var, str) else var
        p = self.ring.p
        out = {}
        for e, c in self.terms.items():
            a = e[i]
            if a:
                v = c * a % p
                if v:
                    new = list(e)
                    new[i] = a - 1
                    out[tuple(new)] = v
        return Polynomial(self.ring, out)

    def variables(self) -> set[int]:
        """Indices of variables that occur."""
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return used

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def subs(self, values: Mapping[int, int]) -> "Polynomial":
        """Substitute field constants for some variables (by index)."""
        p = self.ring.p
        out: dict = {}
        for e, c in self.terms.items():
            new = list(e)
            for i, v in values.items():
                if new[i]:
                    c = c * pow(v, new[i], p) % p
                    new[i] = 0
            if c:
                t = tuple(new)
                out[t] = (out.get(t, 0) + c) % p
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})


# -- grading -----------------------------------------------------------------


def multidegree(f: Polynomial) -> tuple[int, ...]:
    """Common Pic-degree of all terms of f."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no degree")
    ring = f.ring
    naux = len(ring.aux_names)
    degs = set()
    for e in f.terms:
        if naux and any(e[ring.ngraded:]):
            raise NotHomogeneous(f"{f} involves ungraded variables")
        degs.add(ring.monomial_degree(e[: ring.ngraded]))
        if len(degs) > 1:
            raise NotHomogeneous(f"terms of {f} have different Pic-degrees {sorted(degs)}")
    return degs.pop()


def is_homogeneous(f: Polynomial) -> bool:
    try:
        multidegree(f)
    except (NotHomogeneous, ZeroPolynomial):
        return False
    return True


def random_form(beta: Sequence[int], ring: GradedRing, rng: random.Random) -> Polynomial:
    return ring.random_form(beta, rng)


def random_combination(polys: Sequence[Polynomial], rng: random.Random) -> Polynomial:
    """sum c_i f_i with independent uniform nonzero c_i."""
    ring = polys[0].ring
    p = ring.p
    out: dict = {}
    for f in polys:
        c = rng.randrange(1, p)
        for e, v in f.terms.items():
            out[e] = (out.get(e, 0) + c * v) % p
    return Polynomial(ring, {e: v for e, v in out.items() if v})


# -- text form ---------------------------------------------------------------


def render(f: Polynomial, signed: bool = True) -> str:
    """Render in the input grammar; coefficients in the symmetric range when ``signed``."""
    if f.is_zero():
        return "0"
    ring = f.ring
    parts = []
    for e in sorted(f.terms, key=lambda e: (sum(e), e), reverse=True):
        c = ring.field.signed(f.terms[e]) if signed else f.terms[e]
        factors = []
        for name, a in zip(ring.names, e):
            if a == 1:
                factors.append(name)
            elif a > 1:
                factors.append(f"{name}^{a}")
        mono = "*".join(factors)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Pow)


def parse_polynomial(text: str, ring: GradedRing) -> Polynomial:
    """Parse ``+ - * ^`` expressions with integer coefficients."""
    src = (
        text.replace("−", "-")
        .replace("·", "*")
        .replace("^", "**")
        .strip()
    )
    if not src:
        raise ParseError("empty polynomial")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"malformed polynomial {text!r}: {exc.msg}") from None
    return _eval(tree.body, ring, text)


def _eval(node, ring: GradedRing, text: str) -> Polynomial:
    if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
        left = _eval(node.left, ring, text)
        if isinstance(node.op, ast.Pow):
            k = _exponent(node.right, text)
            return left**k
        right = _eval(node.right, ring, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        return left * right
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _eval(node.operand, ring, text)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.Name):
        if node.id not in ring.index:
            raise ParseError(f"unknown variable {node.id!r} in {text!r}")
        return ring.gen(node.id)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return ring.const(node.value)
    raise ParseError(f"unsupported syntax in {text!r}")


def _exponent(node, text: str) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and node.value >= 0:
        return node.value
    raise ParseError(f"exponents must be nonnegative integer literals in {text!r}")


def monomial_to_poly(ring: GradedRing, exps: Iterable[int]) -> Polynomial:
    return ring.monomial(tuple(exps))


def products(polys: Sequence[Polynomial]) -> Polynomial:
    out = polys[0].ring.one()
    for f in polys:
        out = out * f
    return out


__all__ = [
    "DEFAULT_PRIME",
    "PrimeField",
    "GradedRing",
    "Polynomial",
    "multidegree",
    "is_homogeneous",
    "random_form",
    "random_combination",
    "parse_polynomial",
    "render",
    "products",
]
