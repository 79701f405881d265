"""Integer arithmetic in the Chow ring of a smooth complete toric variety.

Substituting each x_rho by its class in the nef basis b_1..b_q removes the
linear relations, so A*(X) = Z[b]/(image of the Stanley-Reisner ideal).
Each graded piece is reduced by an exact rational row echelon form of the
relations in that degree; every normal-form coefficient is asserted integral.
"""

from __future__ import annotations

import ast
import random
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    ChowError,
    IntegralityViolation,
    NotAUnit,
    OrthogonalityFailure,
    ParseError,
    PointClassNotMonomial,
)
from .fan import (
    Fan,
    basis_names,
    cox_ring,
    det,
    integer_inverse,
    nef_basis,
    primitive_collections,
    ray_degrees,
    require_smooth_complete,
)
from .polyring import GradedRing, Polynomial, PrimeField

Exps = tuple[int, ...]


def _monomials(q: int, d: int) -> list[Exps]:
    """Exponent vectors of total degree d, in descending lex order."""
    if q == 0:
        return [()] if d == 0 else []
    if q == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in _monomials(q - 1, d - a):
            out.append((a,) + rest)
    return out


def _drl_key(e: Exps) -> tuple:
    # degrevlex: larger total degree, then smaller last exponents
    return (sum(e),) + tuple(-a for a in reversed(e))


def _add(e: Exps, f: Exps) -> Exps:
    return tuple(a + b for a, b in zip(e, f))


def _divides(e: Exps, f: Exps) -> bool:
    return all(a <= b for a, b in zip(e, f))


class ChowRing:
    """A*(X_Sigma) for a validated smooth complete fan with a nef basis."""

    def __init__(self, fan: Fan, basis: Sequence[Sequence[int]] | None = None, names: Sequence[str] | None = None):
        require_smooth_complete(fan)
        self.fan = fan
        self.n = fan.dim
        self.q = fan.q
        self.basis = [tuple(b) for b in (basis or nef_basis(fan))]
        if len(self.basis) != self.q or abs(det(self.basis)) != 1:
            raise ChowError("the divisor basis must be unimodular")
        self.names = list(names or basis_names(fan, self.basis))
        # ray classes in the nef basis: deg = coords * basis
        Binv = integer_inverse(self.basis)
        self.ray_coords = [
            tuple(sum(d[i] * Binv[i][k] for i in range(self.q)) for k in range(self.q)) for d in ray_degrees(fan)
        ]
        self._build_normal_forms()
        self._normalize_degree()
        self._choose_point_class()

    # -- construction

    def _linear(self, rho: int) -> dict[Exps, int]:
        out = {}
        for k, c in enumerate(self.ray_coords[rho]):
            if c:
                e = [0] * self.q
                e[k] = 1
                out[tuple(e)] = c
        return out

    def _poly_mul(self, f: dict, g: dict) -> dict:
        out: dict = {}
        for e1, c1 in f.items():
            for e2, c2 in g.items():
                e = _add(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return {e: c for e, c in out.items() if c}

    def _build_normal_forms(self):
        rels = []
        for pc in primitive_collections(self.fan):
            f = {(0,) * self.q: 1}
            for rho in pc.rays:
                f = self._poly_mul(f, self._linear(rho))
            rels.append((len(pc.rays), f))
        self.sr_relations = rels
        self.standard: dict[int, list[Exps]] = {}
        self._nf: dict[Exps, dict[Exps, int]] = {}
        for d in range(self.n + 1):
            cols = sorted(_monomials(self.q, d), key=_drl_key, reverse=True)
            pos = {e: i for i, e in enumerate(cols)}
            rows = []
            for k, f in rels:
                if k > d:
                    continue
                for u in _monomials(self.q, d - k):
                    row = [Fraction(0)] * len(cols)
                    for e, c in f.items():
                        row[pos[_add(e, u)]] += c
                    rows.append(row)
            std, nf = _integral_normal_forms(rows, cols)
            self.standard[d] = std
            self._nf.update(nf)
        self.ranks = [len(self.standard[d]) for d in range(self.n + 1)]
        if sum(self.ranks) != len(self.fan.max_cones):
            raise ChowError(f"ranks {self.ranks} do not add up to the number of maximal cones")

    def _normalize_degree(self):
        if self.ranks[self.n] != 1:
            raise ChowError("top-degree piece is not of rank one")
        self.top = self.standard[self.n][0]
        c = self.ONE
        for rho in self.fan.sigma0:
            c = c * self.ray_class(rho)
        k = c.terms.get(self.top, 0)
        if abs(k) != 1:
            raise ChowError("smooth-cone product is not a generator of the top piece")
        self._top_degree = k  # degree of the standard top monomial

    def _choose_point_class(self):
        cands = [e for e in _monomials(self.q, self.n) if self.monomial_degree(e) == 1]
        if not cands:
            raise PointClassNotMonomial("no monomial in the nef basis has degree one")
        for want_orth in (True, False):
            for z in cands:
                omega = self._omega_for(z, want_orth)
                if omega is not None:
                    self.zeta = z
                    self.omega = omega
                    self.pairing = {
                        i: [[self.monomial_degree(_add(wj, self._div(z, wi))) for wj in omega[i]] for wi in omega[i]]
                        for i in omega
                    }
                    self.orthogonal = want_orth
                    return
        raise OrthogonalityFailure("no monomial bases dividing a point class pair unimodularly")

    def _div(self, z: Exps, w: Exps) -> Exps:
        return tuple(a - b for a, b in zip(z, w))

    def _omega_for(self, z: Exps, orthogonal: bool) -> dict[int, list[Exps]] | None:
        omega = {}
        for i in range(self.n + 1):
            divs = [e for e in _monomials(self.q, i) if _divides(e, z)]
            r = self.ranks[i]
            found = None
            for sub in combinations(divs, r):
                M = [[self.monomial_degree(_add(wj, self._div(z, wi))) for wj in sub] for wi in sub]
                if orthogonal:
                    ok = all(M[a][b] == int(a == b) for a in range(r) for b in range(r))
                else:
                    ok = abs(det(M)) == 1
                if ok:
                    found = list(sub)
                    break
            if found is None:
                return None
            omega[i] = found
        return omega

    # -- elements

    @cached_property
    def ONE(self) -> "ChowClass":
        return ChowClass(self, {(0,) * self.q: 1})

    @cached_property
    def ZERO(self) -> "ChowClass":
        return ChowClass(self, {})

    def monomial(self, e: Exps, coeff: int = 1) -> "ChowClass":
        e = tuple(e)
        if sum(e) > self.n or coeff == 0:
            return self.ZERO
        return ChowClass(self, {s: c * coeff for s, c in self._nf[e].items()})

    def monomial_degree(self, e: Exps) -> int:
        return self.monomial(e).degree()

    def gen(self, k: int | str) -> "ChowClass":
        if isinstance(k, str):
            k = self.names.index(k)
        e = [0] * self.q
        e[k] = 1
        return self.monomial(tuple(e))

    def gens(self) -> list["ChowClass"]:
        return [self.gen(k) for k in range(self.q)]

    def divisor(self, D: Sequence[int]) -> "ChowClass":
        """Class of a divisor given in the grading coordinates of Pic."""
        Binv = integer_inverse(self.basis)
        coords = [sum(D[i] * Binv[i][k] for i in range(self.q)) for k in range(self.q)]
        out = self.ZERO
        for k, c in enumerate(coords):
            if c:
                out = out + self.gen(k) * c
        return out

    def ray_class(self, rho: int) -> "ChowClass":
        out = self.ZERO
        for k, c in enumerate(self.ray_coords[rho]):
            if c:
                out = out + self.gen(k) * c
        return out

    def from_terms(self, terms: Mapping[Exps, int]) -> "ChowClass":
        out: dict[Exps, int] = {}
        for e, c in terms.items():
            if sum(e) > self.n or not c:
                continue
            for s, v in self._nf[tuple(e)].items():
                out[s] = out.get(s, 0) + c * v
        return ChowClass(self, out)

    def parse(self, text: str) -> "ChowClass":
        """Integer polynomial in the basis names and/or the ray variable names."""
        src = text.replace("−", "-").replace("·", "*").replace("^", "**").strip()
        if not src:
            raise ParseError("empty class")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ParseError(f"malformed class {text!r}: {exc.msg}") from None
        return self._eval(tree.body, text)

    def _eval(self, node, text):
        if isinstance(node, ast.BinOp):
            a = self._eval(node.left, text)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int) and node.right.value >= 0):
                    raise ParseError(f"exponents must be nonnegative integers in {text!r}")
                return a ** node.right.value
            b = self._eval(node.right, text)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval(node.operand, text)
            return -v if isinstance(node.op, ast.USub) else v
        elif isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return self.ONE * node.value
        elif isinstance(node, ast.Name):
            if node.id in self.names:
                return self.gen(node.id)
            if node.id in self.fan.names:
                return self.ray_class(self.fan.names.index(node.id))
            raise ParseError(f"unknown symbol {node.id!r} in {text!r}")
        raise ParseError(f"unsupported syntax in {text!r}")

    # -- structure

    def reduce(self, expr) -> "ChowClass":
        """Normal form of an integer polynomial in the ray variables x_rho.

        ``expr`` is a mapping {exponent vector over the rays: int}, a
        Cox-ring Polynomial (coefficients read as signed integers) or a string.
        """
        if isinstance(expr, str):
            return self.parse(expr)
        if isinstance(expr, Polynomial):
            f = expr.ring.field
            items = [(e[: self.fan.nrays], f.signed(c)) for e, c in expr.terms.items()]
        else:
            items = list(expr.items())
        out = self.ZERO
        for e, c in items:
            t = self.ONE * c
            for rho, a in enumerate(e):
                if a:
                    t = t * self.ray_class(rho) ** a
            out = out + t
        return out

    def point_class(self) -> "ChowClass":
        return self.monomial(self.zeta)

    def chern_tangent(self) -> "ChowClass":
        out = self.ONE
        for rho in range(self.fan.nrays):
            out = out * (self.ONE + self.ray_class(rho))
        return out

    def complement(self, omega: Exps) -> Exps:
        if not _divides(omega, self.zeta):
            raise ChowError(f"{omega} does not divide the point class")
        return self._div(self.zeta, omega)

    def complementary_data(self, omega: Exps, rng: random.Random, ring: GradedRing):
        """(a = zeta/omega, L_a): a_k random forms of degree b_k for each k."""
        from .groebner import Ideal

        a = self.complement(omega)
        gens = []
        for k, j in enumerate(a):
            for _ in range(j):
                gens.append(ring.random_form(self.basis[k], rng))
        return self.monomial(a), Ideal(gens, ring)

    def cox_ring(self, field: PrimeField | None = None, aux: Sequence[str] = ()) -> GradedRing:
        return cox_ring(self.fan, field, aux)

    def describe(self) -> dict:
        return {
            "basis": {nm: list(b) for nm, b in zip(self.names, self.basis)},
            "ranks": self.ranks,
            "point_class": self.render_monomial(self.zeta),
            "omega": {str(i): [self.render_monomial(w) for w in ws] for i, ws in self.omega.items()},
            "orthogonal": self.orthogonal,
            "relations": [ChowClass(self, f).render_raw() for _, f in self.sr_relations],
        }

    def render_monomial(self, e: Exps) -> str:
        parts = []
        for nm, a in zip(self.names, e):
            if a == 1:
                parts.append(nm)
            elif a > 1:
                parts.append(f"{nm}^{a}")
        return "*".join(parts) or "1"

    def check_orthogonality(self) -> bool:
        return all(
            self.pairing[i][a][b] == int(a == b)
            for i in self.pairing
            for a in range(len(self.pairing[i]))
            for b in range(len(self.pairing[i]))
        )


def _rref(rows: list[list[Fraction]], ncols: int) -> list[tuple[int, int]]:
    """In-place reduced row echelon form; returns (row, pivot column) pairs."""
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    return pivots


def _normal_forms(rows: list[list[Fraction]], cols: list[Exps], std: Sequence[Exps]):
    """Rewrite every column in terms of ``std``; None unless std is a basis."""
    order = [e for e in cols if e not in std] + list(std)
    idx = {e: i for i, e in enumerate(cols)}
    M = [[row[idx[e]] for e in order] for row in rows]
    pivots = _rref(M, len(order))
    nonstd = len(order) - len(std)
    if len(pivots) != nonstd or any(c >= nonstd for _, c in pivots):
        return None
    nf = {e: {e: 1} for e in std}
    for r, c in pivots:
        out = {}
        for j in range(nonstd, len(order)):
            if M[r][j] != 0:
                out[order[j]] = -M[r][j]
        nf[order[c]] = out
    return nf


def _integral_normal_forms(rows: list[list[Fraction]], cols: list[Exps]):
    """Standard monomials forming a Z-basis, preferring the degrevlex-smallest.

    The default echelon form keeps the smallest monomials; when that leaves
    denominators, other monomial subsets are tried in preference order.
    """
    rank = len(_rref([list(r) for r in rows], len(cols)))
    k = len(cols) - rank
    for std in combinations(list(reversed(cols)), k):
        nf = _normal_forms(rows, cols, std)
        if nf is None:
            continue
        if all(v.denominator == 1 for form in nf.values() for v in form.values()):
            return list(std), {e: {s: int(v) for s, v in form.items()} for e, form in nf.items()}
    raise IntegralityViolation("no monomial basis with integral normal forms")


class ChowClass:
    """Integer combination of standard monomials, any mix of codimensions."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: ChowRing, terms: Mapping[Exps, int]):
        self.ring = ring
        self.terms = {e: int(c) for e, c in terms.items() if c}

    def _coerce(self, other) -> "ChowClass":
        if isinstance(other, ChowClass):
            if other.ring is not self.ring:
                raise ChowError("classes from different Chow rings")
            return other
        if isinstance(other, int):
            return self.ring.ONE * other if other else self.ring.ZERO
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ChowClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClass(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.ring.n
        nf = self.ring._nf
        out: dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > n:
                    continue
                for s, v in nf[_add(e1, e2)].items():
                    out[s] = out.get(s, 0) + c1 * c2 * v
        return ChowClass(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers: use invert_unit")
        out = self.ring.ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, ChowClass):
            return NotImplemented
        same = self.ring is other.ring or (self.ring.names == other.ring.names and self.ring.fan == other.ring.fan)
        return same and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def part(self, d: int) -> "ChowClass":
        """Codimension-d component."""
        return ChowClass(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def dimension_part(self, i: int) -> "ChowClass":
        """Dimension-i component (codimension n - i)."""
        return self.part(self.ring.n - i)

    def constant(self) -> int:
        return self.terms.get((0,) * self.ring.q, 0)

    def degree(self) -> int:
        return self.terms.get(self.ring.top, 0) * self.ring._top_degree

    def coefficients(self, d: int) -> list[int]:
        """Coordinates of the codimension-d part in the monomial basis Omega^(d)."""
        r = self.ring
        gam = [(self * r.monomial(r.complement(w))).degree() for w in r.omega[d]]
        M = r.pairing[d]
        Minv = integer_inverse(M)
        return [sum(Minv[i][j] * gam[j] for j in range(len(gam))) for i in range(len(gam))]

    def render_raw(self) -> str:
        return _render(self.terms, self.ring.names)

    def __str__(self):
        return _render(self.terms, self.ring.names)

    def __repr__(self):
        return f"ChowClass({self})"

    def to_json(self) -> dict:
        out: dict[str, list] = {}
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            out.setdefault(str(sum(e)), []).append([self.terms[e], list(e)])
        return out

    @classmethod
    def from_json(cls, ring: ChowRing, data: Mapping[str, Iterable]) -> "ChowClass":
        terms = {}
        for items in data.values():
            for c, e in items:
                terms[tuple(e)] = int(c)
        return ring.from_terms(terms)


def _render(terms: Mapping[Exps, int], names: Sequence[str]) -> str:
    if not terms:
        return "0"
    order = sorted(terms, key=lambda e: (sum(e), e), reverse=True)
    out = []
    for e in order:
        c = terms[e]
        mono = "*".join(nm if a == 1 else f"{nm}^{a}" for nm, a in zip(names, e) if a)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def build_chow_ring(fan: Fan) -> ChowRing:
    cached = fan._cache.get("chow")
    if cached is None:
        cached = ChowRing(fan)
        fan._cache["chow"] = cached
    return cached


def reduce(expr, ring: ChowRing) -> ChowClass:
    return ring.reduce(expr)


def point_class(ring: ChowRing) -> ChowClass:
    return ring.point_class()


def degree(c: ChowClass) -> int:
    return c.degree()


def chern_tangent(ring: ChowRing) -> ChowClass:
    return ring.chern_tangent()


def invert_unit(u: ChowClass) -> ChowClass:
    """Inverse of 1 + (nilpotent) as a truncated geometric series."""
    c0 = u.constant()
    if c0 not in (1, -1):
        raise NotAUnit(f"constant term {c0} is not a unit")
    v = u if c0 == 1 else -u
    r = u.ring
    t = r.ONE - v
    out = r.ONE
    power = r.ONE
    for _ in range(r.n):
        power = power * t
        if power.is_zero():
            break
        out = out + power
    return out if c0 == 1 else -out


def complementary_data(omega: Exps, ring: ChowRing, rng: random.Random, cox: GradedRing | None = None):
    return ring.complementary_data(omega, rng, cox or ring.cox_ring())
