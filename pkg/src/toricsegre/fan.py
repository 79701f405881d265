"""Combinatorics of smooth complete toric varieties."""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import gcd
from pathlib import Path
from typing import Sequence

from .errors import (
    ConditionFailed,
    DuplicateRay,
    FanError,
    FanNotSmoothComplete,
    NefBasisNotFound,
    NonPrimitiveRay,
    ParseError,
)
from .polyring import GradedRing, Polynomial, PrimeField

FACTOR_LETTERS = "xyzuvwabcdefgkmnpqrst"


# ---------------------------------------------------------------------------
# small exact integer linear algebra


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def inverse(M: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def integer_inverse(M: Sequence[Sequence[int]]) -> list[list[int]]:
    inv = inverse(M)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def _rank(rows: Sequence[Sequence[int]]) -> int:
    A = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c] != 0:
                f = A[r][c] / A[rank][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def _saturated(rows: list[tuple[int, ...]]) -> bool:
    """True if the rows span a rank-k saturated sublattice (gcd of maximal minors 1)."""
    k = len(rows)
    q = len(rows[0])
    g = 0
    for cols in combinations(range(q), k):
        g = gcd(g, det([[r[c] for c in cols] for r in rows]))
        if g == 1:
            return True
    return False


# ---------------------------------------------------------------------------
# the fan


@dataclass(frozen=True)
class PrimitiveCollection:
    rays: tuple[int, ...]


@dataclass
class Fan:
    """Rays (primitive integer vectors) and maximal cones (ray-index sets)."""

    rays: list[tuple[int, ...]]
    max_cones: list[tuple[int, ...]]
    names: list[str] | None = None
    factors: list[int] | None = None  # P^{n_1} x ... x P^{n_j} sizes, when built from shorthand
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.rays = [tuple(int(a) for a in r) for r in self.rays]
        self.max_cones = [tuple(sorted(int(i) for i in c)) for c in self.max_cones]
        if not self.rays:
            raise FanError("a fan needs at least one ray")
        n = len(self.rays[0])
        if any(len(r) != n for r in self.rays):
            raise FanError("rays must all have the same dimension")
        for c in self.max_cones:
            if any(i < 0 or i >= len(self.rays) for i in c):
                raise FanError(f"cone {list(c)} refers to a missing ray")
        if self.names is None:
            self.names = [f"x{i}" for i in range(len(self.rays))]
        if len(self.names) != len(self.rays):
            raise FanError("one variable name per ray is required")

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    @property
    def nrays(self) -> int:
        return len(self.rays)

    @property
    def q(self) -> int:
        return self.nrays - self.dim

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "max_cones": [list(c) for c in self.max_cones]}

    # -- cones

    @cached_property
    def faces(self) -> frozenset[frozenset[int]]:
        out = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                out.update(frozenset(s) for s in combinations(c, k))
        return frozenset(out)

    @cached_property
    def sigma0(self) -> tuple[int, ...]:
        return self.max_cones[0]

    @cached_property
    def outside(self) -> tuple[int, ...]:
        s = set(self.sigma0)
        return tuple(i for i in range(self.nrays) if i not in s)


# ---------------------------------------------------------------------------
# construction


def projective_space(n: int) -> Fan:
    return product_of_projective_spaces([n])


def product_of_projective_spaces(sizes: Sequence[int]) -> Fan:
    """Fan of P^{n_1} x ... x P^{n_j}; ray x_0 = -(e_1+...+e_n), x_i = e_i."""
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise FanError("projective factors need dimension >= 1")
    if len(sizes) > len(FACTOR_LETTERS):
        raise FanError("too many projective factors")
    N = sum(sizes)
    rays, names, blocks = [], [], []
    offset = 0
    for f, s in enumerate(sizes):
        letter = FACTOR_LETTERS[f] if len(sizes) > 1 else "x"
        block = []
        for i in range(s + 1):
            v = [0] * N
            if i == 0:
                for k in range(s):
                    v[offset + k] = -1
            else:
                v[offset + i - 1] = 1
            block.append(len(rays))
            rays.append(tuple(v))
            names.append(f"{letter}{i}")
        blocks.append(block)
        offset += s
    cones = []
    # omit one ray per factor; omitting the last ray first puts x_0 in sigma_0
    for omit in product(*[range(s, -1, -1) for s in sizes]):
        cone = []
        for block, o in zip(blocks, omit):
            cone += [r for k, r in enumerate(block) if k != o]
        cones.append(tuple(cone))
    label = "x".join(f"P{s}" for s in sizes)
    return Fan(rays, cones, names, factors=sizes, label=label)


_SHORTHAND = re.compile(r"^\s*P\^?\{?(\d+)\}?(\s*[x×*]\s*P\^?\{?(\d+)\}?)*\s*$")


def parse_shorthand(text: str) -> Fan:
    """'P4xP2', 'P^4 x P^2', 'P^{1}xP^{1}xP^{1}' -> product fan."""
    if not _SHORTHAND.match(text):
        raise ParseError(f"not a product-of-projective-spaces shorthand: {text!r}")
    sizes = [int(s) for s in re.findall(r"P\^?\{?(\d+)\}?", text)]
    return product_of_projective_spaces(sizes)


def load_fan(source: str | Path) -> Fan:
    """A JSON file path, a JSON string, or a P^a x P^b shorthand."""
    text = str(source)
    if _SHORTHAND.match(text):
        return parse_shorthand(text)
    path = Path(text)
    if path.exists():
        raw = path.read_text()
        label = path.stem
    else:
        raw = text
        label = ""
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"cannot read fan from {text!r}: {exc}") from None
    try:
        return Fan(data["rays"], data["max_cones"], data.get("names"), label=data.get("label", label))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"fan JSON needs 'rays' and 'max_cones': {exc}") from None


# ---------------------------------------------------------------------------
# validation


def validate(fan: Fan) -> dict:
    """Report {smooth, complete, simplicial}; raise on malformed rays."""
    for i, r in enumerate(fan.rays):
        g = 0
        for a in r:
            g = gcd(g, a)
        if g != 1:
            raise NonPrimitiveRay(f"ray {i} = {list(r)} is not primitive")
    if len(set(fan.rays)) != len(fan.rays):
        raise DuplicateRay("rays must be distinct")
    n = fan.dim
    simplicial = all(len(c) == n and det([fan.rays[i] for i in c]) != 0 for c in fan.max_cones)
    smooth = all(len(c) == n and abs(det([fan.rays[i] for i in c])) == 1 for c in fan.max_cones)
    complete = _is_complete(fan) if simplicial else False
    return {"smooth": smooth, "complete": complete, "simplicial": simplicial}


def _is_complete(fan: Fan) -> bool:
    cones = fan.max_cones
    if not cones:
        return False
    walls: dict[tuple, list[int]] = {}
    for k, c in enumerate(cones):
        for i in range(len(c)):
            walls.setdefault(c[:i] + c[i + 1 :], []).append(k)
    if any(len(v) != 2 for v in walls.values()):
        return False
    # the two cones at a wall must lie on opposite sides of it
    for wall, (a, b) in walls.items():
        ra = (set(cones[a]) - set(wall)).pop()
        rb = (set(cones[b]) - set(wall)).pop()
        W = [fan.rays[i] for i in wall]
        if det(W + [fan.rays[ra]]) * det(W + [fan.rays[rb]]) >= 0:
            return False
    seen = {0}
    stack = [0]
    adj: dict[int, list[int]] = {}
    for a, b in walls.values():
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    while stack:
        k = stack.pop()
        for j in adj.get(k, []):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(cones):
        return False
    # a closed pseudomanifold could still wrap around more than once
    n = fan.dim
    v = [Fraction(1, 7 + 3 * k * k) * (-1) ** k + Fraction(k, 101) for k in range(n)]
    hits = 0
    for c in cones:
        Minv = inverse([list(fan.rays[i]) for i in c])
        # v = sum lam_i r_i with all lam_i >= 0
        lam = [sum(v[j] * Minv[j][i] for j in range(n)) for i in range(n)]
        if all(x > 0 for x in lam):
            hits += 1
    return hits == 1


def require_smooth_complete(fan: Fan) -> dict:
    rep = validate(fan)
    if not (rep["smooth"] and rep["complete"]):
        raise FanNotSmoothComplete(f"fan is not smooth and complete: {rep}")
    return rep


# ---------------------------------------------------------------------------
# primitive collections, ideals


def primitive_collections(fan: Fan) -> list[PrimitiveCollection]:
    """Minimal non-faces, found level by level."""
    if "pc" in fan._cache:
        return fan._cache["pc"]
    faces = fan.faces
    out = []
    level = [frozenset([i]) for i in range(fan.nrays)]
    for i in range(fan.nrays):
        if frozenset([i]) not in faces:
            out.append(PrimitiveCollection((i,)))
    level = [s for s in level if s in faces]
    while level:
        cands = set()
        for s in level:
            top = max(s)
            for j in range(top + 1, fan.nrays):
                t = s | {j}
                if all((t - {k}) in faces for k in t):
                    cands.add(t)
        nxt = []
        for t in sorted(cands, key=lambda t: sorted(t)):
            if t in faces:
                nxt.append(t)
            else:
                out.append(PrimitiveCollection(tuple(sorted(t))))
        level = nxt
    out.sort(key=lambda p: (len(p.rays), p.rays))
    fan._cache["pc"] = out
    return out


def affine_codim_condition(fan: Fan) -> bool:
    return len(primitive_collections(fan)) == fan.nrays - fan.dim


def cox_ring(fan: Fan, field: PrimeField | None = None, aux: Sequence[str] = ()) -> GradedRing:
    degrees, _ = class_group_grading(fan)
    cols = [tuple(degrees[k][j] for k in range(fan.q)) for j in range(fan.nrays)]
    return GradedRing(fan.names, cols, field, tuple(aux))


def stanley_reisner_ideal(fan: Fan, ring: GradedRing | None = None) -> list[Polynomial]:
    ring = ring or cox_ring(fan)
    out = []
    for pc in primitive_collections(fan):
        e = [0] * ring.nvars
        for i in pc.rays:
            e[ring.index[fan.names[i]]] = 1
        out.append(ring.monomial(e))
    return out


def irrelevant_ideal(fan: Fan, ring: GradedRing | None = None):
    from .groebner import Ideal

    ring = ring or cox_ring(fan)
    gens = []
    for c in fan.max_cones:
        e = [0] * ring.nvars
        for i in range(fan.nrays):
            if i not in c:
                e[ring.index[fan.names[i]]] = 1
        gens.append(ring.monomial(e))
    return Ideal(gens, ring)


def dehomogenizing_ideal(fan: Fan, rng: random.Random, ring: GradedRing | None = None):
    """One random affine form sum(lambda_j x_j) - 1 per primitive collection."""
    from .groebner import Ideal

    if not affine_codim_condition(fan):
        raise ConditionFailed(
            f"{len(primitive_collections(fan))} primitive collections but m - n = {fan.nrays - fan.dim}"
        )
    ring = ring or cox_ring(fan)
    gens = []
    for pc in primitive_collections(fan):
        f = -ring.one()
        for i in pc.rays:
            f = f + ring.gen(fan.names[i]).scale(ring.field.random_nonzero(rng))
        gens.append(f)
    return Ideal(gens, ring)


# ---------------------------------------------------------------------------
# grading


def class_group_grading(fan: Fan) -> tuple[list[list[int]], list[list[int]]]:
    """(q x m degree matrix, n x m linear relations).

    The classes of the rays outside the first maximal cone form the basis of
    Pic; a ray tau of that cone has degree -(<m_tau, v_rho>)_rho, where m_tau
    is the dual basis vector of the cone.
    """
    if "grading" in fan._cache:
        return fan._cache["grading"]
    sigma = fan.sigma0
    n, m = fan.dim, fan.nrays
    if len(sigma) != n or abs(det([fan.rays[i] for i in sigma])) != 1:
        raise FanNotSmoothComplete("the first maximal cone is not smooth")
    A = [list(fan.rays[i]) for i in sigma]  # rows v_tau
    Ainv = integer_inverse(A)  # columns m_tau: <m_tau, v_sigma> = delta
    dual = [[Ainv[r][c] for r in range(n)] for c in range(n)]
    outside = fan.outside
    deg = [[0] * m for _ in range(len(outside))]
    for k, rho in enumerate(outside):
        deg[k][rho] = 1
    for t, tau in enumerate(sigma):
        for k, rho in enumerate(outside):
            deg[k][tau] = -sum(a * b for a, b in zip(dual[t], fan.rays[rho]))
    relations = [[sum(a * b for a, b in zip(mv, fan.rays[j])) for j in range(m)] for mv in dual]
    fan._cache["grading"] = (deg, relations)
    return deg, relations


def ray_degrees(fan: Fan) -> list[tuple[int, ...]]:
    deg, _ = class_group_grading(fan)
    return [tuple(deg[k][j] for k in range(fan.q)) for j in range(fan.nrays)]


def representative(D: Sequence[int], fan: Fan) -> list[int]:
    """Torus-invariant divisor sum a_rho D_rho with class D (supported off sigma_0)."""
    a = [0] * fan.nrays
    for k, rho in enumerate(fan.outside):
        a[rho] = int(D[k])
    return a


def is_nef(D: Sequence[int], fan: Fan) -> bool:
    """Cone-wise basepoint-freeness test."""
    a = representative(D, fan)
    for c in fan.max_cones:
        inv = fan._cache.get(("inv", c))
        if inv is None:
            inv = inverse([fan.rays[i] for i in c])
            fan._cache[("inv", c)] = inv
        # m with <m, v_i> = -a_i for i in c:  m = A^{-1} (-a_c)
        rhs = [-a[i] for i in c]
        mvec = [sum(inv[r][k] * rhs[k] for k in range(len(c))) for r in range(fan.dim)]
        for j, v in enumerate(fan.rays):
            if sum(x * y for x, y in zip(mvec, v)) < -a[j]:
                return False
    return True


def nef_basis(fan: Fan, bound: int = 3, max_bound: int = 9) -> list[tuple[int, ...]]:
    """A unimodular basis of Pic made of nef classes, searched in growing boxes."""
    if "nef" in fan._cache:
        return fan._cache["nef"]
    q = fan.q
    b = 1
    while b <= max(bound, max_bound):
        cands = [
            c
            for c in product(range(-b, b + 1), repeat=q)
            if any(c) and is_nef(c, fan)
        ]
        # small, then unit-like vectors first; deterministic tie break
        cands.sort(key=lambda c: (sum(abs(x) for x in c), sum(1 for x in c if x), [-x for x in c]))
        chosen: list[tuple[int, ...]] = []
        for c in cands:
            trial = chosen + [c]
            if _rank(trial) == len(trial) and _saturated(trial):
                chosen = trial
                if len(chosen) == q:
                    break
        if len(chosen) == q:
            fan._cache["nef"] = chosen
            return chosen
        for combo in combinations(cands[:40], q):
            if abs(det(combo)) == 1:
                fan._cache["nef"] = list(combo)
                return list(combo)
        b = b + 2 if b < bound else b * 2
    raise NefBasisNotFound(f"no unimodular nef basis with coordinates up to {max_bound}")


def basis_names(fan: Fan, basis: Sequence[Sequence[int]]) -> list[str]:
    """h1..hj for products; h<ray> when a basis class is the class of a ray; else b1..bq."""
    q = len(basis)
    if fan.factors is not None and q == len(fan.factors):
        return [f"h{k + 1}" for k in range(q)] if q > 1 else ["h"]
    names = []
    for k, b in enumerate(basis):
        unit = [i for i in range(q) if b[i]]
        if len(unit) == 1 and b[unit[0]] == 1:
            names.append(f"h{fan.outside[unit[0]]}")
        else:
            names.append(f"b{k + 1}")
    if len(set(names)) != q:
        names = [f"b{k + 1}" for k in range(q)]
    return names


def info(fan: Fan) -> dict:
    """Summary used by the CLI."""
    rep = validate(fan)
    out = {
        "label": fan.label,
        "dimension": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
        "variables": list(fan.names),
        **rep,
    }
    if rep["smooth"] and rep["complete"]:
        pcs = primitive_collections(fan)
        deg, rel = class_group_grading(fan)
        out["primitive_collections"] = [[fan.names[i] for i in p.rays] for p in pcs]
        out["affine_codim_condition"] = affine_codim_condition(fan)
        out["grading"] = {fan.names[j]: [deg[k][j] for k in range(fan.q)] for j in range(fan.nrays)}
        out["linear_relations"] = rel
        try:
            nb = nef_basis(fan)
            out["nef_basis"] = {nm: list(b) for nm, b in zip(basis_names(fan, nb), nb)}
        except NefBasisNotFound as exc:
            out["nef_basis"] = None
            out["nef_error"] = str(exc)
    return out
