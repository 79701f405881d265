"""Segre, Chern-Fulton and Chern-Schwartz-MacPherson classes of subschemes.

Projective degrees are counted as dimensions of zero-dimensional quotients
R[T]/(P_1..P_i, 1 - T*sum(theta_l f_l), L_a, L_A); everything else is
arithmetic in the Chow ring.
"""

from __future__ import annotations

import os
import random
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Sequence

from .chow import ChowClass, ChowRing, build_chow_ring, invert_unit
from .errors import (
    DegreeNotNef,
    NotCompleteIntersection,
    NotHomogeneous,
    NotZeroDimensional,
    SubsetBlowup,
    ZeroPolynomial,
)
from .fan import Fan, dehomogenizing_ideal, integer_inverse, irrelevant_ideal, is_nef
from .groebner import INFINITE, Ideal, groebner_basis, krull_dimension, quotient_dim, saturate_by_ideal
from .polyring import GradedRing, Polynomial, multidegree

RETRIES = 3
SUBSET_CAP = 64
PAIRINGS = ("dual", "literal")


@dataclass
class Subscheme:
    """V(f_0..f_r) in X_Sigma with all f_i of one nef degree alpha."""

    fan: Fan
    chow: ChowRing
    ring: GradedRing
    generators: list[Polynomial]
    alpha: tuple[int, ...] | None
    original: list[Polynomial] = field(default_factory=list)

    @property
    def r(self) -> int:
        return len(self.generators) - 1

    @property
    def is_whole_space(self) -> bool:
        return not self.generators

    @property
    def is_empty(self) -> bool:
        return any(f.is_constant() for f in self.generators)

    def alpha_class(self) -> ChowClass:
        if self.alpha is None:
            return self.chow.ZERO
        return self.chow.divisor(self.alpha)


@dataclass
class DegreeTable:
    """[Y_0]..[Y_n] plus the raw counts gamma_i^(iota) that produced them."""

    classes: list[ChowClass]
    gammas: dict[int, list[int]]
    codim: int
    pairing: str

    def total(self) -> ChowClass:
        out = self.classes[0].ring.ZERO
        for c in self.classes:
            out = out + c
        return out

    def to_json(self) -> dict:
        return {
            "codim": self.codim,
            "pairing": self.pairing,
            "gamma": {str(i): g for i, g in sorted(self.gammas.items())},
            "Y": {str(i): str(c) for i, c in enumerate(self.classes)},
        }


def _rng(rng) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)


def _nef_coords(chow: ChowRing, D: Sequence[int]) -> tuple[int, ...]:
    Binv = integer_inverse(chow.basis)
    q = chow.q
    return tuple(sum(D[i] * Binv[i][k] for i in range(q)) for k in range(q))


def _from_coords(chow: ChowRing, c: Sequence[int]) -> tuple[int, ...]:
    q = chow.q
    return tuple(sum(c[k] * chow.basis[k][j] for k in range(q)) for j in range(q))


def prepare_generators(
    gens: Sequence[Polynomial], fan: Fan, chow: ChowRing | None = None, search: int = 4
) -> Subscheme:
    """Bring the generators to one common nef degree.

    Zero generators are dropped; an empty list describes V = X.
    """
    chow = chow or build_chow_ring(fan)
    gens = [f for f in gens if not f.is_zero()]
    if not gens:
        from .fan import cox_ring

        return Subscheme(fan, chow, cox_ring(fan), [], None, [])
    ring = gens[0].ring
    if any(f.ring != ring for f in gens):
        raise NotHomogeneous("generators live in different rings")
    degs = [multidegree(f) for f in gens]
    original = list(gens)
    if any(f.is_constant() for f in gens):
        # V is empty; one unit generator of degree 0 says so
        return Subscheme(fan, chow, ring, [ring.one()], tuple([0] * chow.q), original)
    if len(set(degs)) == 1 and is_nef(degs[0], fan):
        return Subscheme(fan, chow, ring, _dedupe(gens), degs[0], original)
    coords = [_nef_coords(chow, d) for d in degs]
    top = tuple(max(c[k] for c in coords) for k in range(chow.q))
    for bump in _bumps(chow.q, search):
        beta = _from_coords(chow, tuple(t + b for t, b in zip(top, bump)))
        if not is_nef(beta, fan):
            continue
        fill = [ring.monomials_of_degree(tuple(b - a for a, b in zip(d, beta))) for d in degs]
        if not all(fill):
            continue
        out = []
        for f, mons in zip(gens, fill):
            for e in mons:
                out.append(ring.monomial(e) * f)
        return Subscheme(fan, chow, ring, _dedupe(out), beta, original)
    raise DegreeNotNef(f"no nef common degree within {search} steps of {top}")


def _bumps(q: int, bound: int):
    for total in range(bound + 1):
        for b in product(range(total + 1), repeat=q):
            if sum(b) == total:
                yield b


def _dedupe(polys: list[Polynomial]) -> list[Polynomial]:
    seen = set()
    out = []
    for f in polys:
        key = frozenset(f.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# projective degrees


def codimension(V: Subscheme, rng: random.Random) -> int:
    """n - dim V via the affine chart cut out by a dehomogenizing ideal."""
    n = V.fan.dim
    if V.is_whole_space:
        return 0
    if V.is_empty:
        return n + 1
    gens = V.original or V.generators
    I = Ideal(gens, V.ring) + dehomogenizing_ideal(V.fan, rng, V.ring)
    G = groebner_basis(I)
    return n - krull_dimension(G)


def _variable_order(ring: GradedRing, gens: Sequence[Polynomial]) -> list[str]:
    """Graded names sorted by decreasing largest exponent in the generators."""
    top = [0] * ring.ngraded
    for f in gens:
        for e in f.terms:
            for i in range(ring.ngraded):
                if e[i] > top[i]:
                    top[i] = e[i]
    order = sorted(range(ring.ngraded), key=lambda i: (-top[i], i))
    return [ring.graded_names[i] for i in order]


def _task_seed(base: int, iota: int, i: int, attempt: int) -> str:
    return f"{base}:{iota}:{i}:{attempt}"


def _gamma(args) -> int:
    """One projective degree: the length of a zero-dimensional quotient."""
    fan, chow, gens, iota, omega, base = args
    ring = gens[0].ring
    names = _variable_order(ring, gens)
    tname = "T"
    while tname in ring.index:
        tname = "_" + tname
    pos = [ring.graded_names.index(nm) for nm in names]
    big = GradedRing([tname] + names, [(0,) * ring.q] + [ring.degrees[i] for i in pos], ring.field)
    p = ring.p
    for attempt in range(RETRIES + 1):
        rng = random.Random(_task_seed(base, iota, omega, attempt))
        eq = []
        for _ in range(iota):
            eq.append(_combo(gens, rng, p))
        T = big.gen(tname)
        eq = [big.embed(f) for f in eq]
        eq.append(big.one() - T * big.embed(_combo(gens, rng, p)))
        _, L = chow.complementary_data(chow.omega[iota][omega], rng, ring)
        eq += [big.embed(f) for f in L.generators]
        eq += dehomogenizing_ideal(fan, rng, big).generators
        g = quotient_dim(groebner_basis(Ideal(eq, big)))
        if g != INFINITE:
            return int(g)
    raise NotZeroDimensional(f"projective degree ({iota}, {omega}) stayed infinite after {RETRIES} retries")


def _combo(gens, rng, p) -> Polynomial:
    ring = gens[0].ring
    out: dict = {}
    for f in gens:
        c = rng.randrange(1, p)
        for e, v in f.terms.items():
            out[e] = (out.get(e, 0) + c * v) % p
    return Polynomial(ring, {e: v for e, v in out.items() if v})


def projective_degrees(V: Subscheme, rng=None, pairing: str = "dual", workers: int = 1) -> DegreeTable:
    """[Y_iota] for iota = 0..n.

    ``pairing="dual"`` solves the pairing matrix of Omega so that the counts
    are read as intersection numbers; ``"literal"`` uses the counts as
    coefficients directly, which agrees with "dual" whenever Omega is
    orthogonal.
    """
    if pairing not in PAIRINGS:
        raise ValueError(f"pairing must be one of {PAIRINGS}")
    rng = _rng(rng)
    chow = V.chow
    n = V.fan.dim
    if V.is_whole_space:
        return DegreeTable([chow.ONE] + [chow.ZERO] * n, {}, 0, pairing)
    base = rng.getrandbits(64)
    c = codimension(V, random.Random(f"{base}:codim"))
    alpha = V.alpha_class()
    top = min(n, V.r)
    jobs = []
    for iota in range(max(c, 1), top + 1):
        for i in range(len(chow.omega[iota])):
            jobs.append((V.fan, chow, V.generators, iota, i, base))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_gamma, jobs))
    else:
        counts = [_gamma(j) for j in jobs]
    gammas: dict[int, list[int]] = {}
    for job, g in zip(jobs, counts):
        gammas.setdefault(job[3], []).append(g)
    classes = []
    for iota in range(n + 1):
        if iota < c:
            classes.append(alpha**iota)
        elif iota > top:
            classes.append(chow.ZERO)
        else:
            gam = gammas[iota]
            if pairing == "dual":
                Minv = integer_inverse(chow.pairing[iota])
                coef = [sum(Minv[a][b] * gam[b] for b in range(len(gam))) for a in range(len(gam))]
            else:
                coef = gam
            Y = chow.ZERO
            for k, w in zip(coef, chow.omega[iota]):
                Y = Y + chow.monomial(w, k)
            classes.append(Y)
    return DegreeTable(classes, gammas, c, pairing)


def segre_from_table(V: Subscheme, table: DegreeTable) -> ChowClass:
    chow = V.chow
    if V.is_whole_space:
        return chow.ONE
    u = invert_unit(chow.ONE + V.alpha_class())
    acc = chow.ZERO
    power = chow.ONE
    for Y in table.classes:
        acc = acc + Y * power
        power = power * u
    return chow.ONE - u * acc


def segre_class(V: Subscheme, rng=None, pairing: str = "dual", workers: int = 1) -> ChowClass:
    return segre_from_table(V, projective_degrees(V, rng, pairing, workers))


def chern_fulton(V: Subscheme, rng=None, pairing: str = "dual", workers: int = 1) -> ChowClass:
    return V.chow.chern_tangent() * segre_class(V, rng, pairing, workers)


# ---------------------------------------------------------------------------
# singularity subschemes


def jacobian_ideal(f: Polynomial) -> list[Polynomial]:
    """Nonzero partial derivatives of f; f itself lies in their span."""
    ring = f.ring
    return [d for d in (f.diff(i) for i in range(ring.ngraded)) if not d.is_zero()]


def _det(M: list[list[Polynomial]]) -> Polynomial:
    if len(M) == 1:
        return M[0][0]
    out = M[0][0].ring.zero()
    for j in range(len(M)):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = M[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def jacobian_minors(gens: Sequence[Polynomial]) -> list[Polynomial]:
    """All maximal minors of the Jacobian of gens in the Cox variables."""
    ring = gens[0].ring
    J = [[f.diff(i) for i in range(ring.ngraded)] for f in gens]
    k = len(gens)
    out = []
    for cols in combinations(range(ring.ngraded), k):
        d = _det([[row[c] for c in cols] for row in J])
        if not d.is_zero():
            out.append(d)
    return _dedupe(out)


def singularity_subscheme(V: Subscheme, rng=None, saturate: bool = True) -> Ideal:
    """Ideal of the singular locus of V.

    One generator: the partial derivatives.  Several: (I + K) : B^oo with K
    the maximal Jacobian minors; requires a complete intersection.
    """
    gens = V.original or V.generators
    if not gens:
        raise NotCompleteIntersection("V is the whole space")
    ring = gens[0].ring
    if len(gens) == 1:
        I = Ideal(jacobian_ideal(gens[0]), ring)
    else:
        c = codimension(V, _rng(rng))
        if c != len(gens):
            raise NotCompleteIntersection(f"codimension {c} with {len(gens)} generators")
        I = Ideal(list(gens) + jacobian_minors(gens), ring)
    if not saturate:
        return I
    return saturate_by_ideal(I, irrelevant_ideal(V.fan, ring))


# ---------------------------------------------------------------------------
# CSM classes


def _subscheme(gens, fan, chow) -> Subscheme:
    return prepare_generators(gens, fan, chow)


def reduced_monomial_content(f: Polynomial) -> Polynomial:
    """Lower each exponent of the monomial content of f to 1; V(f) is unchanged as a set."""
    lo = [min(e[i] for e in f.terms) for i in range(f.ring.nvars)]
    if all(k <= 1 for k in lo):
        return f
    shift = [k - 1 if k > 1 else 0 for k in lo]
    return f.ring.from_terms({tuple(a - b for a, b in zip(e, shift)): c for e, c in f.terms.items()})


def csm_hypersurface(
    f: Polynomial, fan: Fan, rng=None, pairing: str = "dual", workers: int = 1, chow: ChowRing | None = None
) -> ChowClass:
    chow = chow or build_chow_ring(fan)
    if f.is_zero():
        raise ZeroPolynomial("V(0) is not a hypersurface")
    if f.is_constant():
        return chow.ZERO
    f = reduced_monomial_content(f)
    rng = _rng(rng)
    n = fan.dim
    V = chow.divisor(multidegree(f))
    sV = V * invert_unit(chow.ONE + V)
    Y = _subscheme(jacobian_ideal(f), fan, chow)
    sY = segre_class(Y, rng, pairing, workers)
    acc = sV
    for i in range(n + 1):
        for j in range(n - i + 1):
            part = sY.dimension_part(i + j)
            if part.is_zero():
                continue
            acc = acc + (V**j) * part * (comb(n - i, j) * (-1) ** (n - i))
    return chow.chern_tangent() * acc


def csm(V: Subscheme, rng=None, pairing: str = "dual", workers: int = 1, cap: int = SUBSET_CAP) -> ChowClass:
    """Inclusion/exclusion over products of generator subsets."""
    chow = V.chow
    if V.is_whole_space:
        return chow.chern_tangent()
    gens = V.original or V.generators
    if 2 ** len(gens) > cap:
        warnings.warn(f"{2 ** len(gens) - 1} inclusion/exclusion terms", SubsetBlowup, stacklevel=2)
    rng = _rng(rng)
    base = rng.getrandbits(64)
    out = chow.ZERO
    for size in range(1, len(gens) + 1):
        for S in combinations(range(len(gens)), size):
            g = gens[S[0]]
            for k in S[1:]:
                g = g * gens[k]
            c = csm_hypersurface(g, V.fan, random.Random(f"{base}:{S}"), pairing, workers, chow)
            out = out + c if size % 2 else out - c
    return out


def csm_complete_intersection(
    V: Subscheme, rng=None, pairing: str = "dual", workers: int = 1, verify: bool = False
) -> ChowClass:
    """CSM class of V(f_0..f_r) with V(f_0..f_{r-1}) smooth."""
    chow = V.chow
    if V.is_whole_space:
        return chow.chern_tangent()
    gens = V.original or V.generators
    if any(f.is_constant() for f in gens):
        raise NotCompleteIntersection("a generator is a unit")
    rng = _rng(rng)
    base = rng.getrandbits(64)
    r = len(gens) - 1
    n = V.fan.dim
    c = codimension(V, random.Random(f"{base}:codim"))
    if c != r + 1:
        raise NotCompleteIntersection(f"codimension {c} with {r + 1} generators")
    if verify and r > 0:
        front = prepare_generators(gens[:-1], V.fan, chow)
        Yf = singularity_subscheme(front, random.Random(f"{base}:front"), saturate=False)
        if codimension(prepare_generators(Yf.generators, V.fan, chow), random.Random(f"{base}:fc")) <= n:
            raise NotCompleteIntersection("the first generators do not cut out a smooth scheme")
    Vs = [chow.divisor(multidegree(f)) for f in gens]
    if r == 0:
        Yg = jacobian_ideal(gens[0])
    else:
        Yg = list(gens) + jacobian_minors(gens)
    Y = prepare_generators(Yg, V.fan, chow)
    sY = segre_class(Y, random.Random(f"{base}:Y"), pairing, workers)
    E = chow.ONE
    prodV = chow.ONE
    for D in Vs:
        E = E * (chow.ONE + D)
        prodV = prodV * D
    Vr = Vs[-1]
    inner = chow.ZERO
    for j in range(r + 1):
        for i in range(j + 1):
            inner = inner + (Vr ** (j - i)) * E.part(i) * (comb(r - i, j - i) * (-1) ** i)
    if r % 2:
        inner = -inner
    u = invert_unit(chow.ONE + Vr)
    tw = chow.ZERO
    power = chow.ONE
    for i in range(n + 1):
        tw = tw + sY.part(i) * power * (-1) ** i
        power = power * u
    return chow.chern_tangent() * invert_unit(E) * (prodV + inner * tw)


def csm_smooth_times_singular(
    Z: Sequence[Polynomial], f1: Polynomial, f2: Polynomial, fan: Fan, rng=None, pairing: str = "dual", workers: int = 1
) -> ChowClass:
    """c(Z.V1) + c(Z.V2) - c(Z.V(f1 f2)) for a smooth complete intersection Z."""
    for f in (f1, f2):
        if f.is_zero() or f.is_constant():
            raise NotCompleteIntersection(f"{f} does not define a hypersurface")
    chow = build_chow_ring(fan)
    rng = _rng(rng)
    base = rng.getrandbits(64)
    Z = list(Z)
    out = chow.ZERO
    for k, (g, sign) in enumerate(((f1, 1), (f2, 1), (f1 * f2, -1))):
        W = prepare_generators(Z + [g], fan, chow)
        out = out + csm_complete_intersection(W, random.Random(f"{base}:{k}"), pairing, workers) * sign
    return out


def euler(V: Subscheme, rng=None, pairing: str = "dual", workers: int = 1) -> int:
    if V.is_whole_space:
        return len(V.fan.max_cones)
    return csm(V, rng, pairing, workers).degree()


def default_workers() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)
