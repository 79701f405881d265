"""Gröbner bases over GF(p): normal forms, quotient dimensions, saturation.

Internally a monomial is packed into one Python int::

    key_fields | exponent_fields

The key fields hold nonnegative linear forms of the exponent vector chosen so
that comparing packed ints compares monomials in the requested order; the
exponent fields carry a guard bit each so divisibility is a single
subtract-and-mask.  Both parts are additive, so monomial multiplication is
integer addition.

The default basis engine is F4 (see ``_f4``): S-pairs of lowest sugar are
reduced together as one sparse matrix.  A pair-by-pair Buchberger engine
with the Gebauer–Möller criteria is kept as a reference.  Linear generators
are eliminated by Gaussian elimination before either main loop.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .polyring import GradedRing, Polynomial

INFINITE = float("inf")

_W = 16  # bits per packed field
_FIELD = (1 << _W) - 1
_GUARD_BIT = 1 << (_W - 1)


@dataclass(frozen=True)
class MonomialOrder:
    """``degrevlex``, ``lex`` or ``elim`` (first ``k`` variables eliminated).

    Variables are ranked x_0 > x_1 > ... in every order.  ``elim`` compares
    the total degree in the first k variables, then degrevlex on the first
    block, then degrevlex on the rest.
    """

    kind: str = "degrevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.k <= 0:
            raise ValueError("elimination order needs k >= 1")

    def weight_rows(self, n: int) -> list[list[int]]:
        if self.kind == "lex":
            return [[int(i == j) for i in range(n)] for j in range(n)]
        if self.kind == "degrevlex":
            return _drl_rows(list(range(n)), n)
        k = min(self.k, n)
        return _drl_rows(list(range(k)), n) + _drl_rows(list(range(k, n)), n)


def _drl_rows(block: list[int], n: int) -> list[list[int]]:
    # total degree, then prefix sums S_{b-1}, ..., S_1 over the block
    rows = [[int(i in block) for i in range(n)]]
    for t in range(len(block) - 1, 0, -1):
        members = set(block[:t])
        rows.append([int(i in members) for i in range(n)])
    return rows


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class _Packer:
    """Packs exponent vectors for a fixed variable count and order."""

    def __init__(self, n: int, order: MonomialOrder):
        self.n = n
        self.order = order
        self.rows = order.weight_rows(n)
        self.shift = n * _W
        self.emask = (1 << self.shift) - 1
        self.guard = sum(_GUARD_BIT << (_W * i) for i in range(n))
        # packed image of each unit vector; everything else is a sum of these
        self.unit = []
        for i in range(n):
            key = 0
            for row in self.rows:
                key = (key << _W) | row[i]
            self.unit.append((key << self.shift) | (1 << (_W * (n - 1 - i))))
        self.var_rank = sorted(range(n), key=lambda i: self.unit[i], reverse=True)

    def pack(self, e: Sequence[int]) -> int:
        m = 0
        for i, a in enumerate(e):
            if a:
                if a >= _GUARD_BIT:
                    raise OverflowError("exponent too large for packed monomials")
                m += a * self.unit[i]
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        lo = m & self.emask
        n = self.n
        return tuple((lo >> (_W * (n - 1 - i))) & _FIELD for i in range(n))

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return (((b & self.emask) | g) - (a & self.emask)) & g == g

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([x if x > y else y for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.unpack(a), self.unpack(b)
        return not any(x and y for x, y in zip(ea, eb))

    def degree(self, m: int) -> int:
        return sum(self.unpack(m))


# ---------------------------------------------------------------------------
# internal polynomials: dict packed-monomial -> coeff, plus sorted views


def _lm(f: dict) -> int:
    return max(f)


def _monic(f: dict, p: int) -> dict:
    c = f[max(f)]
    if c == 1:
        return f
    inv = pow(c, -1, p)
    return {m: v * inv % p for m, v in f.items()}


class _Basis:
    """Growing list of monic polynomials with cached leading data."""

    def __init__(self, packer: _Packer, p: int):
        self.pk = packer
        self.p = p
        self.polys: list[dict] = []
        self.tails: list[list[tuple[int, int]]] = []
        self.lms: list[int] = []
        self.lolm: list[int] = []
        self.sugar: list[int] = []
        self.alive: list[bool] = []

    def add(self, f: dict, sugar: int) -> int:
        lm = max(f)
        self.polys.append(f)
        self.tails.append([(m, c) for m, c in f.items() if m != lm])
        self.lms.append(lm)
        self.lolm.append(lm & self.pk.emask)
        self.sugar.append(sugar)
        self.alive.append(True)
        return len(self.polys) - 1

    def find_reducer(self, m: int) -> int:
        lo = (m & self.pk.emask) | self.pk.guard
        g = self.pk.guard
        lolm = self.lolm
        alive = self.alive
        for i in range(len(lolm)):
            if alive[i] and (lo - lolm[i]) & g == g:
                return i
        return -1


def _reduce(f: dict, basis: _Basis, full: bool) -> dict:
    """Reduce f (consumed) by the live basis elements.

    With ``full`` every term is reduced; otherwise stop at the first
    irreducible leading term.
    """
    p = basis.p
    heap = [-m for m in f]
    heapq.heapify(heap)
    out = {}
    lms = basis.lms
    tails = basis.tails
    find = basis.find_reducer
    push = heapq.heappush
    pop = heapq.heappop
    while heap:
        m = -pop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        i = find(m)
        if i < 0:
            out[m] = c
            if not full:
                # remaining terms untouched
                out.update(f)
                return out
            continue
        shift = m - lms[i]
        for tm, tc in tails[i]:
            mm = tm + shift
            old = f.get(mm)
            if old is None:
                v = (-c * tc) % p
                if v:
                    f[mm] = v
                    push(heap, -mm)
            else:
                v = (old - c * tc) % p
                if v:
                    f[mm] = v
                else:
                    del f[mm]
    return out


def _spoly(i: int, j: int, basis: _Basis) -> tuple[dict, int]:
    pk = basis.pk
    p = basis.p
    lcm = pk.lcm(basis.lms[i], basis.lms[j])
    si = lcm - basis.lms[i]
    sj = lcm - basis.lms[j]
    out: dict = {}
    for m, c in basis.tails[i]:
        out[m + si] = c
    for m, c in basis.tails[j]:
        mm = m + sj
        v = (out.get(mm, 0) - c) % p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    sugar = max(basis.sugar[i] + pk.degree(si), basis.sugar[j] + pk.degree(sj))
    return out, sugar


def _buchberger(gens: list[dict], packer: _Packer, p: int) -> list[dict]:
    """Reduced Gröbner basis of monic internal polynomials."""
    basis = _Basis(packer, p)
    pk = packer
    # sugar selection suits degree orders; lex-type orders take the smallest lcm
    use_sugar = packer.order.kind == "degrevlex"
    # pairs: heap of (sugar, lcm, i, j)
    pairs: list[tuple[int, int, int, int]] = []
    order = sorted(gens, key=lambda f: max(f))
    pending = [(f, max(pk.degree(m) for m in f)) for f in order]

    def insert(h: int):
        # Gebauer–Möller update for new element h
        nonlocal pairs
        lmh = basis.lms[h]
        cand = {}
        for i in range(h):
            if basis.alive[i]:
                cand[i] = pk.lcm(basis.lms[i], lmh)
        # criterion M / F: drop pairs whose lcm is divisible by another's lcm
        keep = {}
        items = sorted(cand.items(), key=lambda t: t[1])
        for i, lc in items:
            dominated = False
            for j, lj in keep.items():
                if pk.divides(lj, lc):
                    dominated = True
                    break
            if not dominated:
                keep[i] = lc
        newpairs = []
        for i, lc in keep.items():
            # product criterion
            if lc == basis.lms[i] + lmh:
                continue
            si = basis.sugar[i] + pk.degree(lc - basis.lms[i])
            sh = basis.sugar[h] + pk.degree(lc - lmh)
            newpairs.append((max(si, sh) if use_sugar else 0, lc, i, h))
        # criterion B: drop old pairs (i, j) with lm_h | lcm and lcm(i,h), lcm(j,h) != lcm
        filtered = []
        for s, lc, i, j in pairs:
            if basis.alive[i] and basis.alive[j] and pk.divides(lmh, lc):
                lih = pk.lcm(basis.lms[i], lmh)
                ljh = pk.lcm(basis.lms[j], lmh)
                if lih != lc and ljh != lc:
                    continue
            filtered.append((s, lc, i, j))
        pairs = filtered + newpairs
        heapq.heapify(pairs)
        # elements whose leading monomial is a multiple of lm_h are redundant
        for i in range(h):
            if basis.alive[i] and pk.divides(lmh, basis.lms[i]):
                basis.alive[i] = False

    for f, s in pending:
        r = _reduce(dict(f), basis, full=True)
        if not r:
            continue
        r = _monic(r, p)
        if max(r) & packer.emask == 0:
            return [{0: 1}]
        insert(basis.add(r, s))

    while pairs:
        s, lc, i, j = heapq.heappop(pairs)
        if not (basis.alive[i] and basis.alive[j]):
            # a dead element's pairs are still valid S-pairs (its multiple
            # replaced it), keep them for correctness
            pass
        sp, sugar = _spoly(i, j, basis)
        if not sp:
            continue
        r = _reduce(sp, basis, full=True)
        if not r:
            continue
        r = _monic(r, p)
        if max(r) & packer.emask == 0:
            return [{0: 1}]
        insert(basis.add(r, sugar))

    return _interreduce([basis.polys[i] for i in range(len(basis.polys)) if basis.alive[i]], packer, p)


def _interreduce(polys: list[dict], packer: _Packer, p: int) -> list[dict]:
    polys = sorted(polys, key=lambda f: max(f))
    # drop elements whose lm is divisible by another lm
    kept: list[dict] = []
    for f in polys:
        lm = max(f)
        if any(packer.divides(max(g), lm) for g in kept):
            continue
        kept.append(f)
    out = []
    for idx, f in enumerate(kept):
        others = _Basis(packer, p)
        for j, g in enumerate(kept):
            if j != idx:
                others.add(g, 0)
        lm = max(f)
        tail = {m: c for m, c in f.items() if m != lm}
        red = _reduce(tail, others, full=True)
        red[lm] = f[lm]
        out.append(_monic(red, p))
    out.sort(key=lambda f: max(f), reverse=True)
    return out


# ---------------------------------------------------------------------------
# linear preprocessing


def _linear_split(gens: list[dict], packer: _Packer, p: int):
    """Gaussian elimination on the affine-linear generators.

    Returns (pivot rows, remaining generators with the pivot variables
    substituted) or None when a nonzero constant turns up.
    """
    n = packer.n
    unit = packer.unit
    var_of = {unit[i]: i for i in range(n)}
    rows: dict[int, dict] = {}  # pivot var -> monic row (var -> coeff, -1 -> const)
    rest = list(gens)
    changed = True
    while changed:
        changed = False
        nonlin = []
        for f in rest:
            if all(m == 0 or m in var_of for m in f):
                row = {(-1 if m == 0 else var_of[m]): c for m, c in f.items()}
                row = _reduce_row(row, rows, p)
                if not row:
                    continue
                piv = _row_pivot(row, packer)
                if piv == -1:
                    return None
                inv = pow(row[piv], -1, p)
                row = {k: v * inv % p for k, v in row.items()}
                for k in list(rows):
                    r = rows[k]
                    if piv in r:
                        c = r[piv]
                        for kk, vv in row.items():
                            val = (r.get(kk, 0) - c * vv) % p
                            if val:
                                r[kk] = val
                            else:
                                r.pop(kk, None)
                rows[piv] = row
                changed = True
            else:
                nonlin.append(f)
        if rows:
            subbed = []
            for f in nonlin:
                g = _substitute(f, rows, packer, p)
                if g:
                    subbed.append(g)
            if changed:
                rest = subbed
                continue
            nonlin = subbed
        rest = nonlin
    return rows, rest


def _row_pivot(row: dict, packer: _Packer) -> int:
    best = -1
    for v in row:
        if v >= 0 and (best < 0 or packer.unit[v] > packer.unit[best]):
            best = v
    return best


def _reduce_row(row: dict, rows: dict, p: int) -> dict:
    row = dict(row)
    for piv in [v for v in row if v in rows]:
        c = row.get(piv)
        if not c:
            continue
        for kk, vv in rows[piv].items():
            val = (row.get(kk, 0) - c * vv) % p
            if val:
                row[kk] = val
            else:
                row.pop(kk, None)
    return {k: v for k, v in row.items() if v}


def _substitute(f: dict, rows: dict, packer: _Packer, p: int) -> dict:
    """Replace pivot variables x_v by -(tail of row v)."""
    n = packer.n
    # replacement polynomial for each pivot: x_v = -sum_{k != v} row[k] * x_k
    repl = {}
    for v, row in rows.items():
        poly = {}
        for k, c in row.items():
            if k == v:
                continue
            m = 0 if k == -1 else packer.unit[k]
            poly[m] = (-c) % p
        repl[v] = poly
    out: dict = {}
    for m, c in f.items():
        e = packer.unpack(m)
        if not any(e[v] for v in repl):
            out[m] = (out.get(m, 0) + c) % p
            continue
        base = packer.pack([0 if (i in repl) else a for i, a in enumerate(e)])
        acc = {base: c}
        for v in repl:
            for _ in range(e[v]):
                nxt: dict = {}
                for m1, c1 in acc.items():
                    for m2, c2 in repl[v].items():
                        mm = m1 + m2
                        nxt[mm] = (nxt.get(mm, 0) + c1 * c2) % p
                acc = nxt
        for mm, cc in acc.items():
            out[mm] = (out.get(mm, 0) + cc) % p
    return {m: c for m, c in out.items() if c}


def _rows_to_polys(rows: dict, packer: _Packer) -> list[dict]:
    out = []
    for v, row in rows.items():
        out.append({(0 if k == -1 else packer.unit[k]): c for k, c in row.items()})
    return out


# ---------------------------------------------------------------------------
# public API


class Ideal:
    """Finitely generated ideal of a :class:`GradedRing`."""

    def __init__(self, generators: Iterable[Polynomial], ring: GradedRing | None = None):
        gens = [g for g in generators]
        if ring is None:
            if not gens:
                raise ValueError("empty ideal needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring.names != ring.names:
                raise ValueError("all generators must live in the same ring")
        self.ring = ring
        self.generators = [g for g in gens if not g.is_zero()]

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.generators + [self.ring.embed(g) for g in other.generators], self.ring)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_unit(self) -> bool:
        return groebner_basis(self).is_unit()

    def contains(self, f: Polynomial) -> bool:
        return ideal_membership(f, self)


class GroebnerBasis:
    """Reduced Gröbner basis (monic elements) with respect to ``order``."""

    def __init__(self, ring: GradedRing, order: MonomialOrder, packed: list[dict], packer: _Packer):
        self.ring = ring
        self.order = order
        self._packed = packed
        self._pk = packer
        self.elements = [_to_poly(f, ring, packer) for f in packed]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.elements]}, {self.order.kind})"

    def is_unit(self) -> bool:
        return len(self._packed) == 1 and max(self._packed[0]) == 0

    def leading_exponents(self) -> list[tuple[int, ...]]:
        return [self._pk.unpack(max(f)) for f in self._packed]

    def leading_monomials(self) -> list[Polynomial]:
        return [self.ring.monomial(e) for e in self.leading_exponents()]

    def ideal(self) -> Ideal:
        return Ideal(self.elements, self.ring)


def _to_internal(f: Polynomial, packer: _Packer) -> dict:
    return {packer.pack(e): c for e, c in f.terms.items()}


def _to_poly(f: dict, ring: GradedRing, packer: _Packer) -> Polynomial:
    return Polynomial(ring, {packer.unpack(m): c for m, c in f.items()})


def _f4_basis(gens: list[dict], packer: _Packer, p: int) -> list[dict]:
    import numpy as np

    from ._f4 import F4

    n = packer.n
    exps = [[packer.unpack(m) for m in f] for f in gens]
    active = sorted({i for f in exps for e in f for i, a in enumerate(e) if a})
    if not active:
        return [{0: 1}]
    W = np.array(packer.rows, dtype=np.int64)[:, active]
    eng = F4(len(active), W.tolist(), p)
    polys = []
    for f, ex in zip(gens, exps):
        E = np.array([[e[i] for i in active] for e in ex], dtype=np.int32)
        C = np.array(list(f.values()), dtype=np.int64)
        polys.append(eng.make_poly(E, C, int(E.sum(axis=1).max())))
    out = []
    for g in eng.groebner(polys):
        d = {}
        for row, c in zip(g.E.tolist(), g.C.tolist()):
            e = [0] * n
            for i, a in zip(active, row):
                e[i] = a
            d[packer.pack(e)] = c
        out.append(d)
    return out


def _compute(gens: list[dict], packer: _Packer, p: int, algorithm: str = "f4") -> list[dict]:
    gens = [g for g in gens if g]
    if not gens:
        return []
    split = _linear_split(gens, packer, p)
    if split is None:
        return [{0: 1}]
    rows, rest = split
    rest = [_monic(f, p) for f in rest if f]
    if any(max(f) & packer.emask == 0 for f in rest):
        return [{0: 1}]
    if not rest:
        gb = []
    elif algorithm == "f4":
        gb = _f4_basis(rest, packer, p)
    else:
        gb = _buchberger(rest, packer, p)
    if gb == [{0: 1}]:
        return gb
    # pivot rows have pairwise coprime linear leading terms, and none of the
    # pivot variables occurs in gb; tail-reduce them to get the reduced basis
    lin = _rows_to_polys(rows, packer)
    if gb:
        other = _Basis(packer, p)
        for g in gb:
            other.add(g, 0)
        reduced = []
        for f in lin:
            lm = max(f)
            tail = {m: c for m, c in f.items() if m != lm}
            red = _reduce(tail, other, full=True)
            red[lm] = 1
            reduced.append(red)
        lin = reduced
    out = gb + lin
    out.sort(key=lambda f: max(f), reverse=True)
    return out


def groebner_basis(I: Ideal, order: MonomialOrder = DEGREVLEX, algorithm: str = "f4") -> GroebnerBasis:
    """Reduced Gröbner basis of I.

    ``algorithm`` is ``"f4"`` (matrix reduction, the default) or
    ``"buchberger"`` (pair-by-pair reduction); both give the same basis.
    """
    if algorithm not in ("f4", "buchberger"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    ring = I.ring
    packer = _Packer(ring.nvars, order)
    gens = [_to_internal(g, packer) for g in I.generators]
    return GroebnerBasis(ring, order, _compute(gens, packer, ring.p, algorithm), packer)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of f on division by G (zero iff f is in the ideal)."""
    pk = G._pk
    basis = _Basis(pk, G.ring.p)
    for g in G._packed:
        basis.add(g, 0)
    r = _reduce(_to_internal(G.ring.embed(f), pk), basis, full=True)
    return _to_poly(r, G.ring, pk)


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    return normal_form(f, groebner_basis(I)).is_zero()


def _standard_monomial_count(lead: list[tuple[int, ...]], n: int, cap: int | None = None):
    if not lead:
        return INFINITE if n else 1
    if any(not any(e) for e in lead):
        return 0
    bounds = []
    for i in range(n):
        pure = [e[i] for e in lead if e[i] and all(e[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    # count monomials below the staircase, variable by variable
    lead = sorted(set(lead))

    def count(i: int, prefix: list[int], active: list[tuple[int, ...]]) -> int:
        if i == n:
            return 1
        total = 0
        for a in range(bounds[i]):
            prefix.append(a)
            # leading terms still able to divide a monomial with this prefix
            nxt = [e for e in active if e[i] <= a]
            if any(all(e[j] == 0 for j in range(i + 1, n)) for e in nxt):
                prefix.pop()
                break
            total += count(i + 1, prefix, nxt)
            prefix.pop()
        return total

    return count(0, [], lead)


def quotient_dim(G: GroebnerBasis):
    """dim_k of R/<G>, or INFINITE."""
    return _standard_monomial_count(G.leading_exponents(), G.ring.nvars)


def krull_dimension(G: GroebnerBasis) -> int:
    """Dimension of V(<G>) in affine space; -1 for the unit ideal."""
    if G.is_unit():
        return -1
    n = G.ring.nvars
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in G.leading_exponents()]
    best = 0
    # largest set of variables containing no leading-term support
    for size in range(n, 0, -1):
        for S in combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return best


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^oo via I + (1 - t f) and elimination of t."""
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    ring = I.ring
    tname = _fresh_name(ring, "_t")
    big = GradedRing(
        (tname,) + ring.graded_names,
        [(0,) * ring.q] + list(ring.degrees),
        ring.field,
        ring.aux_names,
    )
    gens = [big.embed(g) for g in I.generators]
    t = big.gen(tname)
    gens.append(big.one() - t * big.embed(f))
    G = groebner_basis(Ideal(gens, big), MonomialOrder("elim", 1))
    out = []
    for g in G.elements:
        if not any(e[0] for e in g.terms):
            out.append(_project(g, ring, big))
    return Ideal(out, ring)


def _project(g: Polynomial, ring: GradedRing, big: GradedRing) -> Polynomial:
    pos = [big.index[name] for name in ring.names]
    return Polynomial(ring, {tuple(e[i] for i in pos): c for e, c in g.terms.items()})


def _fresh_name(ring: GradedRing, stem: str) -> str:
    name = stem
    k = 0
    while name in ring.index:
        k += 1
        name = f"{stem}{k}"
    return name


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1 - t)*J and elimination of t."""
    ring = I.ring
    tname = _fresh_name(ring, "_t")
    big = GradedRing(
        (tname,) + ring.graded_names,
        [(0,) * ring.q] + list(ring.degrees),
        ring.field,
        ring.aux_names,
    )
    t = big.gen(tname)
    gens = [t * big.embed(g) for g in I.generators]
    gens += [(big.one() - t) * big.embed(g) for g in J.generators]
    G = groebner_basis(Ideal(gens, big), MonomialOrder("elim", 1))
    return Ideal(
        [_project(g, ring, big) for g in G.elements if not any(e[0] for e in g.terms)], ring
    )


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    GI = groebner_basis(I)
    GJ = groebner_basis(J)
    return {frozenset(g.terms.items()) for g in GI} == {frozenset(g.terms.items()) for g in GJ}


def saturate_by_ideal(I: Ideal, B: Ideal) -> Ideal:
    """I : B^oo as the intersection of I : g^oo over the generators g of B."""
    gens = [g for g in B.generators if not g.is_zero()]
    if not gens:
        raise ValueError("cannot saturate by the zero ideal")
    J = saturate(I, gens[0])
    for g in gens[1:]:
        if groebner_basis(J).is_unit():
            break
        J = intersect(J, saturate(I, g))
    return Ideal(groebner_basis(J).elements, I.ring)


def is_groebner(G: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    pk = G._pk
    p = G.ring.p
    basis = _Basis(pk, p)
    for g in G._packed:
        basis.add(g, 0)
    for i, j in combinations(range(len(G._packed)), 2):
        sp, _ = _spoly(i, j, basis)
        if sp and _reduce(sp, basis, full=True):
            return False
    return True


__all__ = [
    "INFINITE",
    "MonomialOrder",
    "DEGREVLEX",
    "LEX",
    "Ideal",
    "GroebnerBasis",
    "groebner_basis",
    "normal_form",
    "ideal_membership",
    "quotient_dim",
    "krull_dimension",
    "saturate",
    "saturate_by_ideal",
    "intersect",
    "ideals_equal",
    "is_groebner",
]
