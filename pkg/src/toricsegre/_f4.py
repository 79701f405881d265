"""F4-style Gröbner basis engine.

Pairs of equal sugar are processed together.  Symbolic preprocessing
collects reducer rows with vectorised numpy operations; the rows are then
reduced left to right by a compiled sparse kernel that also performs the
echelon step on the new rows.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_CHUNK = 4096


# ---------------------------------------------------------------------------
# compiled kernels


@njit(cache=True)
def _inv(a, p):
    r = 1
    b = a % p
    e = p - 2
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True)
def _reduce_kernel(targets, indptr, cols, vals, pivrow, ncols, p, skip_lead, register):
    """Reduce the target rows by the pivot rows, left to right.

    ``pivrow[c]`` is a row whose leading column is c (coefficient 1) or -1.
    With ``register`` every surviving row is made monic and becomes the
    pivot of its leading column, so the output rows are in echelon form.
    """
    acc = np.zeros(ncols, np.int64)
    piv = pivrow.copy()
    cap = 1024
    ocols = np.empty(cap, np.int64)
    ovals = np.empty(cap, np.int64)
    optr = np.zeros(len(targets) + 1, np.int64)
    nnz = 0
    for k in range(len(targets)):
        r = targets[k]
        start = indptr[r]
        end = indptr[r + 1]
        first = cols[start]
        for t in range(start, end):
            acc[cols[t]] = vals[t]
        lead = -1
        c0 = first + 1 if skip_lead else first
        if skip_lead:
            lead = first
        for c in range(c0, ncols):
            v = acc[c]
            if v == 0:
                continue
            pr = piv[c]
            if pr < 0:
                if lead < 0:
                    lead = c
                continue
            acc[c] = 0
            if pr < len(indptr) - 1:
                s = indptr[pr]
                e = indptr[pr + 1]
                for t in range(s + 1, e):
                    cc = cols[t]
                    acc[cc] = (acc[cc] - v * vals[t]) % p
            else:
                q = pr - (len(indptr) - 1)
                s = optr[q]
                e = optr[q + 1]
                for t in range(s + 1, e):
                    cc = ocols[t]
                    acc[cc] = (acc[cc] - v * ovals[t]) % p
        if lead < 0:
            optr[k + 1] = nnz
            continue
        scale = 1
        if register and not skip_lead:
            scale = _inv(acc[lead], p)
        for c in range(lead, ncols):
            v = acc[c]
            if v != 0:
                if nnz == cap:
                    cap *= 2
                    nc = np.empty(cap, np.int64)
                    nv = np.empty(cap, np.int64)
                    nc[:nnz] = ocols[:nnz]
                    nv[:nnz] = ovals[:nnz]
                    ocols = nc
                    ovals = nv
                ocols[nnz] = c
                ovals[nnz] = v * scale % p
                nnz += 1
                acc[c] = 0
        optr[k + 1] = nnz
        if register and not skip_lead:
            piv[lead] = len(indptr) - 1 + k
    return optr, ocols[:nnz], ovals[:nnz]


# ---------------------------------------------------------------------------
# monomial keys


class _Keys:
    """Hashable, sortable encodings of exponent rows."""

    def __init__(self, n: int):
        self.n = n
        self.bits = 1

    def fit(self, maxexp: int) -> bool:
        """Widen the encoding if needed; True if keys must be recomputed."""
        need = max(1, int(maxexp).bit_length())
        if need > self.bits:
            self.bits = need
            return True
        return False

    def __call__(self, E: np.ndarray) -> np.ndarray:
        b = self.bits
        if b * self.n <= 62:
            w = np.left_shift(np.int64(1), np.arange(self.n, dtype=np.int64) * b)
            return E.astype(np.int64) @ w
        E = np.ascontiguousarray(E, dtype=np.int32)
        return E.view(np.dtype((np.void, 4 * self.n))).ravel()


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Exponent rows sorted descending in the engine order, with coefficients."""

    __slots__ = ("E", "C", "lm", "sugar", "lmv")

    def __init__(self, E: np.ndarray, C: np.ndarray, sugar: int):
        self.E = E
        self.C = C
        self.lmv = E[0]
        self.lm = tuple(int(a) for a in E[0])
        self.sugar = sugar

    def __len__(self):
        return len(self.C)


class F4:
    def __init__(self, n: int, weights: list[list[int]], p: int):
        self.n = n
        self.p = p
        self.W = np.array(weights, dtype=np.int64).reshape(-1, n)

    # -- ordering helpers

    def sort_desc(self, E: np.ndarray) -> np.ndarray:
        if len(E) == 0:
            return np.zeros(0, dtype=np.int64)
        K = E.astype(np.int64) @ self.W.T
        return np.lexsort(K.T[::-1])[::-1]

    def make_poly(self, E: np.ndarray, C: np.ndarray, sugar: int, monic: bool = True) -> Poly:
        idx = self.sort_desc(E)
        E = np.ascontiguousarray(E[idx], dtype=np.int32)
        C = np.asarray(C, dtype=np.int64)[idx] % self.p
        if monic and C[0] != 1:
            C = C * pow(int(C[0]), -1, self.p) % self.p
        return Poly(E, C, sugar)

    # -- main loop

    def groebner(self, polys: list[Poly]) -> list[Poly]:
        self.basis: list[Poly] = []
        self.alive: list[bool] = []
        self.pairs: list[tuple[int, tuple, int, int]] = []
        inputs = sorted(polys, key=lambda f: f.sugar)
        while inputs or self.pairs:
            d = min([f.sugar for f in inputs] + [s for s, _, _, _ in self.pairs])
            chosen = [pr for pr in self.pairs if pr[0] == d]
            self.pairs = [pr for pr in self.pairs if pr[0] != d]
            fresh = [f for f in inputs if f.sugar == d]
            inputs = [f for f in inputs if f.sugar != d]
            new = self._step(chosen, fresh, d)
            for f in new:
                if not f.lm or not any(f.lm):
                    return [self.make_poly(np.zeros((1, self.n), np.int32), np.ones(1), 0)]
            for f in sorted(new, key=lambda f: self._key(f.lm)):
                self._update(f)
        live = [f for f, a in zip(self.basis, self.alive) if a]
        return self.interreduce(live)

    def _key(self, lm: tuple) -> tuple:
        return tuple((self.W @ np.array(lm, dtype=np.int64)).tolist())

    def _update(self, f: Poly):
        """Gebauer–Möller update for the new element f."""
        h = len(self.basis)
        self.basis.append(f)
        self.alive.append(True)
        lmh = f.lm
        cand = []
        for i in range(h):
            if self.alive[i]:
                lc = tuple(max(a, b) for a, b in zip(self.basis[i].lm, lmh))
                cand.append((i, lc))
        cand.sort(key=lambda t: (sum(t[1]), self._key(t[1])))
        keep: list[tuple[int, tuple]] = []
        for i, lc in cand:
            if any(all(a <= b for a, b in zip(lj, lc)) for _, lj in keep):
                continue
            keep.append((i, lc))
        newpairs = []
        for i, lc in keep:
            lmi = self.basis[i].lm
            if all(not (a and b) for a, b in zip(lmi, lmh)):
                continue
            si = self.basis[i].sugar + sum(lc) - sum(lmi)
            sh = f.sugar + sum(lc) - sum(lmh)
            newpairs.append((max(si, sh), lc, i, h))
        filtered = []
        for s, lc, i, j in self.pairs:
            if all(a <= b for a, b in zip(lmh, lc)):
                lih = tuple(max(a, b) for a, b in zip(self.basis[i].lm, lmh))
                ljh = tuple(max(a, b) for a, b in zip(self.basis[j].lm, lmh))
                if lih != lc and ljh != lc:
                    continue
            filtered.append((s, lc, i, j))
        self.pairs = filtered + newpairs
        for i in range(h):
            if self.alive[i] and all(a <= b for a, b in zip(lmh, self.basis[i].lm)):
                self.alive[i] = False

    # -- one F4 step

    def _step(self, pairs, fresh: list[Poly], sugar: int) -> list[Poly]:
        extra = list(fresh)
        rows: list[tuple[int, tuple]] = []
        reducer_rows: dict[tuple, tuple[int, tuple]] = {}
        target_rows: set[tuple[int, tuple]] = set()
        for _, lc, i, j in pairs:
            ri = (i, tuple(a - b for a, b in zip(lc, self.basis[i].lm)))
            rj = (j, tuple(a - b for a, b in zip(lc, self.basis[j].lm)))
            if lc not in reducer_rows:
                reducer_rows[lc] = ri
            elif reducer_rows[lc] != ri:
                target_rows.add(ri)
            if reducer_rows[lc] != rj:
                target_rows.add(rj)
        return self._reduce_rows(reducer_rows, sorted(target_rows), extra, sugar)

    def _row_E(self, row: tuple[int, tuple]) -> np.ndarray:
        g = self.basis[row[0]]
        return g.E + np.array(row[1], dtype=np.int32)

    def _live_divisors(self):
        idx = [i for i, a in enumerate(self.alive) if a]
        idx.sort(key=lambda i: len(self.basis[i]))
        if not idx:
            return idx, np.zeros((0, self.n), np.int32)
        return idx, np.array([self.basis[i].lmv for i in idx], dtype=np.int32)

    def _preprocess(self, reducers: dict, row_arrays: list[np.ndarray]):
        """Close the monomial set under reduction; extend ``reducers``."""
        keys = _Keys(self.n)
        idx, LM = self._live_divisors()
        seen_E = np.zeros((0, self.n), np.int32)
        maxexp = max((int(a.max()) for a in row_arrays if a.size), default=0)
        keys.fit(maxexp)
        seen = keys(seen_E)
        covered = keys(np.array(list(reducers), dtype=np.int32).reshape(-1, self.n)) if reducers else None
        covered_E = np.array(list(reducers), dtype=np.int32).reshape(-1, self.n)
        pending = row_arrays
        while pending:
            U = np.concatenate(pending)
            pending = []
            if keys.fit(int(U.max()) if U.size else 0):
                seen = keys(seen_E)
                covered = keys(covered_E)
            ku = keys(U)
            ku, first = np.unique(ku, return_index=True)
            U = U[first]
            mask = ~np.isin(ku, seen)
            if covered is not None and len(covered_E):
                mask &= ~np.isin(ku, covered)
            U = U[mask]
            if not len(U):
                continue
            seen_E = np.concatenate([seen_E, U])
            seen = keys(seen_E)
            if not len(LM):
                continue
            new_cov = []
            for s in range(0, len(U), _CHUNK):
                block = U[s : s + _CHUNK]
                div = np.all(block[:, None, :] >= LM[None, :, :], axis=2)
                has = div.any(axis=1)
                choice = div.argmax(axis=1)
                for r in np.nonzero(has)[0]:
                    gi = idx[choice[r]]
                    m = block[r]
                    mult = tuple(int(a) for a in (m - self.basis[gi].lmv))
                    lead = tuple(int(a) for a in m)
                    reducers[lead] = (gi, mult)
                    new_cov.append(m)
                    pending.append(self._row_E((gi, mult)))
            if new_cov:
                covered_E = np.concatenate([covered_E, np.array(new_cov, dtype=np.int32)])
                covered = keys(covered_E)
        return reducers

    def _reduce_rows(self, reducers: dict, targets: list, extra: list[Poly], sugar: int) -> list[Poly]:
        arrays = [self._row_E(r) for r in reducers.values()]
        arrays += [self._row_E(r) for r in targets]
        arrays += [f.E for f in extra]
        reducers = self._preprocess(reducers, arrays)
        red_list = list(reducers.values())
        all_rows = [(self.basis[g].E + np.array(m, dtype=np.int32), self.basis[g].C) for g, m in red_list]
        all_rows += [(self.basis[g].E + np.array(m, dtype=np.int32), self.basis[g].C) for g, m in targets]
        all_rows += [(f.E, f.C) for f in extra]
        nred = len(red_list)
        out = self._matrix_reduce(all_rows, nred, list(range(nred, len(all_rows))), skip_lead=False, register=True)
        return [self.make_poly(r[0], r[1], sugar, monic=False) for r in out if r is not None]

    def _matrix_reduce(self, all_rows, nred: int, targets: list[int], skip_lead: bool, register: bool):
        """Build the sparse matrix and run the kernel; rows [0, nred) are pivots."""
        if not targets:
            return []
        E = np.concatenate([r[0] for r in all_rows])
        C = np.concatenate([r[1] for r in all_rows]).astype(np.int64)
        lens = np.array([len(r[1]) for r in all_rows], dtype=np.int64)
        keys = _Keys(self.n)
        keys.fit(int(E.max()) if E.size else 0)
        k = keys(E)
        _, first, inv = np.unique(k, return_index=True, return_inverse=True)
        U = E[first]
        order = self.sort_desc(U)
        rank = np.empty(len(U), dtype=np.int64)
        rank[order] = np.arange(len(U))
        cols = rank[inv.ravel()]
        indptr = np.zeros(len(all_rows) + 1, dtype=np.int64)
        np.cumsum(lens, out=indptr[1:])
        pivrow = np.full(len(U), -1, dtype=np.int64)
        if nred:
            pivrow[cols[indptr[:nred]]] = np.arange(nred)
        optr, ocols, ovals = _reduce_kernel(
            np.array(targets, dtype=np.int64),
            indptr,
            cols,
            C,
            pivrow,
            len(U),
            self.p,
            skip_lead,
            register,
        )
        colE = U[order]
        out = []
        for t in range(len(targets)):
            s, e = optr[t], optr[t + 1]
            out.append((colE[ocols[s:e]], ovals[s:e].copy()) if e > s else None)
        return out

    # -- finishing

    def interreduce(self, polys: list[Poly]) -> list[Poly]:
        polys = sorted(polys, key=lambda f: self._key(f.lm))
        minimal: list[Poly] = []
        for f in polys:
            if any(all(a <= b for a, b in zip(g.lm, f.lm)) for g in minimal):
                continue
            minimal.append(f)
        if not minimal:
            return []
        self.basis = minimal
        self.alive = [True] * len(minimal)
        reducers = {f.lm: (i, (0,) * self.n) for i, f in enumerate(minimal)}
        reducers = self._preprocess(reducers, [f.E for f in minimal])
        red_list = list(reducers.values())
        all_rows = [(self.basis[g].E + np.array(m, dtype=np.int32), self.basis[g].C) for g, m in red_list]
        pos = {v: i for i, v in enumerate(red_list)}
        targets = [pos[(i, (0,) * self.n)] for i in range(len(minimal))]
        out = self._matrix_reduce(all_rows, len(red_list), targets, skip_lead=True, register=False)
        res = [self.make_poly(E, C, f.sugar) for (E, C), f in zip(out, minimal)]
        res.sort(key=lambda f: self._key(f.lm), reverse=True)
        return res

    def normal_forms(self, basis: list[Poly], polys: list[Poly]) -> list[tuple[np.ndarray, np.ndarray] | None]:
        """Full normal forms of ``polys`` modulo a Gröbner basis."""
        self.basis = list(basis)
        self.alive = [True] * len(basis)
        reducers: dict = {}
        reducers = self._preprocess(reducers, [f.E for f in polys])
        red_list = list(reducers.values())
        all_rows = [(self.basis[g].E + np.array(m, dtype=np.int32), self.basis[g].C) for g, m in red_list]
        all_rows += [(f.E, f.C) for f in polys]
        targets = list(range(len(red_list), len(all_rows)))
        return self._matrix_reduce(all_rows, len(red_list), targets, skip_lead=False, register=False)
