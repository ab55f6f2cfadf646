"""Graded free modules, module columns, and graded-piece linear algebra.

A module column is a dict {(component, monomial): coefficient} describing
an element of a graded free module with given twists.  Finitely presented
modules are handled through their graded pieces: exact ranks of the
relation span in each degree give dimensions, quotient bases, and the
multiplication maps that feed the Koszul-homology Betti computation.
"""

from __future__ import annotations

import numpy as np
from fractions import Fraction

from gocy.linalg import RrefModP, nullspace_mod_p
from gocy.ring import (
    Polynomial,
    PolynomialRing,
    dim_of_degree,
    mono_deg,
    mono_divides,
    mono_mul,
    monomials_of_degree,
)


class FreeBasis:
    """Cached degree-d monomial bases of a graded free module."""

    def __init__(self, ring: PolynomialRing, twists):
        self.ring = ring
        self.twists = tuple(twists)
        self._basis = {}
        self._index = {}

    @property
    def rank(self):
        return len(self.twists)

    def dim(self, d: int) -> int:
        nv = self.ring.nvars
        return sum(dim_of_degree(nv, d - tw) for tw in self.twists)

    def basis(self, d: int):
        if d not in self._basis:
            nv = self.ring.nvars
            out = []
            for comp, tw in enumerate(self.twists):
                if d - tw >= 0:
                    out.extend((comp, m) for m in monomials_of_degree(nv, d - tw))
            self._basis[d] = out
            self._index[d] = {t: i for i, t in enumerate(out)}
        return self._basis[d]

    def index(self, d: int):
        self.basis(d)
        return self._index[d]


def column_degree(col, twists) -> int:
    """Degree of a homogeneous column; raises if inhomogeneous."""
    degs = {mono_deg(m) + twists[comp] for (comp, m) in col}
    if len(degs) != 1:
        raise ValueError("column is not homogeneous")
    return degs.pop()


def column_from_polynomials(polys_by_comp) -> dict:
    """Build a column dict from {component: Polynomial}."""
    col = {}
    for comp, f in polys_by_comp.items():
        for m, c in f.terms.items():
            col[(comp, m)] = c
    return col


def column_entry(col, comp, ring) -> Polynomial:
    return Polynomial(ring, {m: c for (cc, m), c in col.items() if cc == comp})


def column_components(col):
    return sorted({comp for (comp, _) in col})


def ideal_gens_as_columns(I):
    return [{(0, m): c for m, c in g.terms.items()} for g in I.gens]


def apply_matrix_to_column(cols_of_d, col, ring):
    """Compose: image of `col` (element of source free module) under the map
    whose columns are cols_of_d (elements of the target)."""
    field = ring.field
    out = {}
    for (comp, m), c in col.items():
        for (tc, tm), tcoef in cols_of_d[comp].items():
            t = (tc, mono_mul(tm, m))
            v = field.add(out.get(t, field.zero), field.mul(c, tcoef))
            if v == field.zero:
                out.pop(t, None)
            else:
                out[t] = v
    return out


# ---------------------------------------------------------------------------
# span accumulators (field-generic incremental RREF)


class SpanBuilder:
    """Incremental row-space basis over GF(p) or QQ with a shared interface."""

    def __init__(self, ncols: int, field):
        self.field = field
        self.ncols = ncols
        if field.is_prime_field:
            self._impl = RrefModP(ncols, field.p)
        else:
            self._rows = []
            self._pivots = []

    @property
    def rank(self):
        if self.field.is_prime_field:
            return self._impl.rank
        return len(self._rows)

    @property
    def pivots(self):
        if self.field.is_prime_field:
            return list(self._impl.pivots)
        return list(self._pivots)

    def add_rows(self, rows) -> int:
        if self.field.is_prime_field:
            M = np.asarray(rows, dtype=np.int64)
            if M.ndim == 1:
                M = M.reshape(1, -1)
            if M.size == 0:
                return 0
            return self._impl.add_rows_blocked(M)
        added = 0
        for row in rows:
            r = list(map(Fraction, row))
            for piv, prow in zip(self._pivots, self._rows):
                if r[piv]:
                    f = r[piv]
                    r = [a - f * b for a, b in zip(r, prow)]
            nz = next((j for j, v in enumerate(r) if v), None)
            if nz is None:
                continue
            inv = 1 / r[nz]
            r = [v * inv for v in r]
            for i, prow in enumerate(self._rows):
                if prow[nz]:
                    f = prow[nz]
                    self._rows[i] = [a - f * b for a, b in zip(prow, r)]
            self._rows.append(r)
            self._pivots.append(nz)
            added += 1
        return added

    def reduce_rows(self, rows):
        if self.field.is_prime_field:
            M = np.asarray(rows, dtype=np.int64)
            if M.ndim == 1:
                M = M.reshape(1, -1)
            return self._impl.reduce_rows(M)
        out = []
        for row in rows:
            r = list(map(Fraction, row))
            for piv, prow in zip(self._pivots, self._rows):
                if r[piv]:
                    f = r[piv]
                    r = [a - f * b for a, b in zip(r, prow)]
            out.append(r)
        return out


def vectorize_column(col, fb: FreeBasis, d: int, mult=None):
    """Coordinates of (mult * col) in the degree-d basis of fb."""
    idx = fb.index(d)
    field = fb.ring.field
    if field.is_prime_field:
        v = np.zeros(len(idx), dtype=np.int64)
        if mult is None:
            for t, c in col.items():
                v[idx[t]] = c
        else:
            for (comp, m), c in col.items():
                v[idx[(comp, mono_mul(m, mult))]] = c
        return v
    v = [Fraction(0)] * len(idx)
    if mult is None:
        for t, c in col.items():
            v[idx[t]] = Fraction(c)
    else:
        for (comp, m), c in col.items():
            v[idx[(comp, mono_mul(m, mult))]] = Fraction(c)
    return v


def multiples_rows(columns, coldegs, fb: FreeBasis, d: int):
    """All monomial multiples of the columns landing in degree d, as rows."""
    ring = fb.ring
    rows = []
    for col, e in zip(columns, coldegs):
        if d - e < 0 or not col:
            continue
        for m in monomials_of_degree(ring.nvars, d - e):
            rows.append(vectorize_column(col, fb, d, mult=m))
    return rows


# ---------------------------------------------------------------------------
# graded pieces of a finitely presented module


class ModuleSlices:
    """Graded pieces and multiplication maps of M = F0 / <relation columns>."""

    def __init__(self, ring, twists, relations, dmax):
        self.ring = ring
        self.fb = FreeBasis(ring, twists)
        self.reldegs = [column_degree(c, self.fb.twists) for c in relations]
        self.relations = list(relations)
        self.dmax = dmax
        self._span = {}
        self._free = {}

    @property
    def nvars(self):
        return self.ring.nvars

    @property
    def field(self):
        return self.ring.field

    def _span_at(self, d):
        if d not in self._span:
            span = SpanBuilder(self.fb.dim(d), self.field)
            rows = multiples_rows(self.relations, self.reldegs, self.fb, d)
            if rows:
                span.add_rows(rows)
            self._span[d] = span
            pivset = set(span.pivots)
            self._free[d] = [i for i in range(self.fb.dim(d)) if i not in pivset]
        return self._span[d]

    def dim(self, d: int) -> int:
        if d < 0 or d > self.dmax:
            return 0
        self._span_at(d)
        return len(self._free[d])

    def free_positions(self, d):
        self._span_at(d)
        return self._free[d]

    def mult(self, var: int, d: int):
        """Matrix of x_var: M_d -> M_{d+1} in the quotient bases (rows map)."""
        self._span_at(d)
        span_next = self._span_at(d + 1)
        basis_d = self.fb.basis(d)
        idx_next = self.fb.index(d + 1)
        free_d = self._free[d]
        free_next = self._free[d + 1]
        nd, nn = len(free_d), len(free_next)
        shift = tuple(1 if i == var else 0 for i in range(self.ring.nvars))
        if self.field.is_prime_field:
            if nd == 0:
                return np.zeros((0, nn), dtype=np.int64)
            rows = np.zeros((nd, self.fb.dim(d + 1)), dtype=np.int64)
            for r, pos in enumerate(free_d):
                comp, m = basis_d[pos]
                rows[r, idx_next[(comp, mono_mul(m, shift))]] = 1
            reduced = span_next.reduce_rows(rows)
            return reduced[:, free_next]
        rows = []
        for pos in free_d:
            comp, m = basis_d[pos]
            v = [Fraction(0)] * self.fb.dim(d + 1)
            v[idx_next[(comp, mono_mul(m, shift))]] = Fraction(1)
            rows.append(v)
        reduced = span_next.reduce_rows(rows)
        return [[row[j] for j in free_next] for row in reduced]

    def hilbert_values(self, dmax=None):
        dmax = self.dmax if dmax is None else dmax
        return [self.dim(d) for d in range(dmax + 1)]


class RingSlices:
    """Graded pieces of S/I via standard monomials of a Groebner basis."""

    def __init__(self, I, dmax):
        self.ring = I.ring
        self.ideal = I
        self.dmax = dmax
        gbdata = I.gb(cap=dmax + 1)
        self._entries = gbdata.basis_entries()
        self._leads = gbdata.lead_monomials()
        self._std = {}
        self._idx = {}

    @property
    def nvars(self):
        return self.ring.nvars

    @property
    def field(self):
        return self.ring.field

    def _std_at(self, d):
        if d not in self._std:
            std = [
                m
                for m in monomials_of_degree(self.ring.nvars, d)
                if not any(mono_divides(lm, m) for lm in self._leads)
            ]
            self._std[d] = std
            self._idx[d] = {m: i for i, m in enumerate(std)}
        return self._std[d]

    def dim(self, d: int) -> int:
        if d < 0 or d > self.dmax:
            return 0
        return len(self._std_at(d))

    def standard_monomials(self, d):
        return list(self._std_at(d))

    def mult(self, var: int, d: int):
        from gocy.groebner import _reduce_terms

        std_d = self._std_at(d)
        std_next = self._std_at(d + 1)
        idx = self._idx[d + 1]
        field = self.field
        shift = tuple(1 if i == var else 0 for i in range(self.ring.nvars))
        if field.is_prime_field:
            M = np.zeros((len(std_d), len(std_next)), dtype=np.int64)
        else:
            M = [[Fraction(0)] * len(std_next) for _ in std_d]
        for r, m in enumerate(std_d):
            mm = mono_mul(m, shift)
            if mm in idx:
                if field.is_prime_field:
                    M[r, idx[mm]] = 1
                else:
                    M[r][idx[mm]] = Fraction(1)
                continue
            rem = _reduce_terms({mm: field.one}, self._entries, field)
            for mr, c in rem.items():
                if field.is_prime_field:
                    M[r, idx[mr]] = c
                else:
                    M[r][idx[mr]] = Fraction(c)
        return M

    def hilbert_values(self, dmax=None):
        dmax = self.dmax if dmax is None else dmax
        return [self.dim(d) for d in range(dmax + 1)]


# ---------------------------------------------------------------------------
# minimal generators / pruning


def minimal_columns(columns, ring, twists):
    """Select a minimal generating subset of homogeneous columns (graded Nakayama)."""
    if not columns:
        return []
    fb = FreeBasis(ring, twists)
    degs = [column_degree(c, fb.twists) for c in columns]
    order = sorted(range(len(columns)), key=lambda i: degs[i])
    selected = []
    seldegs = []
    d_groups = {}
    for i in order:
        d_groups.setdefault(degs[i], []).append(i)
    for d in sorted(d_groups):
        span = SpanBuilder(fb.dim(d), ring.field)
        rows = multiples_rows(selected, seldegs, fb, d)
        if rows:
            span.add_rows(rows)
        for i in d_groups[d]:
            v = vectorize_column(columns[i], fb, d)
            if span.add_rows([v]):
                selected.append(columns[i])
                seldegs.append(d)
    return selected


def prune_columns(columns, twists, ring):
    """Remove unit entries by row/column reduction (minimal presentation).

    A degree-0 entry of a homogeneous column is an exact scalar, so one
    column operation clears the corresponding generator.  Returns
    (pruned_columns, remaining_twists).
    """
    field = ring.field
    cols = [dict(c) for c in columns]
    tw = list(twists)
    zero_m = (0,) * ring.nvars
    changed = True
    while changed:
        changed = False
        for ci, col in enumerate(cols):
            comp = next((cc for (cc, m) in col if m == zero_m), None)
            if comp is None:
                continue
            inv = field.inv(col[(comp, zero_m)])
            base = {t: field.mul(c, inv) for t, c in col.items()}
            out = []
            for cj, other in enumerate(cols):
                if cj == ci:
                    continue
                entry = {mm: c for (cc, mm), c in other.items() if cc == comp}
                if entry:
                    upd = dict(other)
                    for (tc, tm), tcoef in base.items():
                        for fm, fc in entry.items():
                            t = (tc, mono_mul(tm, fm))
                            v = field.sub(upd.get(t, field.zero), field.mul(fc, tcoef))
                            if v == field.zero:
                                upd.pop(t, None)
                            else:
                                upd[t] = v
                    other = upd
                out.append(
                    {
                        (cc if cc < comp else cc - 1, mm): c
                        for (cc, mm), c in other.items()
                        if cc != comp
                    }
                )
            cols = out
            tw.pop(comp)
            changed = True
            break
    return [c for c in cols if c], tuple(tw)


# ---------------------------------------------------------------------------
# syzygies in bounded degree by linear algebra


def syzygies_linear(columns, ring, target_twists, dmax):
    """Minimal generators (through degree dmax) of the syzygy module of columns.

    Exact per degree; complete iff the syzygy module is generated in
    degrees <= dmax (the caller supplies a justified cap, e.g. from
    regularity).  Returns a list of syzygy columns over S^k with twists
    equal to the column degrees.
    """
    field = ring.field
    if not field.is_prime_field:
        raise NotImplementedError("bounded-degree syzygies require a prime field")
    p = field.p
    fbF = FreeBasis(ring, target_twists)
    coldegs = [column_degree(c, fbF.twists) for c in columns]
    fbD = FreeBasis(ring, coldegs)
    nv = ring.nvars
    selected = []
    prev_kernel = None  # (rows over fbD.basis(d-1))
    for d in range(min(coldegs), dmax + 1):
        dom = fbD.basis(d)
        if not dom:
            prev_kernel = None
            continue
        A = np.zeros((len(dom), fbF.dim(d)), dtype=np.int64)
        idxF = fbF.index(d)
        for r, (j, m) in enumerate(dom):
            for (comp, mm), c in columns[j].items():
                A[r, idxF[(comp, mono_mul(mm, m))]] = c
        kernel = nullspace_mod_p(A.T, p)
        span = SpanBuilder(len(dom), field)
        if prev_kernel is not None and prev_kernel[0].shape[0]:
            prev_rows, prev_basis = prev_kernel
            idxD = fbD.index(d)
            for var in range(nv):
                shift = tuple(1 if i == var else 0 for i in range(nv))
                posmap = np.array(
                    [idxD[(j, mono_mul(m, shift))] for (j, m) in prev_basis],
                    dtype=np.int64,
                )
                shifted = np.zeros((prev_rows.shape[0], len(dom)), dtype=np.int64)
                shifted[:, posmap] = prev_rows
                span.add_rows(shifted)
        for v in kernel:
            if span.add_rows([v]):
                col = {}
                for pos in np.nonzero(v)[0]:
                    j, m = dom[pos]
                    col[(j, m)] = int(v[pos])
                selected.append(col)
        prev_kernel = (kernel, list(dom))
    return selected
