"""Graded Betti numbers, minimal free resolutions, Ext pieces, table stats.

Two independent routes compute Betti tables:

* Koszul homology — exact linear algebra on the graded pieces of the
  quotient (or of a finitely presented module); the default for Artinian
  and finite-length inputs where all degrees are bounded.
* minimal free resolution — iterated syzygy computation with
  unit-entry pruning; works for any finitely presented input and also
  yields the differentials needed for Ext computations.

Both are cross-checked against each other in the test suite.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

import numpy as np

from gocy import modules
from gocy.groebner import GradedIdeal, syzygies_of_columns
from gocy.linalg import rank_fraction, rank_mod_p
from gocy.modules import (
    FreeBasis,
    ModuleSlices,
    RingSlices,
    column_degree,
    ideal_gens_as_columns,
    minimal_columns,
    prune_columns,
)
from gocy.ring import Polynomial, mono_deg, mono_mul


class BettiTable:
    """Map (homological index i, internal degree j) -> b_{i,j}.

    Rendered in the usual grid where the entry at row r, column i is
    b_{i, i+r}; the regularity is the index of the bottom row.
    """

    def __init__(self, entries, nvars, truncated=False):
        self.entries = {k: int(v) for k, v in entries.items() if v}
        self.nvars = nvars
        self.truncated = truncated

    def __getitem__(self, ij):
        return self.entries.get(tuple(ij), 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    @property
    def pdim(self) -> int:
        return max((i for (i, _) in self.entries), default=0)

    @property
    def regularity(self) -> int:
        return max((j - i for (i, j) in self.entries), default=0)

    def column_total(self, i) -> int:
        return sum(b for (ii, _), b in self.entries.items() if ii == i)

    def totals(self):
        return tuple(self.column_total(i) for i in range(self.pdim + 1))

    def rows(self):
        """(row index r, list of entries b_{i, i+r} for i = 0..pdim)."""
        reg = self.regularity
        out = []
        for r in range(reg + 1):
            out.append((r, [self.entries.get((i, i + r), 0) for i in range(self.pdim + 1)]))
        return out

    def is_gorenstein_shape(self) -> bool:
        return self.column_total(self.pdim) == 1

    def check_duality(self, c=None, r=None) -> bool:
        """b_{i,j} == b_{c-i, (c+r)-j} for all (i, j)."""
        c = self.pdim if c is None else c
        r = self.regularity if r is None else r
        for (i, j), b in self.entries.items():
            if self.entries.get((c - i, (c + r) - j), 0) != b:
                return False
        return True

    def alternating_numerator(self):
        """K(t) = sum over (i,j) of (-1)^i b_{i,j} t^j, as a coefficient list."""
        if not self.entries:
            return [1]
        top = max(j for (_, j) in self.entries)
        K = [0] * (top + 1)
        for (i, j), b in self.entries.items():
            K[j] += b if i % 2 == 0 else -b
        while K and K[-1] == 0:
            K.pop()
        return K

    # -- rendering -------------------------------------------------------------

    def render(self, style="compact", label=None) -> str:
        zero = "." if style == "compact" else "--"
        pd = self.pdim
        reg = self.regularity
        grid = [[str(self.entries.get((i, i + r), 0)) for i in range(pd + 1)] for r in range(reg + 1)]
        grid = [[zero if v == "0" else v for v in row] for row in grid]
        totals = [str(self.column_total(i)) for i in range(pd + 1)]
        widths = [
            max(len(totals[i]), max(len(grid[r][i]) for r in range(reg + 1)))
            for i in range(pd + 1)
        ]
        lines = []
        head = "total: " + " ".join(t.rjust(w) for t, w in zip(totals, widths))
        lines.append(head)
        for r in range(reg + 1):
            row = " ".join(v.rjust(w) for v, w in zip(grid[r], widths))
            lines.append(f"{r}: ".rjust(7) + row)
        text = "\n".join(lines)
        if label:
            text = f"{label}\n{text}"
        return text

    def to_json_dict(self):
        return {
            "entries": sorted([i, j, b] for (i, j), b in self.entries.items()),
            "reg": self.regularity,
            "pdim": self.pdim,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data, nvars=0):
        return cls({(i, j): b for i, j, b in data["entries"]}, nvars)

    @classmethod
    def from_rows(cls, rows, nvars=0):
        """Build from display rows: {row_index: [entries for i = 0, 1, ...]}."""
        entries = {}
        for r, vals in rows.items():
            for i, b in enumerate(vals):
                if b:
                    entries[(i, i + r)] = b
        return cls(entries, nvars)

    def __repr__(self):
        return f"<BettiTable totals={self.totals()}>"


# ---------------------------------------------------------------------------
# Koszul homology route


def _koszul_rank_cache(slices):
    return {}


def koszul_betti_from_slices(slices, i_max, j_max, truncated=False):
    """Betti numbers b_{i,j} = dim H_i(Koszul ⊗ M)_j from graded slices."""
    nv = slices.nvars
    field = slices.field
    prime = field.is_prime_field
    subsets = {i: list(itertools.combinations(range(nv), i)) for i in range(nv + 2)}
    sub_index = {i: {S: k for k, S in enumerate(subsets[i])} for i in subsets}
    mult_cache = {}

    def mult(var, d):
        if (var, d) not in mult_cache:
            mult_cache[(var, d)] = slices.mult(var, d)
        return mult_cache[(var, d)]

    rank_cache = {}

    def diff_rank(i, j):
        """Rank of Koszul differential Λ^i ⊗ M_{j-i} -> Λ^{i-1} ⊗ M_{j-i+1}."""
        if i <= 0 or i > nv:
            return 0
        key = (i, j)
        if key in rank_cache:
            return rank_cache[key]
        dM = slices.dim(j - i)
        dN = slices.dim(j - i + 1)
        if dM == 0 or len(subsets[i]) == 0:
            rank_cache[key] = 0
            return 0
        rows = len(subsets[i]) * dM
        cols = len(subsets[i - 1]) * dN
        if cols == 0:
            rank_cache[key] = 0
            return 0
        if prime:
            D = np.zeros((rows, cols), dtype=np.int64)
            p = field.p
            for s, S in enumerate(subsets[i]):
                for pos, var in enumerate(S):
                    T = S[:pos] + S[pos + 1 :]
                    t = sub_index[i - 1][T]
                    block = mult(var, j - i)
                    sign = 1 if pos % 2 == 0 else p - 1
                    D[s * dM : (s + 1) * dM, t * dN : (t + 1) * dN] = (block * sign) % p
            r = rank_mod_p(D, p)
        else:
            D = [[Fraction(0)] * cols for _ in range(rows)]
            for s, S in enumerate(subsets[i]):
                for pos, var in enumerate(S):
                    T = S[:pos] + S[pos + 1 :]
                    t = sub_index[i - 1][T]
                    block = mult(var, j - i)
                    sign = 1 if pos % 2 == 0 else -1
                    for a in range(dM):
                        row = D[s * dM + a]
                        for b, v in enumerate(block[a]):
                            if v:
                                row[t * dN + b] = sign * v
            r = rank_fraction(D)
        rank_cache[key] = r
        return r

    entries = {}
    for j in range(0, j_max + 1):
        for i in range(0, min(i_max, nv) + 1):
            dM = slices.dim(j - i)
            if dM == 0:
                continue
            total = len(subsets[i]) * dM
            b = total - diff_rank(i, j) - diff_rank(i + 1, j)
            if b:
                entries[(i, j)] = b
    return BettiTable(entries, nv, truncated=truncated)


def betti_via_koszul(I: GradedIdeal, i_max=None, j_max=None) -> BettiTable:
    """Betti table of S/I through Koszul homology.

    For Artinian ideals the table is complete (caps derived from the
    socle degree); otherwise j_max is required and the result is flagged
    truncated.
    """
    nv = I.ring.nvars
    if i_max is None:
        i_max = nv
    if j_max is None:
        from gocy import hilbert

        K = I.hilbert_numerator()
        if hilbert.dimension_from_numerator(K, nv) != 0:
            raise ValueError("j_max is required for non-Artinian ideals")
        values = hilbert.series_values(K, nv, len(K) + 1)
        socle = max((d for d, v in enumerate(values) if v), default=0)
        j_max = socle + i_max
        truncated = False
    else:
        truncated = True
    slices = RingSlices(I, j_max + 2)
    return koszul_betti_from_slices(slices, i_max, j_max, truncated=truncated)


def module_betti_via_koszul(slices: ModuleSlices, i_max=None, j_max=None, truncated=False):
    nv = slices.nvars
    if i_max is None:
        i_max = nv
    if j_max is None:
        # finite length: scan for the top nonzero degree
        top = None
        for d in range(slices.dmax + 1):
            if slices.dim(d):
                top = d
        if top is None:
            return BettiTable({}, nv)
        if slices.dim(top + 1) != 0 and top + 1 <= slices.dmax:
            raise ValueError("module does not look finite-length; give j_max")
        j_max = top + i_max
    return koszul_betti_from_slices(slices, i_max, j_max, truncated=truncated)


# ---------------------------------------------------------------------------
# minimal free resolutions by iterated syzygies


class FreeResolution:
    """Chain of differentials d_1, ..., d_p with twists per free module.

    twists[0] is the target free module; diffs[k] holds the columns of
    d_{k+1} : F_{k+1} -> F_k.  Minimal: no unit entries.
    """

    def __init__(self, ring, twists_chain, diffs):
        self.ring = ring
        self.twists = twists_chain
        self.diffs = diffs

    @property
    def length(self) -> int:
        return len(self.diffs)

    def betti_table(self) -> BettiTable:
        entries = {}
        for i, tws in enumerate(self.twists):
            for tw in tws:
                entries[(i, tw)] = entries.get((i, tw), 0) + 1
        return BettiTable(entries, self.ring.nvars)

    def check_complex(self) -> bool:
        """d_k ∘ d_{k+1} == 0, exactly."""
        for k in range(1, len(self.diffs)):
            prev = self.diffs[k - 1]
            for col in self.diffs[k]:
                image = modules.apply_matrix_to_column(prev, col, self.ring)
                if image:
                    return False
        return True

    def differential_entry(self, k, row, col) -> Polynomial:
        """Entry (row, col) of d_k (1-indexed k)."""
        column = self.diffs[k - 1][col]
        return modules.column_entry(column, row, self.ring)


def _resolve_columns(ring, target_twists, columns, max_steps):
    """Iterate minimal syzygies until exhaustion; returns (twists_chain, diffs).

    The input columns must already be a minimal generating set of their
    image; syzygies of a minimal set never carry unit entries, so every
    subsequent step stays minimal by graded Nakayama.
    """
    twists_chain = [tuple(target_twists)]
    diffs = []
    cols = [c for c in columns if c]
    for step in range(max_steps + 1):
        if not cols:
            break
        if step > max_steps:
            raise RuntimeError("resolution did not terminate within the bound")
        cols = minimal_columns(cols, ring, twists_chain[-1])
        degs = tuple(column_degree(c, twists_chain[-1]) for c in cols)
        zero_m = (0,) * ring.nvars
        if any((comp, zero_m) in c for c in cols for comp in range(len(twists_chain[-1]))):
            raise RuntimeError("unit entry in a syzygy of a minimal generating set")
        diffs.append(cols)
        twists_chain.append(degs)
        syz, _ = syzygies_of_columns(cols, len(twists_chain[-2]), ring.field)
        cols = [c for c in syz if c]
    return twists_chain, diffs


def minimal_resolution(X, max_steps=None) -> FreeResolution:
    """Minimal free resolution of S/I (for a GradedIdeal) or of a module
    given as (ring, twists, relation columns)."""
    if isinstance(X, GradedIdeal):
        ring = X.ring
        steps = ring.nvars if max_steps is None else max_steps
        cols = minimal_columns(ideal_gens_as_columns(X), ring, (0,))
        twists_chain, diffs = _resolve_columns(ring, (0,), cols, steps)
        return FreeResolution(ring, twists_chain, diffs)
    ring, twists, relations = X
    steps = ring.nvars if max_steps is None else max_steps
    # a minimal presentation first: prune units, then minimal relations
    relations, twists = prune_columns(relations, tuple(twists), ring)
    relations = minimal_columns(relations, ring, twists)
    twists_chain, diffs = _resolve_columns(ring, tuple(twists), relations, steps)
    return FreeResolution(ring, twists_chain, diffs)


# ---------------------------------------------------------------------------


def mapping_cone_table(I: GradedIdeal, F: Polynomial) -> BettiTable:
    """Betti table of the mapping cone for S/(I + F) built from resolutions
    of S/(I:F) (shifted by deg F) and S/I."""
    if I.contains(F):
        raise ValueError("F lies in the ideal; the cone is degenerate")
    d = F.homogeneous_degree()
    colon = I.quotient(F)
    res_I = minimal_resolution(I)
    res_colon = minimal_resolution(colon)
    tI = res_I.betti_table()
    tC = res_colon.betti_table()
    entries = dict(tI.entries)
    for (i, j), b in tC.entries.items():
        key = (i + 1, j + d)
        entries[key] = entries.get(key, 0) + b
    return BettiTable(entries, I.ring.nvars)


def table_stats(T: BettiTable):
    """Regularity, projective dimension, Gorenstein shape, canonical shift."""
    if T.truncated:
        raise ValueError("table is truncated; stats would be unreliable")
    reg = T.regularity
    pd = T.pdim
    gor = T.is_gorenstein_shape()
    stats = {
        "regularity": reg,
        "pdim": pd,
        "codim_if_CM": pd,
        "is_gorenstein": gor,
        "canonical_shift": (-T.nvars + reg + pd) if gor else None,
    }
    return stats


def syzygy_rank(element) -> int:
    """Dimension of the linear span of the entries of a linear syzygy."""
    ring = element.ring
    rows = []
    for comp, f in element.data.items():
        if f.is_zero():
            continue
        if f.homogeneous_degree() != 1:
            raise ValueError("syzygy entries must be linear forms")
        row = [0] * ring.nvars
        for m, c in f.terms.items():
            row[m.index(1)] = c
        rows.append(row)
    if not rows:
        return 0
    if ring.field.is_prime_field:
        return rank_mod_p(np.array(rows, dtype=np.int64), ring.field.p)
    return rank_fraction(rows)


class FreeModuleElement:
    """Element of a graded free module: component -> Polynomial."""

    def __init__(self, ring, data, twists=None):
        self.ring = ring
        self.data = {c: f for c, f in data.items() if not f.is_zero()}
        self.twists = twists

    def degree(self):
        degs = set()
        for c, f in self.data.items():
            tw = self.twists[c] if self.twists else 0
            degs.add(f.homogeneous_degree() + tw)
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def as_column(self):
        return modules.column_from_polynomials(self.data)

    @classmethod
    def from_column(cls, ring, col, twists=None):
        data = {}
        for (comp, m), c in col.items():
            data.setdefault(comp, {})[m] = c
        return cls(ring, {c: Polynomial(ring, t) for c, t in data.items()}, twists)

    def __repr__(self):
        inside = ", ".join(f"{c}: {f}" for c, f in sorted(self.data.items()))
        return f"FreeModuleElement({inside})"


class SyzygyMatrix:
    """Columns generate the first syzygy module of a generator matrix."""

    def __init__(self, ring, target_twists, columns):
        self.ring = ring
        self.target_twists = tuple(target_twists)
        self.columns = list(columns)
        self.source_twists = tuple(
            column_degree(c, self.target_twists) for c in self.columns
        )

    def __len__(self):
        return len(self.columns)

    def elements(self):
        return [
            FreeModuleElement.from_column(self.ring, c, self.target_twists)
            for c in self.columns
        ]

    def entry(self, row, col) -> Polynomial:
        return modules.column_entry(self.columns[col], row, self.ring)

    def product_with_generators(self, gens):
        """The exact products gens . syz columns (all must be zero)."""
        out = []
        for col in self.columns:
            total = self.ring.zero()
            for (comp, m), c in col.items():
                total = total + gens[comp].mul_term(c, m)
            out.append(total)
        return out


def syzygy_matrix(I: GradedIdeal) -> SyzygyMatrix:
    """Minimal generators of the first syzygy module of I's generators."""
    cols = ideal_gens_as_columns(I)
    twists = tuple(g.homogeneous_degree() for g in I.gens)
    syz, _ = syzygies_of_columns(cols, 1, I.ring.field)
    syz = minimal_columns(syz, I.ring, twists)
    syz, _ = prune_columns(syz, twists, I.ring)
    return SyzygyMatrix(I.ring, twists, syz)


# ---------------------------------------------------------------------------
# Ext graded pieces from a minimal resolution


def ext_graded_piece(M, i: int, j: int) -> int:
    """dim Ext^i(M, S)_j where M is a GradedIdeal (meaning S/I) or a
    (ring, twists, relations) module presentation."""
    res = minimal_resolution(M)
    ring = res.ring
    field = ring.field
    if i < 0:
        return 0
    if i > res.length:
        return 0

    # Hom(F_k, S)_j has basis (generator g of F_k, monomial of degree j + twist_g)
    def hom_basis(k):
        tws = res.twists[k]
        fb = FreeBasis(ring, tuple(-t for t in tws))
        return fb, fb.basis(j)

    def hom_map(k):
        """Matrix of Hom(F_{k-1}, S)_j -> Hom(F_k, S)_j, composition with d_k."""
        fb_prev, basis_prev = hom_basis(k - 1)
        fb_k, basis_k = hom_basis(k)
        idx_k = fb_k.index(j)
        prime = field.is_prime_field
        if prime:
            A = np.zeros((len(basis_prev), len(basis_k)), dtype=np.int64)
        else:
            A = [[Fraction(0)] * len(basis_k) for _ in range(len(basis_prev))]
        cols = res.diffs[k - 1]
        for r, (comp_prev, m_prev) in enumerate(basis_prev):
            # phi sends generator comp_prev to m_prev; compose with d_k columns
            for src, col in enumerate(cols):
                for (tc, tm), c in col.items():
                    if tc != comp_prev:
                        continue
                    m = mono_mul(tm, m_prev)
                    t = (src, m)
                    if t in idx_k:
                        if prime:
                            A[r, idx_k[t]] = (A[r, idx_k[t]] + c) % field.p
                        else:
                            A[r][idx_k[t]] += Fraction(c)
        return A, len(basis_prev), len(basis_k)

    _, basis_i = hom_basis(i)
    dim_i = len(basis_i)
    if dim_i == 0:
        return 0

    def rank_of(A):
        if field.is_prime_field:
            return rank_mod_p(A, field.p) if A.size else 0
        return rank_fraction(A) if A and A[0] else 0

    if i == 0:
        rank_in = 0
    else:
        A_in, _, _ = hom_map(i)
        rank_in = rank_of(A_in)
    if i == res.length:
        rank_out = 0
    else:
        A_out, _, _ = hom_map(i + 1)
        rank_out = rank_of(A_out)
    return dim_i - rank_out - rank_in
