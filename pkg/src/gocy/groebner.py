"""Groebner bases for graded ideals and submodules of graded free modules.

The engine is plain Buchberger with the sugar selection strategy and
Gebauer-Moeller pair elimination, adequate for the ambient sizes this
package targets (up to ~21 variables on sparse input, ~10 on dense).  It
is deliberately isolated so a faster backend could replace it.

Module elements are dicts keyed by (component, monomial).  Syzygies are
computed by the graph-module trick: run Buchberger on {g_j + e_j} inside
F + S^k with F-terms dominating; basis elements supported only on the
tracker block are exactly the syzygies of the input columns.
"""

from __future__ import annotations

import heapq

from gocy.ring import (
    Polynomial,
    PolynomialRing,
    divmask,
    grevlex_key,
    mono_deg,
    mono_div,
    mono_divides,
    mono_gcd_is_one,
    mono_lcm,
    mono_mul,
)


def _heap_key(m):
    # min-heap pops the grevlex-largest monomial first
    return (-sum(m), tuple(reversed(m)))


# ---------------------------------------------------------------------------
# polynomial reduction (normal form)


def _reduce_terms(f_terms, basis, field):
    """Full remainder of f modulo a list of monic basis entries.

    basis: list of (lead_mono, lead_mask, terms_dict), each monic.
    """
    if not f_terms:
        return {}
    prime = field.is_prime_field
    p = field.p if prime else None
    work = dict(f_terms)
    out = {}
    heap = [_heap_key(m) for m in work]
    heapq.heapify(heap)
    inheap = set(work)
    while heap:
        key = heapq.heappop(heap)
        m = tuple(reversed(key[1]))
        inheap.discard(m)
        c = work.get(m)
        if not c:
            work.pop(m, None)
            continue
        mask = divmask(m)
        red = None
        for lm, lmask, terms in basis:
            if lmask & ~mask:
                continue
            if mono_divides(lm, m):
                red = (lm, terms)
                break
        if red is None:
            out[m] = c
            del work[m]
            continue
        lm, terms = red
        q = mono_div(m, lm)
        if prime:
            for mg, cg in terms.items():
                mm = mono_mul(mg, q)
                v = (work.get(mm, 0) - c * cg) % p
                if v:
                    work[mm] = v
                    if mm not in inheap:
                        inheap.add(mm)
                        heapq.heappush(heap, _heap_key(mm))
                else:
                    work.pop(mm, None)
        else:
            for mg, cg in terms.items():
                mm = mono_mul(mg, q)
                v = field.sub(work.get(mm, field.zero), field.mul(c, cg))
                if v != field.zero:
                    work[mm] = v
                    if mm not in inheap:
                        inheap.add(mm)
                        heapq.heappush(heap, _heap_key(mm))
                else:
                    work.pop(mm, None)
    return out


def _make_basis_entry(terms):
    lm = max(terms, key=grevlex_key)
    return (lm, divmask(lm), terms)


def _monic_terms(terms, field):
    lm = max(terms, key=grevlex_key)
    c = terms[lm]
    if c == field.one:
        return terms
    inv = field.inv(c)
    if field.is_prime_field:
        p = field.p
        return {m: (v * inv) % p for m, v in terms.items()}
    return {m: field.mul(v, inv) for m, v in terms.items()}


# ---------------------------------------------------------------------------
# Buchberger for ideals


class GBData:
    """A reduced Groebner basis plus bookkeeping."""

    __slots__ = ("ring", "elements", "cap", "truncated")

    def __init__(self, ring, elements, cap=None, truncated=False):
        self.ring = ring
        self.elements = elements  # list of monic term-dicts, canonically sorted
        self.cap = cap
        self.truncated = truncated

    def basis_entries(self):
        return [_make_basis_entry(t) for t in self.elements]

    def lead_monomials(self):
        return [max(t, key=grevlex_key) for t in self.elements]

    def polynomials(self):
        return [Polynomial(self.ring, dict(t)) for t in self.elements]


def buchberger(polys, ring, cap=None):
    """Reduced Groebner basis of the input polynomials.

    cap: optional degree bound; pairs with sugar degree beyond the cap
    are dropped and the result is flagged truncated (lead terms are then
    only correct through the cap; sound for homogeneous input).
    """
    field = ring.field
    basis = []  # monic term dicts
    sugars = []
    lead = []
    entries = []
    pairs = set()
    pair_heap = []  # (sugar, lcm degree, i, j), lazy deletion
    truncated = False

    def pair_sugar(i, j):
        lcm = mono_lcm(lead[i], lead[j])
        return max(
            sugars[i] + mono_deg(lcm) - mono_deg(lead[i]),
            sugars[j] + mono_deg(lcm) - mono_deg(lead[j]),
        )

    def add_element(terms, sugar):
        nonlocal pairs
        basis.append(terms)
        sugars.append(sugar)
        L = max(terms, key=grevlex_key)
        lead.append(L)
        entries.append(_make_basis_entry(terms))
        k = len(basis) - 1
        # Gebauer-Moeller: chain criterion on old pairs
        kept = set()
        for (i, j) in pairs:
            lcm_ij = mono_lcm(lead[i], lead[j])
            if (
                mono_divides(L, lcm_ij)
                and lcm_ij != mono_lcm(lead[i], L)
                and lcm_ij != mono_lcm(lead[j], L)
            ):
                continue
            kept.add((i, j))
        # new candidates, criteria M (proper lcm division) and F (equal lcms)
        cand = {i: mono_lcm(lead[i], L) for i in range(k)}
        drop = set()
        for i in cand:
            for j in cand:
                if i != j and j not in drop and cand[j] != cand[i] and mono_divides(cand[j], cand[i]):
                    drop.add(i)
                    break
        seen = {}
        for i in sorted(set(cand) - drop):
            if cand[i] in seen:
                drop.add(i)
            else:
                seen[cand[i]] = i
        pairs = kept
        for i in sorted(set(cand) - drop):
            if mono_gcd_is_one(lead[i], L):
                continue  # product criterion
            pairs.add((i, k))
            heapq.heappush(pair_heap, (pair_sugar(i, k), mono_deg(cand[i]), i, k))

    inputs = sorted(
        (dict(f.terms) for f in polys if f.terms),
        key=lambda t: grevlex_key(max(t, key=grevlex_key)),
    )
    for t in inputs:
        r = _reduce_terms(t, entries, field)
        if r:
            r = _monic_terms(r, field)
            add_element(r, max(sum(m) for m in r))

    while pair_heap:
        s, _, i, j = heapq.heappop(pair_heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        if cap is not None and s > cap:
            truncated = True
            continue
        lcm = mono_lcm(lead[i], lead[j])
        qi, qj = mono_div(lcm, lead[i]), mono_div(lcm, lead[j])
        spoly = {}
        if field.is_prime_field:
            p = field.p
            for m, c in basis[i].items():
                spoly[mono_mul(m, qi)] = c
            for m, c in basis[j].items():
                mm = mono_mul(m, qj)
                v = (spoly.get(mm, 0) - c) % p
                if v:
                    spoly[mm] = v
                else:
                    spoly.pop(mm, None)
        else:
            for m, c in basis[i].items():
                spoly[mono_mul(m, qi)] = c
            for m, c in basis[j].items():
                mm = mono_mul(m, qj)
                v = field.sub(spoly.get(mm, field.zero), c)
                if v != field.zero:
                    spoly[mm] = v
                else:
                    spoly.pop(mm, None)
        r = _reduce_terms(spoly, entries, field)
        if r:
            r = _monic_terms(r, field)
            add_element(r, max(s, max(sum(m) for m in r)))

    return GBData(ring, _reduce_groebner_basis(basis, field), cap=cap, truncated=truncated)


def _reduce_groebner_basis(basis, field):
    """Minimalize and tail-reduce: the unique reduced GB, canonically sorted."""
    if not basis:
        return []
    leads = [max(t, key=grevlex_key) for t in basis]
    keep = []
    for i, lm in enumerate(leads):
        dominated = False
        for j, lm2 in enumerate(leads):
            if j == i:
                continue
            if mono_divides(lm2, lm) and (lm2 != lm or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    minimal = [basis[i] for i in keep]
    reduced = []
    for i, t in enumerate(minimal):
        others = [_make_basis_entry(u) for j, u in enumerate(minimal) if j != i]
        r = _reduce_terms(t, others, field)
        if r:
            reduced.append(_monic_terms(r, field))
    reduced.sort(key=lambda t: grevlex_key(max(t, key=grevlex_key)))
    return reduced


# ---------------------------------------------------------------------------
# module engine (term = (component, monomial)), block order


def _mod_key(term, block_of):
    comp, m = term
    return (-block_of(comp), grevlex_key(m), -comp)


def _mod_lead(el, block_of):
    return max(el, key=lambda t: _mod_key(t, block_of))


def _mod_reduce(el, basis, field, block_of):
    """Full reduction of a module element against monic module basis entries.

    basis: list of (lead_term, lead_mask, element_dict).
    """
    if not el:
        return {}
    prime = field.is_prime_field
    p = field.p if prime else None
    work = dict(el)
    out = {}

    def hkey(term):
        comp, m = term
        return (block_of(comp), (-sum(m), tuple(reversed(m))), comp)

    heap = [(hkey(t), t) for t in work]
    heapq.heapify(heap)
    inheap = set(work)
    while heap:
        _, t = heapq.heappop(heap)
        inheap.discard(t)
        c = work.get(t)
        if not c:
            work.pop(t, None)
            continue
        comp, m = t
        mask = divmask(m)
        red = None
        for (lc, lm), lmask, terms in basis:
            if lc != comp or (lmask & ~mask):
                continue
            if mono_divides(lm, m):
                red = (lm, terms)
                break
        if red is None:
            out[t] = c
            del work[t]
            continue
        lm, terms = red
        q = mono_div(m, lm)
        if prime:
            for (gc, gm), cg in terms.items():
                tt = (gc, mono_mul(gm, q))
                v = (work.get(tt, 0) - c * cg) % p
                if v:
                    work[tt] = v
                    if tt not in inheap:
                        inheap.add(tt)
                        heapq.heappush(heap, (hkey(tt), tt))
                else:
                    work.pop(tt, None)
        else:
            for (gc, gm), cg in terms.items():
                tt = (gc, mono_mul(gm, q))
                v = field.sub(work.get(tt, field.zero), field.mul(c, cg))
                if v != field.zero:
                    work[tt] = v
                    if tt not in inheap:
                        inheap.add(tt)
                        heapq.heappush(heap, (hkey(tt), tt))
                else:
                    work.pop(tt, None)
    return out


def _mod_monic(el, field, block_of):
    lt = _mod_lead(el, block_of)
    c = el[lt]
    if c == field.one:
        return el
    inv = field.inv(c)
    if field.is_prime_field:
        p = field.p
        return {t: (v * inv) % p for t, v in el.items()}
    return {t: field.mul(v, inv) for t, v in el.items()}


def module_buchberger(elements, field, block_of, cap=None):
    """Groebner basis of the submodule generated by module elements.

    elements: list of dicts {(comp, mono): coeff}.  block_of maps a
    component index to its order block (block 0 dominates block 1, ...).
    The product criterion is not applied (it is not valid for modules);
    the chain criteria are.  Returns (basis, truncated).
    """
    basis = []
    lead = []
    sugars = []
    entries = []
    pairs = set()
    pair_heap = []
    truncated = False

    def entry(el):
        lt = _mod_lead(el, block_of)
        return (lt, divmask(lt[1]), el)

    def el_sugar(el):
        return max(sum(m) for (_, m) in el)

    def pair_sugar(i, j):
        (_, mi), (_, mj) = lead[i], lead[j]
        lcm = mono_lcm(mi, mj)
        return max(
            sugars[i] + mono_deg(lcm) - mono_deg(mi),
            sugars[j] + mono_deg(lcm) - mono_deg(mj),
        )

    def add_element(el, sugar):
        nonlocal pairs
        basis.append(el)
        lead.append(_mod_lead(el, block_of))
        sugars.append(sugar)
        entries.append(entry(el))
        k = len(basis) - 1
        Lc, Lm = lead[k]
        kept = set()
        for (i, j) in pairs:
            ci, mi = lead[i]
            cj, mj = lead[j]
            if ci == cj == Lc:
                lcm_ij = mono_lcm(mi, mj)
                if (
                    mono_divides(Lm, lcm_ij)
                    and lcm_ij != mono_lcm(mi, Lm)
                    and lcm_ij != mono_lcm(mj, Lm)
                ):
                    continue
            kept.add((i, j))
        cand = {}
        for i in range(k):
            ci, mi = lead[i]
            if ci == Lc:
                cand[i] = mono_lcm(mi, Lm)
        drop = set()
        for i in cand:
            for j in cand:
                if i != j and j not in drop and cand[j] != cand[i] and mono_divides(cand[j], cand[i]):
                    drop.add(i)
                    break
        seen = {}
        for i in sorted(set(cand) - drop):
            if cand[i] in seen:
                drop.add(i)
            else:
                seen[cand[i]] = i
        pairs = kept
        for i in sorted(set(cand) - drop):
            pairs.add((i, k))
            heapq.heappush(pair_heap, (pair_sugar(i, k), i, k))

    inputs = [dict(e) for e in elements if e]
    inputs.sort(key=lambda e: _mod_key(_mod_lead(e, block_of), block_of))
    for el in inputs:
        r = _mod_reduce(el, entries, field, block_of)
        if r:
            r = _mod_monic(r, field, block_of)
            add_element(r, el_sugar(r))

    while pair_heap:
        s, i, j = heapq.heappop(pair_heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        if cap is not None and s > cap:
            truncated = True
            continue
        (ci, mi), (cj, mj) = lead[i], lead[j]
        lcm = mono_lcm(mi, mj)
        qi, qj = mono_div(lcm, mi), mono_div(lcm, mj)
        spoly = {}
        if field.is_prime_field:
            p = field.p
            for (gc, gm), c in basis[i].items():
                spoly[(gc, mono_mul(gm, qi))] = c
            for (gc, gm), c in basis[j].items():
                tt = (gc, mono_mul(gm, qj))
                v = (spoly.get(tt, 0) - c) % p
                if v:
                    spoly[tt] = v
                else:
                    spoly.pop(tt, None)
        else:
            for (gc, gm), c in basis[i].items():
                spoly[(gc, mono_mul(gm, qi))] = c
            for (gc, gm), c in basis[j].items():
                tt = (gc, mono_mul(gm, qj))
                v = field.sub(spoly.get(tt, field.zero), c)
                if v != field.zero:
                    spoly[tt] = v
                else:
                    spoly.pop(tt, None)
        r = _mod_reduce(spoly, entries, field, block_of)
        if r:
            r = _mod_monic(r, field, block_of)
            add_element(r, max(s, el_sugar(r)))

    return basis, truncated


def syzygies_of_columns(columns, rank, field, cap=None):
    """Generators of the syzygy module of module columns inside S^rank.

    columns: list of dicts {(comp, mono): coeff} with comp < rank.
    Returns (syzygies, truncated); syzygies are elements over S^k with
    k = len(columns) and components renumbered 0..k-1.
    """
    nv = None
    for col in columns:
        for (_, m) in col:
            nv = len(m)
            break
        if nv is not None:
            break
    if nv is None:
        raise ValueError("no terms in any column")
    unit = (0,) * nv

    def block_of(comp):
        return 0 if comp < rank else 1

    graph = []
    for j, col in enumerate(columns):
        el = dict(col)
        el[(rank + j, unit)] = field.one
        graph.append(el)
    basis, truncated = module_buchberger(graph, field, block_of, cap=cap)
    syz = []
    for el in basis:
        if all(comp >= rank for (comp, _) in el):
            syz.append({(comp - rank, m): c for (comp, m), c in el.items()})
    return syz, truncated


# ---------------------------------------------------------------------------


class GradedIdeal:
    """A homogeneous ideal with cached Groebner data.  Immutable."""

    def __init__(self, ring: PolynomialRing, generators, _validate=True):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g.is_zero():
                continue
            if _validate and not g.is_homogeneous():
                raise ValueError(f"inhomogeneous generator: {g}")
            gens.append(g)
        self.ring = ring
        self.gens = tuple(gens)
        self._gb = {}

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.gens[:6])
        if len(self.gens) > 6:
            inside += f", ... ({len(self.gens)} gens)"
        return f"Ideal({inside})"

    # -- Groebner ------------------------------------------------------------

    def gb(self, cap=None) -> GBData:
        if cap in self._gb:
            return self._gb[cap]
        if None in self._gb:
            return self._gb[None]
        data = buchberger(self.gens, self.ring, cap=cap)
        self._gb[cap] = data
        return data

    def groebner_basis(self):
        """Reduced Groebner basis as a new GradedIdeal (cache included)."""
        data = self.gb()
        out = GradedIdeal(self.ring, data.polynomials(), _validate=False)
        out._gb[None] = data
        return out

    def lead_monomials(self, cap=None):
        return self.gb(cap).lead_monomials()

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        data = self.gb()
        r = _reduce_terms(dict(f.terms), data.basis_entries(), self.ring.field)
        return Polynomial(self.ring, r)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if not self.gens:
            return False
        return any(mono_deg(m) == 0 for m in self.lead_monomials())

    # -- derived ideals --------------------------------------------------------

    def add(self, extra) -> "GradedIdeal":
        return GradedIdeal(self.ring, list(self.gens) + list(extra))

    def quotient(self, f: Polynomial) -> "GradedIdeal":
        """The ideal quotient (self : f), computed by the syzygy method."""
        if f.is_zero():
            raise ValueError("quotient by the zero polynomial")
        if not f.is_homogeneous():
            raise ValueError("quotient divisor must be homogeneous")
        if not self.gens:
            return GradedIdeal(self.ring, [])
        field = self.ring.field
        cols = [{(0, m): c for m, c in g.terms.items()} for g in self.gens]
        cols.append({(0, m): c for m, c in f.terms.items()})
        syz, _ = syzygies_of_columns(cols, 1, field)
        k = len(self.gens)
        quots = []
        for s in syz:
            terms = {m: c for (comp, m), c in s.items() if comp == k}
            if terms:
                quots.append(Polynomial(self.ring, terms))
        out = GradedIdeal(self.ring, quots, _validate=False)
        return out.groebner_basis()

    # -- numerics ---------------------------------------------------------------

    def hilbert_numerator(self):
        from gocy import hilbert

        return hilbert.numerator_from_leads(self.lead_monomials(), self.ring.nvars)

    def dimension(self) -> int:
        """Krull dimension of S/I (affine)."""
        from gocy import hilbert

        K = self.hilbert_numerator()
        if all(c == 0 for c in K):
            return 0  # unit ideal
        _, strips = hilbert.strip_unit_roots(K)
        return self.ring.nvars - strips

    def codimension(self) -> int:
        """#variables - dim(S/I); the unit ideal maps to #variables by convention."""
        if self.is_unit():
            return self.ring.nvars
        return self.ring.nvars - self.dimension()


def normal_form(f: Polynomial, I: GradedIdeal) -> Polynomial:
    return I.normal_form(f)


def groebner_basis(I: GradedIdeal) -> GradedIdeal:
    return I.groebner_basis()


def ideal_quotient(I: GradedIdeal, f: Polynomial) -> GradedIdeal:
    return I.quotient(f)


def codimension(I: GradedIdeal) -> int:
    return I.codimension()
