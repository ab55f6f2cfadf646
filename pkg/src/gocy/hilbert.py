"""Hilbert functions, series numerators, Macaulay bounds, Gotzmann growth.

The Hilbert series of S/I is represented by its numerator K(t) over
(1-t)^nvars, stored as a plain integer coefficient list.  Numerators of
monomial ideals come from the standard pivot-splitting recursion; values,
Hilbert polynomials, dimension and multiplicity all derive from K(t)
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from gocy.ring import mono_deg, mono_divides

# -- integer polynomials in t as coefficient lists ---------------------------


def poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)])


def poly_sub(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_shift(a, s):
    return [0] * s + list(a) if a else []


# -- numerator of a monomial quotient ----------------------------------------


def _minimalize_monomials(gens):
    gens = sorted(set(gens), key=lambda m: (mono_deg(m), m))
    out = []
    for m in gens:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def numerator_from_leads(lead_monomials, nvars):
    """Numerator K(t) of the Hilbert series of S/(monomial ideal)."""
    gens = _minimalize_monomials([tuple(m) for m in lead_monomials])
    if any(mono_deg(m) == 0 for m in gens):
        return []  # unit ideal: series 0
    return _numerator_rec(gens)


def _numerator_rec(gens):
    if not gens:
        return [1]
    if len(gens) == 1:
        return poly_sub([1], poly_shift([1], mono_deg(gens[0])))
    # pairwise coprime generators form a regular sequence
    support = [frozenset(i for i, e in enumerate(m) if e) for m in gens]
    coprime = True
    seen = set()
    for s in support:
        if s & seen:
            coprime = False
            break
        seen |= s
    if coprime:
        K = [1]
        for m in gens:
            K = poly_mul(K, poly_sub([1], poly_shift([1], mono_deg(m))))
        return K
    # pivot on the most frequent variable
    counts = [0] * len(gens[0])
    for m in gens:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    piv = max(range(len(counts)), key=lambda i: counts[i])
    ei = tuple(1 if i == piv else 0 for i in range(len(counts)))
    # K(I) = K(I + <x>) + t * K(I : x)
    plus = _minimalize_monomials([m for m in gens if m[piv] == 0] + [ei])
    colon = _minimalize_monomials(
        [tuple(e - 1 if i == piv and e else e for i, e in enumerate(m)) for m in gens]
    )
    return poly_add(_numerator_rec(plus), poly_shift(_numerator_rec(colon), 1))


# -- values / polynomial / dimension / multiplicity ---------------------------


def hf_value(numerator, nvars, d):
    """Exact Hilbert function value at degree d (0 for d < 0)."""
    if d < 0:
        return 0
    total = 0
    for k, c in enumerate(numerator):
        if c and d - k >= 0:
            total += c * comb(d - k + nvars - 1, nvars - 1)
    return total


def series_values(numerator, nvars, t_max):
    return [hf_value(numerator, nvars, d) for d in range(t_max + 1)]


def binomial_poly_value(a, r):
    """The polynomial extension of binomial(a, r) at any integer a."""
    num = 1
    for i in range(r):
        num *= a - i
    v = Fraction(num, 1)
    for i in range(2, r + 1):
        v /= i
    return v


def hp_value(numerator, nvars, d):
    """Hilbert polynomial of S/I (numerator K) evaluated at any integer d."""
    total = Fraction(0)
    for k, c in enumerate(numerator):
        if c:
            total += c * binomial_poly_value(d - k + nvars - 1, nvars - 1)
    if total.denominator != 1:
        raise ArithmeticError("Hilbert polynomial value is not an integer")
    return int(total)


def strip_unit_roots(numerator):
    """Factor K = (1-t)^s * K~ with K~(1) != 0; returns (K~, s)."""
    K = list(numerator)
    s = 0
    while K and sum(K) == 0:
        # divide by (1 - t): partial sums
        acc = 0
        out = []
        for c in K[:-1]:
            acc += c
            out.append(acc)
        K = poly_trim(out)
        s += 1
    return K, s


def dimension_from_numerator(numerator, nvars):
    if all(c == 0 for c in numerator):
        return 0
    _, s = strip_unit_roots(numerator)
    return nvars - s


def multiplicity_from_numerator(numerator):
    K, _ = strip_unit_roots(numerator)
    return sum(K)


def hilbert_polynomial_coeffs(numerator, nvars):
    """Coefficients (constant first, exact Fractions) of the Hilbert polynomial.

    Recovered by Lagrange interpolation from exact series values in
    degrees past deg K, where the function and the polynomial agree.
    """
    dim = dimension_from_numerator(numerator, nvars)
    if dim == 0:
        return ()
    deg = dim - 1
    d0 = len(numerator)
    xs = list(range(d0, d0 + deg + 1))
    ys = [hf_value(numerator, nvars, x) for x in xs]
    # Lagrange in coefficient form
    coeffs = [Fraction(0)] * (deg + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = _poly_mul_linear(basis, Fraction(-xj))
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    return tuple(coeffs)


def _poly_mul_linear(coeffs, c0):
    """(coeffs as polynomial) * (t + c0), constant-first Fractions."""
    out = [Fraction(0)] * (len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        out[k] += c * c0
        out[k + 1] += c
    return out


# -- Macaulay / Gotzmann -------------------------------------------------------


def macaulay_expansion(h: int, i: int):
    """Greedy binomial expansion h = C(a_i, i) + C(a_{i-1}, i-1) + ...

    Returns the list of (a_k, k) pairs with a_i > a_{i-1} > ... ; unique.
    """
    if h < 0:
        raise ValueError("h must be nonnegative")
    if i < 1:
        raise ValueError("index must be >= 1")
    terms = []
    cur = h
    idx = i
    while cur > 0:
        a = idx
        while comb(a + 1, idx) <= cur:
            a += 1
        terms.append((a, idx))
        cur -= comb(a, idx)
        idx -= 1
        if idx == 0 and cur > 0:
            raise ArithmeticError("expansion failed")  # cannot happen
    return terms


def expansion_value(terms):
    return sum(comb(a, k) for a, k in terms)


def macaulay_bound(h: int, i: int) -> int:
    """h^<i>: the maximal admissible Hilbert value in degree i+1."""
    return sum(comb(a + 1, k + 1) for a, k in macaulay_expansion(h, i))


def macaulay_expansion_and_bound(h: int, i: int):
    terms = macaulay_expansion(h, i)
    return terms, sum(comb(a + 1, k + 1) for a, k in terms)


def gotzmann_growth(h_t: int, t: int, j: int) -> int:
    """Persistence value h_{t+j} from the expansion of h_t at index t."""
    if j < 0:
        raise ValueError("j must be >= 0")
    return sum(comb(a + j, k + j) for a, k in macaulay_expansion(h_t, t))


def numerator_divides(series_numerator, d: int):
    """f with f(t) * (1 - t^d) == numerator, when the division is exact."""
    if d < 1:
        raise ValueError("d must be >= 1")
    K = list(series_numerator)
    if not K:
        return []
    # f_k = K_k + f_{k-d}
    f = []
    for k in range(len(K)):
        v = K[k] + (f[k - d] if k - d >= 0 else 0)
        f.append(v)
    f = poly_trim(f)
    if poly_sub(poly_mul(f, poly_sub([1], poly_shift([1], d))), K):
        return None
    return f


# -- public HilbertData --------------------------------------------------------


@dataclass(frozen=True)
class HilbertData:
    """Hilbert values, series numerator over (1-t)^nvars, Hilbert polynomial."""

    nvars: int
    numerator: tuple
    values: tuple
    dim: int
    hp_coeffs: tuple

    def hf(self, d: int) -> int:
        return hf_value(self.numerator, self.nvars, d)

    def hp(self, d: int) -> int:
        return hp_value(self.numerator, self.nvars, d)

    def h_vector(self):
        K, _ = strip_unit_roots(self.numerator)
        return tuple(K)

    @property
    def multiplicity(self) -> int:
        return multiplicity_from_numerator(self.numerator)


def hilbert_function(I, t_max: int) -> HilbertData:
    """Exact Hilbert data of S/I through degree t_max (full Groebner basis)."""
    K = tuple(I.hilbert_numerator())
    nv = I.ring.nvars
    return HilbertData(
        nvars=nv,
        numerator=K,
        values=tuple(series_values(K, nv, t_max)),
        dim=dimension_from_numerator(K, nv),
        hp_coeffs=hilbert_polynomial_coeffs(K, nv),
    )


def hf_truncated(I, t_max: int):
    """Hilbert values of S/I for 0..t_max via a degree-truncated basis."""
    leads = I.lead_monomials(cap=t_max + 1)
    K = numerator_from_leads(leads, I.ring.nvars)
    return series_values(K, I.ring.nvars, t_max)


def multiplicity(I) -> int:
    """Sum of Hilbert values for Artinian quotients, normalized leading
    coefficient of the Hilbert polynomial otherwise."""
    return multiplicity_from_numerator(I.hilbert_numerator())
