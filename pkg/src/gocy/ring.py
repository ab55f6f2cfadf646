"""Standard-graded multivariate polynomials with exact coefficients.

Monomials are exponent tuples; the monomial order is graded reverse
lexicographic throughout (the only order the engine needs).  Polynomials
are immutable once built: every arithmetic operation returns a new value,
so concurrent readers are always safe.
"""

from __future__ import annotations

import itertools
import math
from math import comb

# ---------------------------------------------------------------------------
# monomials: plain exponent tuples


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True if a | b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    """b / a, assuming a | b."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd_is_one(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def grevlex_key(m):
    """Sort key: m1 > m2 in grevlex iff grevlex_key(m1) > grevlex_key(m2)."""
    return (sum(m), tuple(-e for e in reversed(m)))


def divmask(m) -> int:
    """Bitmask of variables present; fast negative divisibility filter."""
    mask = 0
    bit = 1
    for e in m:
        if e:
            mask |= bit
        bit <<= 1
    return mask


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree d, in a fixed deterministic order."""
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def dim_of_degree(nvars: int, d: int) -> int:
    if d < 0:
        return 0
    return comb(nvars - 1 + d, d)


# ---------------------------------------------------------------------------


class PolynomialRing:
    """k[x_0..x_n], standard grading, grevlex order."""

    __slots__ = ("variables", "field", "order", "_var_index")

    def __init__(self, variables, field, order="grevlex"):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        if order != "grevlex":
            raise ValueError("only grevlex is supported")
        self.variables = variables
        self.field = field
        self.order = order
        self._var_index = {v: i for i, v in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.variables == other.variables
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.variables, self.field))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.variables)}]"

    # -- constructors -------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self._var_index[i]
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, m, c=None) -> "Polynomial":
        c = self.field.one if c is None else self.field.normalize(c)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {tuple(m): c})

    def from_terms(self, terms: dict) -> "Polynomial":
        fz = self.field.zero
        clean = {m: c for m, c in terms.items() if c != fz}
        return Polynomial(self, clean)

    def constant(self, c) -> "Polynomial":
        return self.monomial((0,) * self.nvars, c)

    def random_form(self, d: int, rng, dense=True) -> "Polynomial":
        """Seeded homogeneous form of degree d with uniform random coefficients."""
        terms = {}
        for m in monomials_of_degree(self.nvars, d):
            c = self.field.random(rng)
            if c != self.field.zero:
                terms[m] = c
        if not terms and dense:
            # astronomically unlikely, but keep the contract: never the zero form
            m = (d,) + (0,) * (self.nvars - 1)
            terms[m] = self.field.one
        return Polynomial(self, terms)

    def monomials_of_degree(self, d: int):
        return monomials_of_degree(self.nvars, d)

    def dim_of_degree(self, d: int) -> int:
        return dim_of_degree(self.nvars, d)


class Polynomial:
    """Immutable polynomial: dict monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree (max over terms); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self) -> int:
        """Degree of a homogeneous polynomial; raises if inhomogeneous."""
        degs = {sum(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop() if degs else -1

    # -- leading data (grevlex) ---------------------------------------------

    def lead_monomial(self):
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no lead monomial")
            self._lm = max(self.terms, key=grevlex_key)
        return self._lm

    def lead_coeff(self):
        return self.terms[self.lead_monomial()]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        F = self.ring.field
        inv = F.inv(self.lead_coeff())
        if inv == F.one:
            return self
        return Polynomial(self.ring, {m: F.mul(c, inv) for m, c in self.terms.items()})

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        F = self.ring.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = F.add(res.get(m, F.zero), c)
            if v == F.zero:
                res.pop(m, None)
            else:
                res[m] = v
        return Polynomial(self.ring, res)

    def __sub__(self, other):
        F = self.ring.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = F.sub(res.get(m, F.zero), c)
            if v == F.zero:
                res.pop(m, None)
            else:
                res[m] = v
        return Polynomial(self.ring, res)

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F.normalize(c)
        if c == F.zero:
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.mul(v, c) for m, v in self.terms.items()})

    def mul_term(self, c, m) -> "Polynomial":
        """self * c*x^m."""
        F = self.ring.field
        if c == F.zero:
            return self.ring.zero()
        return Polynomial(
            self.ring, {mono_mul(mm, m): F.mul(v, c) for mm, v in self.terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        F = self.ring.field
        fz = F.zero
        res = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                v = (res.get(m, fz) + c1 * c2) if F.is_prime_field else F.add(res.get(m, fz), F.mul(c1, c2))
                res[m] = v
        if F.is_prime_field:
            p = F.p
            res = {m: v % p for m, v in res.items()}
        return Polynomial(self.ring, {m: v for m, v in res.items() if v != fz})

    __rmul__ = scale

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms and self.ring == other.ring

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- substitution / evaluation -------------------------------------------

    def substitute(self, var_index: int, value: "Polynomial") -> "Polynomial":
        """Replace one variable by a polynomial (in the same ring)."""
        ring = self.ring
        # group terms by the exponent of the variable, then Horner
        by_exp = {}
        for m, c in self.terms.items():
            e = m[var_index]
            m0 = m[:var_index] + (0,) + m[var_index + 1 :]
            by_exp.setdefault(e, {})[m0] = c
        result = ring.zero()
        for e in sorted(by_exp, reverse=True):
            part = Polynomial(ring, by_exp[e])
            result = result + part * (value**e) if e else result + part
        return result

    def restrict_variables(self, keep: list) -> "Polynomial":
        """Re-express in the subring on the kept variable indices.

        All terms must be supported on the kept variables.
        """
        ring = self.ring
        sub = PolynomialRing([ring.variables[i] for i in keep], ring.field)
        terms = {}
        keepset = set(keep)
        for m, c in self.terms.items():
            for i, e in enumerate(m):
                if e and i not in keepset:
                    raise ValueError("polynomial involves a dropped variable")
            terms[tuple(m[i] for i in keep)] = c
        return Polynomial(sub, terms)

    def evaluate(self, point):
        """Exact evaluation at a field-element tuple."""
        F = self.ring.field
        total = F.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                for _ in range(e):
                    v = F.mul(v, x)
            total = F.add(total, v)
        return total

    def partial(self, var_index: int) -> "Polynomial":
        """Partial derivative with respect to one variable."""
        F = self.ring.field
        res = {}
        for m, c in self.terms.items():
            e = m[var_index]
            if e == 0:
                continue
            m2 = m[:var_index] + (e - 1,) + m[var_index + 1 :]
            v = F.mul(c, F.normalize(e))
            if v != F.zero:
                res[m2] = F.add(res.get(m2, F.zero), v) if m2 in res else v
        return Polynomial(self.ring, {m: c for m, c in res.items() if c != F.zero})

    # -- display ---------------------------------------------------------------

    def _term_str(self, m, c) -> str:
        names = self.ring.variables
        parts = []
        for name, e in zip(names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        body = "*".join(parts)
        cs = str(c)
        if not body:
            return cs
        if c == self.ring.field.one:
            return body
        return f"{cs}*{body}"

    def __str__(self):
        if not self.terms:
            return "0"
        monos = sorted(self.terms, key=grevlex_key, reverse=True)
        return " + ".join(self._term_str(m, self.terms[m]) for m in monos)

    def __repr__(self):
        return f"<{self}>"


# ---------------------------------------------------------------------------


def diff_monomial_coeff(alpha, beta) -> int:
    """Integer coefficient of d^alpha applied to x^beta: product of falling factorials."""
    c = 1
    for a, b in zip(alpha, beta):
        if a > b:
            return 0
        # b*(b-1)*...*(b-a+1)
        for k in range(a):
            c *= b - k
    return c


def diff_apply(operator: Polynomial, target: Polynomial) -> Polynomial:
    """Apply a constant-coefficient differential operator to a polynomial.

    The operator lives in the dual variables: each of its monomials
    x^alpha acts as the iterated partial derivative d^alpha.  Bilinear in
    both arguments; the result of homogeneous inputs is homogeneous of
    degree deg(target) - deg(operator), or zero.
    """
    if operator.ring.nvars != target.ring.nvars:
        raise ValueError(
            f"dimension mismatch: operator has {operator.ring.nvars} variables, "
            f"target has {target.ring.nvars}"
        )
    ring = target.ring
    F = ring.field
    res = {}
    for alpha, ca in operator.terms.items():
        for beta, cb in target.terms.items():
            k = diff_monomial_coeff(alpha, beta)
            if k == 0:
                continue
            m = mono_div(beta, alpha) if mono_divides(alpha, beta) else None
            if m is None:
                continue
            v = F.mul(F.mul(ca, cb), F.normalize(k))
            w = F.add(res.get(m, F.zero), v)
            if w == F.zero:
                res.pop(m, None)
            else:
                res[m] = w
    return Polynomial(ring, res)
