"""Exact sparse Laurent arithmetic over Q in a fixed variable order.

A :class:`VariableContext` declares, once, the residue variables (in
contour order, smallest modulus first) followed by the ambient geometry
symbols with their cohomological degrees.  Every polynomial carries a
reference to its context; mixing contexts is an error, not a coercion.

Exponent keys are dense integer tuples over the full namespace.
Residue variables may appear with negative exponents (the elimination
loop works with truncated Laurent tails); geometry symbols never do.
All coefficients are :class:`fractions.Fraction`.  No floats enter
anywhere in this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

Key = tuple  # dense exponent vector, one slot per context variable

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class VariableContext:
    """Fixed-order variable namespace.

    residue_vars: contour order, position i means |z_i| << |z_{i+1}|.
    geometry: (symbol, degree) pairs, e.g. (("L", 1), ("c1", 1), ("c2", 2)).
    weights: optional filtration weights for the residue variables,
        weakly monotone in contour position.
    dim_cap: if set, products silently drop terms whose total geometry
        degree exceeds the cap (integration over an n-fold kills them).
    """

    residue_vars: tuple = ()
    geometry: tuple = ()
    weights: tuple | None = None
    dim_cap: int | None = None

    def __post_init__(self):
        names = tuple(self.residue_vars) + tuple(n for n, _ in self.geometry)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names: %r" % (names,))
        for n in names:
            if not _NAME_RE.fullmatch(n):
                raise ValueError("bad variable name %r" % n)
        if self.weights is not None:
            if len(self.weights) != len(self.residue_vars):
                raise ValueError("weights length mismatch")
            if any(a > b for a, b in zip(self.weights, self.weights[1:])):
                raise ValueError("weights must be weakly monotone in contour position")
        degrees = (0,) * len(self.residue_vars) + tuple(d for _, d in self.geometry)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "degrees", degrees)

    @property
    def k(self) -> int:
        return len(self.residue_vars)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError("unknown variable %r" % name) from None

    def zero_key(self) -> Key:
        return (0,) * self.nvars

    def geometry_degree(self, key: Key) -> int:
        return sum(e * d for e, d in zip(key, self.degrees) if e)


def _norm_terms(terms: Mapping) -> dict:
    out = {}
    for key, coef in terms.items():
        coef = Fraction(coef)
        if coef:
            out[tuple(key)] = coef
    return out


@dataclass(frozen=True, eq=False)
class MPoly:
    """Immutable sparse polynomial (Laurent in the residue variables)."""

    ctx: VariableContext
    terms: dict = field(default_factory=dict)

    @classmethod
    def zero(cls, ctx: VariableContext) -> "MPoly":
        return cls(ctx, {})

    @classmethod
    def const(cls, ctx: VariableContext, value) -> "MPoly":
        value = Fraction(value)
        return cls(ctx, {ctx.zero_key(): value} if value else {})

    @classmethod
    def var(cls, ctx: VariableContext, name: str, exp: int = 1) -> "MPoly":
        i = ctx.index(name)
        key = list(ctx.zero_key())
        key[i] = exp
        return cls(ctx, {tuple(key): Fraction(1)})

    @classmethod
    def from_terms(cls, ctx: VariableContext, terms: Mapping) -> "MPoly":
        return cls(ctx, _norm_terms(terms))

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(k) for k in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant: %s" % self)
        return self.terms.get(self.ctx.zero_key(), Fraction(0))

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "MPoly") -> None:
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ValueError("context mismatch")

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.ctx, other)
        self._check(other)
        terms = dict(self.terms)
        for key, coef in other.terms.items():
            acc = terms.get(key)
            if acc is None:
                terms[key] = coef
            else:
                acc = acc + coef
                if acc:
                    terms[key] = acc
                else:
                    del terms[key]
        return MPoly(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        cap = self.ctx.dim_cap
        degrees = self.ctx.degrees
        terms: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                if cap is not None:
                    gdeg = sum(e * d for e, d in zip(key, degrees) if e)
                    if gdeg > cap:
                        continue
                c = c1 * c2
                acc = terms.get(key)
                if acc is None:
                    terms[key] = c
                else:
                    acc = acc + c
                    if acc:
                        terms[key] = acc
                    else:
                        del terms[key]
        return MPoly(self.ctx, terms)

    __rmul__ = __mul__

    def scale(self, value) -> "MPoly":
        value = Fraction(value)
        if not value:
            return MPoly.zero(self.ctx)
        return MPoly(self.ctx, {k: c * value for k, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power on MPoly")
        out = MPoly.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return out

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            if self.is_constant() or isinstance(other, (int, Fraction)):
                try:
                    return self.is_constant() and self.constant_value() == Fraction(other)
                except (TypeError, ValueError):
                    return NotImplemented
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    __hash__ = None

    # -- structure ----------------------------------------------------

    def max_exponent(self, i: int) -> int:
        """Largest exponent of variable i present (0 for the zero poly)."""
        return max((k[i] for k in self.terms), default=0)

    def min_exponent(self, i: int) -> int:
        return min((k[i] for k in self.terms), default=0)

    def coefficient_of(self, i: int, exp: int) -> "MPoly":
        """Coefficient of names[i]^exp, with that variable slot zeroed."""
        terms = {}
        for key, coef in self.terms.items():
            if key[i] == exp:
                nk = list(key)
                nk[i] = 0
                terms[tuple(nk)] = coef
        return MPoly(self.ctx, terms)

    def geometry_part_degrees(self) -> set:
        return {self.ctx.geometry_degree(k) for k in self.terms}

    def subs_num(self, assignment: Mapping) -> "MPoly":
        """Substitute rational values for a subset of variables."""
        idx_val = {self.ctx.index(n): Fraction(v) for n, v in assignment.items()}
        terms: dict = {}
        for key, coef in self.terms.items():
            c = coef
            nk = list(key)
            ok = True
            for i, v in idx_val.items():
                e = key[i]
                if e:
                    if v == 0 and e < 0:
                        ok = False
                        break
                    c = c * v ** e
                    nk[i] = 0
            if not ok:
                raise ZeroDivisionError("substituting 0 into a negative power")
            key2 = tuple(nk)
            acc = terms.get(key2)
            terms[key2] = c if acc is None else acc + c
        return MPoly(self.ctx, {k: c for k, c in terms.items() if c})

    def eval_at(self, assignment: Mapping) -> Fraction:
        out = self.subs_num(assignment)
        return out.constant_value()

    def map_context(self, ctx: VariableContext) -> "MPoly":
        """Reinterpret in another context sharing all used variable names."""
        trans = [ctx.index(n) for n in self.ctx.names]
        terms = {}
        for key, coef in self.terms.items():
            nk = [0] * ctx.nvars
            for i, e in enumerate(key):
                if e:
                    nk[trans[i]] += e
            terms[tuple(nk)] = terms.get(tuple(nk), Fraction(0)) + coef
        return MPoly(ctx, {k: c for k, c in terms.items() if c})

    def __repr__(self):
        return format_poly(self)

    __str__ = __repr__


# -- canonical text form ----------------------------------------------


def _term_sort_key(key: Key):
    total = sum(key)
    nz = tuple((i, -e) for i, e in enumerate(key) if e)
    return (-total, nz)


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_poly(p: MPoly) -> str:
    """Render in the canonical text form, e.g. ``3*L^2 + 2*L*c1 + c2``."""
    if not p.terms:
        return "0"
    chunks = []
    for key in sorted(p.terms, key=_term_sort_key):
        coef = p.terms[key]
        factors = []
        for i, e in enumerate(key):
            if not e:
                continue
            name = p.ctx.names[i]
            factors.append(name if e == 1 else "%s^%d" % (name, e))
        mono = "*".join(factors)
        acoef = -coef if coef < 0 else coef
        if not mono:
            body = _format_coef(acoef)
        elif acoef == 1:
            body = mono
        else:
            body = "%s*%s" % (_format_coef(acoef), mono)
        if not chunks:
            chunks.append(body if coef > 0 else "-" + body)
        else:
            chunks.append(("+ " if coef > 0 else "- ") + body)
    return " ".join(chunks)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op>[\^*/+-]))"
)


def _tokenize(text: str):
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError("cannot parse %r" % text[pos:])
            return
        pos = m.end()
        kind = m.lastgroup
        yield kind, m.group(kind)


def parse_poly(ctx: VariableContext, text: str) -> MPoly:
    """Parse the canonical text form (inverse of :func:`format_poly`)."""
    tokens = list(_tokenize(text))
    if not tokens:
        raise ValueError("empty polynomial text")
    out = MPoly.zero(ctx)
    i = 0
    n = len(tokens)
    while i < n:
        sign = 1
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ValueError("dangling sign in %r" % text)
        coef = Fraction(sign)
        key = [0] * ctx.nvars
        expect_factor = True
        while i < n:
            kind, tok = tokens[i]
            if kind == "op" and tok in "+-" and not expect_factor:
                break
            if kind == "num":
                val = Fraction(int(tok))
                i += 1
                if i < n and tokens[i] == ("op", "/"):
                    i += 1
                    if i >= n or tokens[i][0] != "num":
                        raise ValueError("bad rational in %r" % text)
                    val /= int(tokens[i][1])
                    i += 1
                coef *= val
            elif kind == "name":
                idx = ctx.index(tok)
                exp = 1
                i += 1
                if i < n and tokens[i] == ("op", "^"):
                    i += 1
                    esign = 1
                    if i < n and tokens[i] == ("op", "-"):
                        esign = -1
                        i += 1
                    if i >= n or tokens[i][0] != "num":
                        raise ValueError("bad exponent in %r" % text)
                    exp = esign * int(tokens[i][1])
                    i += 1
                key[idx] += exp
            else:
                raise ValueError("unexpected %r in %r" % (tok, text))
            expect_factor = False
            if i < n and tokens[i] == ("op", "*"):
                i += 1
                expect_factor = True
        out = out + MPoly.from_terms(ctx, {tuple(key): coef})
    return out


# -- linear forms ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LinearForm:
    """A denominator (or numerator) factor Sum a_i z_i + const, with multiplicity.

    The constant part is a polynomial in geometry symbols only.  At least
    one residue coefficient or the constant part must be nonzero.
    """

    ctx: VariableContext
    z_coeffs: tuple  # Fractions, one per residue variable
    const_part: MPoly
    multiplicity: int = 1

    def __post_init__(self):
        if len(self.z_coeffs) != self.ctx.k:
            raise ValueError("z_coeffs length mismatch")
        for i in range(self.ctx.k):
            if any(key[i] for key in self.const_part.terms):
                raise ValueError("const_part touches a residue variable")
        if not any(self.z_coeffs) and self.const_part.is_zero():
            raise ValueError("identically zero linear form")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")

    def leading_index(self) -> int | None:
        """Index of the largest-modulus residue variable present."""
        for i in range(self.ctx.k - 1, -1, -1):
            if self.z_coeffs[i]:
                return i
        return None

    def as_poly(self) -> MPoly:
        p = self.const_part
        for i, a in enumerate(self.z_coeffs):
            if a:
                p = p + MPoly.var(self.ctx, self.ctx.names[i]).scale(a)
        return p

    def with_multiplicity(self, m: int) -> "LinearForm":
        return LinearForm(self.ctx, self.z_coeffs, self.const_part, m)

    def key(self):
        """Hashable identity of the form itself, ignoring multiplicity."""
        return (self.z_coeffs, tuple(sorted(self.const_part.terms.items())))

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.key() == other.key()
            and self.multiplicity == other.multiplicity
        )

    __hash__ = None

    def __repr__(self):
        body = format_poly(self.as_poly())
        if self.multiplicity == 1:
            return "(%s)" % body
        return "(%s)^%d" % (body, self.multiplicity)


def linear_form(ctx: VariableContext, poly: MPoly, multiplicity: int = 1) -> LinearForm:
    """Build a LinearForm from a degree <= 1 polynomial in the residue vars."""
    coeffs = [Fraction(0)] * ctx.k
    const_terms: dict = {}
    for key, coef in poly.terms.items():
        zpart = [(i, e) for i, e in enumerate(key[: ctx.k]) if e]
        if not zpart:
            const_terms[key] = coef
            continue
        if len(zpart) > 1 or zpart[0][1] != 1 or any(key[ctx.k:]):
            raise ValueError("not linear in residue variables: %s" % poly)
        coeffs[zpart[0][0]] += coef
    return LinearForm(ctx, tuple(coeffs), MPoly(ctx, const_terms), multiplicity)


def parse_linear_form(ctx: VariableContext, text: str) -> LinearForm:
    """Parse ``(2*z10 - z20)`` or ``(z10 + z01 - z11)^3``."""
    text = text.strip()
    mult = 1
    if text.endswith(")") is False and ")" in text:
        body, _, tail = text.rpartition(")")
        tail = tail.strip()
        if not tail.startswith("^"):
            raise ValueError("bad linear form %r" % text)
        mult = int(tail[1:])
        text = body + ")"
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return linear_form(ctx, parse_poly(ctx, text), mult)
