"""Iterated residue at infinity for rational forms with linear denominators.

The contour convention: residue variables are ordered by modulus,
``|z_1| << |z_2| << ... << |z_k|`` with every geometry symbol far
smaller than ``z_1``.  Each inverse denominator factor is expanded as a
geometric series in its leading variable (the largest-modulus variable
it contains), which is the only expansion compatible with that contour.
The residue is then

    Res = (-1)^k * [coefficient of (z_1 ... z_k)^{-1}],

so ``Res dz / (z_1 ... z_k) = (-1)^k``.

Elimination runs outermost variable first.  At the step for variable t
every remaining denominator factor either has leading variable t (it is
expanded now, truncated to the exponents that can still reach t^{-1})
or does not contain t at all.  Truncation is exact: dropped tails can
only produce total t-exponents below -1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .poly import LinearForm, MPoly, VariableContext


class TermBudgetExceeded(RuntimeError):
    """Raised when an intermediate polynomial outgrows the term budget."""


DEFAULT_TERM_BUDGET = 10_000_000


@dataclass(frozen=True)
class Expansion:
    """Truncated Laurent tail of 1/form^mult in one variable.

    poly holds exponents of ``var`` in [floor, -mult]; everything below
    floor was certified irrelevant and dropped.
    """

    poly: MPoly
    var: int
    floor: int


def expand_inverse_at_infinity(form: LinearForm, lower_cutoff: int, var: str | None = None) -> Expansion:
    """Expand 1/form^mult at infinity in the form's leading variable.

    Keeps exponents >= lower_cutoff.  With form = a*t + r (t leading,
    r the smaller-variable rest):

        1/(a t + r)^m = sum_j C(m+j-1, j) (-r)^j a^(-m-j) t^(-m-j)
    """
    ctx = form.ctx
    i = form.leading_index()
    if i is None:
        raise ValueError("no residue variable in %r" % form)
    if var is not None and ctx.index(var) != i:
        raise ValueError("expansion variable %r is not the leading variable of %r" % (var, form))
    a = form.z_coeffs[i]
    rest = form.as_poly() - MPoly.var(ctx, ctx.names[i]).scale(a)
    m = form.multiplicity
    t_key = [0] * ctx.nvars
    out = MPoly.zero(ctx)
    rest_pow = MPoly.const(ctx, 1)
    j = 0
    while -m - j >= lower_cutoff:
        coef = Fraction(comb(m + j - 1, j), 1) / a ** (m + j)
        if j % 2:
            coef = -coef
        t_key[i] = -m - j
        shift = MPoly(ctx, {tuple(t_key): coef})
        out = out + shift * rest_pow
        j += 1
        if -m - j >= lower_cutoff:
            rest_pow = rest_pow * rest
            if rest_pow.is_zero():
                break
    return Expansion(out, i, lower_cutoff)


@dataclass(frozen=True)
class ResidueProblem:
    """A fully assembled iterated-residue integrand.

    numerator: polynomial part (may involve geometry symbols).
    denominator: linear-form factors with multiplicities.
    laurent_prefactors: exact Laurent factors such as truncated Segre
        series and inverse monomials; nonpositive residue exponents.
    prefactor: global rational constant, applied at the very end.
    """

    ctx: VariableContext
    numerator: MPoly
    denominator: tuple = ()
    laurent_prefactors: tuple = ()
    prefactor: Fraction = Fraction(1)

    def __post_init__(self):
        for f in self.denominator:
            if f.ctx != self.ctx:
                raise ValueError("denominator factor in foreign context")
            if f.leading_index() is None:
                raise ValueError(
                    "constant denominator factor %r; fold it into the prefactor" % f
                )
        for p in self.laurent_prefactors:
            if p.ctx != self.ctx:
                raise ValueError("laurent prefactor in foreign context")


def _mul_windowed(acc: MPoly, factor: MPoly, i: int, lo: int, hi: int, budget: int) -> MPoly:
    """acc * factor, dropping terms whose exponent of variable i leaves [lo, hi]."""
    ctx = acc.ctx
    cap = ctx.dim_cap
    degrees = ctx.degrees
    terms: dict = {}
    for k1, c1 in acc.terms.items():
        for k2, c2 in factor.terms.items():
            e = k1[i] + k2[i]
            if e < lo or e > hi:
                continue
            key = tuple(a + b for a, b in zip(k1, k2))
            if cap is not None:
                gdeg = sum(x * d for x, d in zip(key, degrees) if x)
                if gdeg > cap:
                    continue
            c = c1 * c2
            acc2 = terms.get(key)
            if acc2 is None:
                terms[key] = c
            else:
                acc2 = acc2 + c
                if acc2:
                    terms[key] = acc2
                else:
                    del terms[key]
    if len(terms) > budget:
        raise TermBudgetExceeded(
            "intermediate size %d exceeds budget %d while eliminating %s"
            % (len(terms), budget, ctx.names[i])
        )
    return MPoly(ctx, terms)


def iterated_residue(problem: ResidueProblem, term_budget: int = DEFAULT_TERM_BUDGET) -> MPoly:
    """Evaluate the iterated residue; result involves geometry symbols only.

    Raises TermBudgetExceeded rather than degrading precision.
    """
    ctx = problem.ctx
    num = problem.numerator
    for p in problem.laurent_prefactors:
        num = num * p
        if len(num.terms) > term_budget:
            raise TermBudgetExceeded(
                "prefactor fold produced %d terms (budget %d)" % (len(num.terms), term_budget)
            )
    remaining = list(problem.denominator)
    for i in range(ctx.k - 1, -1, -1):
        led = [f for f in remaining if f.leading_index() == i]
        remaining = [f for f in remaining if f.leading_index() != i]
        if not led:
            num = num.coefficient_of(i, -1)
            continue
        d_max = num.max_exponent(i)
        total_mult = sum(f.multiplicity for f in led)
        expansions = []
        for f in led:
            cutoff = -1 - d_max + (total_mult - f.multiplicity)
            expansions.append(expand_inverse_at_infinity(f, cutoff).poly)
        # window pruning: after factor j, remaining factors contribute
        # exponents in [sum of cutoffs, sum of -mult]
        cutoffs = [-1 - d_max + (total_mult - f.multiplicity) for f in led]
        tops = [-f.multiplicity for f in led]
        for j, factor in enumerate(expansions):
            lo_rest = sum(cutoffs[j + 1 :])
            hi_rest = sum(tops[j + 1 :])
            num = _mul_windowed(num, factor, i, -1 - hi_rest, -1 - lo_rest, term_budget)
        num = num.coefficient_of(i, -1)
    for i in range(ctx.k):
        if num.max_exponent(i) or num.min_exponent(i):
            raise AssertionError("residue variable %s survived elimination" % ctx.names[i])
    sign = -1 if ctx.k % 2 else 1
    return num.scale(problem.prefactor * sign)


# -- independent localization oracle ------------------------------------


def _divide_linear(p: MPoly, i: int, j: int) -> MPoly:
    """Exact division of p by (x_i - x_j); raises if not divisible."""
    ctx = p.ctx
    quotient = MPoly.zero(ctx)
    xi = MPoly.var(ctx, ctx.names[i])
    xj = MPoly.var(ctx, ctx.names[j])
    divisor = xi - xj
    while True:
        e = p.max_exponent(i)
        if e <= 0:
            if not p.is_zero():
                raise ArithmeticError("inexact division by (%s - %s)" % (ctx.names[i], ctx.names[j]))
            return quotient
        lead = p.coefficient_of(i, e)
        step = lead * MPoly.var(ctx, ctx.names[i], e - 1)
        quotient = quotient + step
        p = p - step * divisor


def grassmann_context(n: int, d: int) -> VariableContext:
    zs = tuple("z%d" % (m + 1) for m in range(d))
    lams = tuple(("lam%d" % (i + 1), 1) for i in range(n))
    return VariableContext(residue_vars=zs, geometry=lams)


def grassmann_fixed_point_sum(n: int, d: int, alpha: MPoly) -> MPoly:
    """Torus fixed point sum for integrals over the Grassmannian Gr(d, n).

    alpha is a polynomial in z_1..z_d (context from grassmann_context).
    Returns the exact polynomial in lam_1..lam_n equal to

        sum over injective tuples s: alpha(lam_s) /
            prod_{m chosen, i not chosen} (lam_i - lam_m),

    computed over the common denominator prod_{i != j}(lam_i - lam_j)
    followed by exact linear divisions.  The tuple sum is not divided
    by d!: the residue counterpart carries the full ordered pair
    product over the z variables, so for symmetric alpha this equals
    d! times the plain one-term-per-subset sum.  Non-symmetric alpha
    is symmetrized by the tuple sum itself.
    """
    ctx = alpha.ctx
    lam_idx = [ctx.index("lam%d" % (i + 1)) for i in range(n)]
    z_idx = [ctx.index("z%d" % (m + 1)) for m in range(d)]
    all_pairs = [(i, j) for i in range(n) for j in range(n) if i != j]

    def lam_poly(i: int) -> MPoly:
        return MPoly.var(ctx, ctx.names[lam_idx[i]])

    total = MPoly.zero(ctx)
    for chosen in itertools.combinations(range(n), d):
        chosen_set = set(chosen)
        denom_pairs = {(i, m) for m in chosen for i in range(n) if i not in chosen_set}
        sym = MPoly.zero(ctx)
        for order in itertools.permutations(chosen):
            # substitute z_m -> lam_{order[m]}
            terms: dict = {}
            for key, coef in alpha.terms.items():
                nk = list(key)
                for m, zi in enumerate(z_idx):
                    e = nk[zi]
                    if e:
                        if e < 0:
                            raise ValueError("alpha must be polynomial in the z variables")
                        nk[zi] = 0
                        nk[lam_idx[order[m]]] += e
                tk = tuple(nk)
                terms[tk] = terms.get(tk, Fraction(0)) + coef
            sym = sym + MPoly(ctx, {k: c for k, c in terms.items() if c})
        complement = MPoly.const(ctx, 1)
        for (i, j) in all_pairs:
            if (i, j) not in denom_pairs:
                complement = complement * (lam_poly(i) - lam_poly(j))
        total = total + sym * complement
    for (i, j) in all_pairs:
        total = _divide_linear(total, lam_idx[i], lam_idx[j])
    return total


def grassmann_residue_problem(n: int, d: int, alpha: MPoly) -> ResidueProblem:
    """Residue-side counterpart of the fixed point sum, same context.

    Numerator: alpha * prod over ordered pairs m != l of (z_m - z_l).
    Denominator: (lam_i - z_m) for every i, m, each to the first power.
    """
    ctx = alpha.ctx
    num = alpha
    for m in range(d):
        for l in range(d):
            if m != l:
                num = num * (MPoly.var(ctx, "z%d" % (m + 1)) - MPoly.var(ctx, "z%d" % (l + 1)))
    forms = []
    for m in range(d):
        coeffs = [Fraction(0)] * ctx.k
        coeffs[ctx.index("z%d" % (m + 1))] = Fraction(-1)
        for i in range(n):
            forms.append(
                LinearForm(ctx, tuple(coeffs), MPoly.var(ctx, "lam%d" % (i + 1)), 1)
            )
    return ResidueProblem(ctx=ctx, numerator=num, denominator=tuple(forms))
