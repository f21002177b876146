"""Built-in verification suite.

Each criterion is a function returning a CriterionResult; verify_suite
runs all of them.  Every check is exact (Fraction arithmetic); the two
timed criteria also enforce their runtime budgets.  Random instances
use fixed seeds so the suite is deterministic.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .assemble import (
    AlgebraSpec,
    GeometricSubsetSpec,
    assemble_geometric,
    assemble_ghilb,
    severi_bundle,
    severi_coefficient,
)
from .chern import generic_surface, p2_surface, pair_integral
from .diagrams import (
    DiagramND,
    bell_transform,
    curvilinear_sum,
    from_partition,
    set_partitions,
    sieve_coefficient,
)
from .multidegree import MonomialIdeal, codimension, multidegree
from .poly import MPoly, VariableContext, format_poly, parse_poly
from .residue import (
    ResidueProblem,
    grassmann_context,
    grassmann_fixed_point_sum,
    grassmann_residue_problem,
    iterated_residue,
)

A1_COEFFS = {"L^2": Fraction(3), "L*c1": Fraction(2), "c1^2": Fraction(0), "c2": Fraction(1)}
A2_COEFFS = {
    "L^2": Fraction(-42),
    "L*c1": Fraction(-39),
    "c1^2": Fraction(-6),
    "c2": Fraction(-7),
}


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


def _result(name, t0, passed, detail) -> CriterionResult:
    return CriterionResult(name, passed, detail, time.monotonic() - t0)


def check_one_node_coefficient() -> CriterionResult:
    t0 = time.monotonic()
    sel = severi_coefficient(1)
    dt = time.monotonic() - t0
    ok = sel.coefficients == A1_COEFFS and sel.remainder.is_zero() and dt < 1.0
    return _result(
        "one-node coefficient a1",
        t0,
        ok,
        "got %s in %.3fs (budget 1s)" % (sel.as_poly_text(), dt),
    )


def check_two_node_coefficient() -> CriterionResult:
    t0 = time.monotonic()
    sel = severi_coefficient(2)
    dt = time.monotonic() - t0
    ok = sel.coefficients == A2_COEFFS and sel.remainder.is_zero() and dt < 60.0
    return _result(
        "two-node coefficient a2",
        t0,
        ok,
        "got %s in %.3fs (budget 60s)" % (sel.as_poly_text(), dt),
    )


def check_exponential_transform() -> CriterionResult:
    t0 = time.monotonic()
    ctx = VariableContext(geometry=(("a1", 1), ("a2", 1), ("a3", 1)))
    a = [MPoly.var(ctx, n) for n in ("a1", "a2", "a3")]
    p = bell_transform(a)
    want2 = parse_poly(ctx, "a1^2 + a2")
    want3 = parse_poly(ctx, "a1^3 + 3*a2*a1 + a3")
    ok = p[0] == a[0] and p[1] == want2 and p[2] == want3
    return _result(
        "exponential transform P2, P3",
        t0,
        ok,
        "P2 = %s; P3 = %s" % (format_poly(p[1]), format_poly(p[2])),
    )


def check_plane_one_node_counts() -> CriterionResult:
    t0 = time.monotonic()
    coeffs = severi_coefficient(1).coefficients
    got = []
    ok = True
    for d in (3, 4, 5, 6):
        n1 = pair_integral(coeffs, p2_surface(d))
        got.append("d=%d: %s" % (d, n1))
        ok = ok and n1 == 3 * (d - 1) ** 2
    return _result(
        "plane one-node counts 3(d-1)^2",
        t0,
        ok,
        "; ".join(got),
    )


def _random_monomial(ctx, rng, d, degree) -> MPoly:
    exps = [0] * d
    for _ in range(degree):
        exps[rng.randrange(d)] += 1
    key = [0] * ctx.nvars
    for m in range(d):
        key[m] = exps[m]
    return MPoly(ctx, {tuple(key): Fraction(1)})


def check_grassmannian_oracle() -> CriterionResult:
    t0 = time.monotonic()
    rng = random.Random(58201)
    failures = []
    cases = 0
    for n, d in ((2, 1), (3, 1), (3, 2), (4, 2)):
        ctx = grassmann_context(n, d)
        dim = d * (n - d)
        for _ in range(20):
            alpha = _random_monomial(ctx, rng, d, dim)
            res = iterated_residue(grassmann_residue_problem(n, d, alpha))
            fix = grassmann_fixed_point_sum(n, d, alpha)
            cases += 1
            if res != fix:
                failures.append(
                    "(n=%d,d=%d) alpha=%s: residue %s vs localization %s"
                    % (n, d, format_poly(alpha), format_poly(res), format_poly(fix))
                )
    dt = time.monotonic() - t0
    ok = not failures and dt < 10.0
    detail = "%d cases agree in %.2fs (budget 10s)" % (cases, dt)
    if failures:
        detail = failures[0]
    return _result("localization oracle", t0, ok, detail)


def check_residue_orientation() -> CriterionResult:
    t0 = time.monotonic()
    got = []
    ok = True
    for k in range(1, 5):
        ctx = VariableContext(residue_vars=tuple("z%d" % i for i in range(1, k + 1)))
        mono = MPoly(ctx, {tuple([-1] * k): Fraction(1)})
        problem = ResidueProblem(
            ctx=ctx,
            numerator=MPoly.const(ctx, 1),
            denominator=(),
            laurent_prefactors=(mono,),
            prefactor=Fraction(1),
        )
        val = iterated_residue(problem)
        got.append("k=%d: %s" % (k, format_poly(val)))
        ok = ok and val == MPoly.const(ctx, (-1) ** k)
    return _result("orientation of the basic residue", t0, ok, "; ".join(got))


def _weight_ctx(names):
    return VariableContext(geometry=tuple((n, 1) for n in names))


def check_multidegree() -> CriterionResult:
    t0 = time.monotonic()
    problems = []

    ctx = _weight_ctx(("a", "b"))
    eta = (MPoly.var(ctx, "a"), MPoly.var(ctx, "b"))
    square = MonomialIdeal(2, ((2, 0), (1, 1), (0, 2)), eta)
    if codimension(square) != 2:
        problems.append("codim(m^2) != 2")
    if multidegree(square) != parse_poly(ctx, "3*a*b"):
        problems.append("mdeg(m^2) = %s, want 3*a*b" % format_poly(multidegree(square)))

    # additivity across the two components of (x) cap (y) = (xy)
    if multidegree(MonomialIdeal(2, ((1, 1),), eta)) != parse_poly(ctx, "a + b"):
        problems.append("mdeg(xy) != a + b")

    rng = random.Random(77003)
    for trial in range(25):
        nv = rng.randint(2, 4)
        names = tuple("w%d" % i for i in range(nv))
        wctx = _weight_ctx(names)
        weights = tuple(MPoly.var(wctx, n) for n in names)
        order = list(range(nv))
        rng.shuffle(order)
        c = rng.randint(1, nv)
        cuts = sorted(rng.sample(range(1, nv), c - 1)) if c > 1 else []
        groups = [order[i:j] for i, j in zip([0] + cuts, cuts + [nv])]
        gens = []
        expected = MPoly.const(wctx, 1)
        for grp in groups:
            exps = [0] * nv
            degree = MPoly.zero(wctx)
            for v in grp:
                e = rng.randint(1, 3)
                exps[v] = e
                degree = degree + weights[v].scale(e)
            gens.append(tuple(exps))
            expected = expected * degree
        ideal = MonomialIdeal(nv, tuple(gens), weights)
        got = multidegree(ideal)
        if got != expected:
            problems.append(
                "trial %d: mdeg %s != product %s"
                % (trial, format_poly(got), format_poly(expected))
            )
            break
        if any(coef <= 0 for coef in got.terms.values()):
            problems.append("trial %d: nonpositive coefficient" % trial)
            break
    return _result(
        "multidegree axioms",
        t0,
        not problems,
        problems[0] if problems else "mdeg(m^2) = 3*a*b; 25 product instances agree",
    )


def _random_diagram(rng, dim) -> DiagramND:
    boxes = {(0,) * dim}
    for _ in range(rng.randint(0, 5)):
        candidates = set()
        for b in boxes:
            for axis in range(dim):
                nb = tuple(e + (1 if i == axis else 0) for i, e in enumerate(b))
                if nb in boxes:
                    continue
                below = all(
                    tuple(e - (1 if i == ax else 0) for i, e in enumerate(nb)) in boxes
                    for ax in range(dim)
                    if nb[ax] > 0
                )
                if below:
                    candidates.add(nb)
        if not candidates:
            break
        boxes.add(rng.choice(sorted(candidates)))
    return DiagramND(dim, frozenset(boxes))


def check_partition_calculus() -> CriterionResult:
    t0 = time.monotonic()
    problems = []
    for s in range(1, 7):
        if curvilinear_sum([from_partition((1,))] * s) != from_partition((s,)):
            problems.append("s*(1) != (%d)" % s)
    if curvilinear_sum([from_partition((2, 1))] * 2) != from_partition((4, 2)):
        problems.append("2*(2,1) != (4,2)")
    rng = random.Random(91210)
    for trial in range(50):
        dim = rng.choice((2, 2, 3))
        a, b, c = (_random_diagram(rng, dim) for _ in range(3))
        abc = curvilinear_sum([a, b, c])
        if abc != curvilinear_sum([curvilinear_sum([a, b]), c]):
            problems.append("associativity fails on trial %d" % trial)
            break
        if abc != curvilinear_sum([c, a, b]):
            problems.append("commutativity fails on trial %d" % trial)
            break
    return _result(
        "partition calculus",
        t0,
        not problems,
        problems[0] if problems else "scaling identities and 50 random triples agree",
    )


def check_sieve_identity() -> CriterionResult:
    t0 = time.monotonic()
    got = []
    ok = True
    for s in range(1, 7):
        total = sum(sieve_coefficient(beta) for beta in set_partitions(s))
        got.append("s=%d: %d" % (s, total))
        ok = ok and total == (1 if s == 1 else 0)
    return _result("sieve coefficient identity", t0, ok, "; ".join(got))


def _is_geometry_free(p: MPoly) -> bool:
    k = p.ctx.k
    return all(not any(key[k:]) for key in p.terms)


def check_structural_specialization() -> CriterionResult:
    t0 = time.monotonic()
    surface = generic_surface()
    bundle = severi_bundle()
    problems = []
    for k in range(1, 5):
        spec = GeometricSubsetSpec(algebras=(AlgebraSpec.trivial(),) * k)
        geo = assemble_geometric(spec, bundle, surface, phi=k)
        ghi = assemble_ghilb(k, bundle, surface, phi=k)
        if [a for a, _ in geo] != [a for a, _ in ghi]:
            problems.append("k=%d: partition order differs" % k)
            continue
        for (alpha, pg), (_, ph) in zip(geo, ghi):
            tag = "k=%d alpha=%s" % (k, alpha)
            if pg.ctx.residue_vars != ph.ctx.residue_vars:
                problems.append("%s: variable sets differ" % tag)
                continue
            if Counter(f.key() for f in pg.denominator) != Counter(
                f.key() for f in ph.denominator
            ):
                problems.append("%s: denominator multisets differ" % tag)
            segre_g = sum(not _is_geometry_free(p) for p in pg.laurent_prefactors)
            segre_h = sum(not _is_geometry_free(p) for p in ph.laurent_prefactors)
            if segre_g != segre_h:
                problems.append("%s: segre counts differ" % tag)
            mono_g = MPoly.const(pg.ctx, 1)
            for p in pg.laurent_prefactors:
                if _is_geometry_free(p):
                    mono_g = mono_g * p
            mono_h = MPoly.const(ph.ctx, 1)
            for p in ph.laurent_prefactors:
                if _is_geometry_free(p):
                    mono_h = mono_h * p
            if mono_g != mono_h:
                problems.append("%s: monomial inverse products differ" % tag)
    return _result(
        "geometric vs point-component structure",
        t0,
        not problems,
        problems[0] if problems else "k <= 4 terms match factor for factor",
    )


ALL_CRITERIA = (
    check_one_node_coefficient,
    check_two_node_coefficient,
    check_exponential_transform,
    check_plane_one_node_counts,
    check_grassmannian_oracle,
    check_residue_orientation,
    check_multidegree,
    check_partition_calculus,
    check_sieve_identity,
    check_structural_specialization,
)


def verify_suite() -> list:
    return [check() for check in ALL_CRITERIA]
