"""Problem builders: punctual, geometric, point-component, and nodal-degree."""

from fractions import Fraction

import pytest

from tautres.assemble import (
    AlgebraSpec,
    GeometricSubsetSpec,
    SEVERI_CONTOUR_CALIBRATION,
    SEVERI_PRINTED_PREFACTOR,
    assemble_geometric,
    assemble_ghilb,
    assemble_punctual,
    assemble_severi,
    evaluate,
    normalize_phi,
    severi_bundle,
    severi_coefficient,
)
from tautres.chern import elementary_symmetric, generic_surface, twisted_roots
from tautres.diagrams import from_partition
from tautres.poly import MPoly, parse_poly


SURFACE = generic_surface()


def form_keys(problem):
    keys = [f.key() for f in problem.denominator]
    return sorted(keys, key=repr)


def difference_product(ctx, names):
    import itertools

    num = MPoly.const(ctx, 1)
    for a, b in itertools.combinations(names, 2):
        num = num * (MPoly.var(ctx, a) - MPoly.var(ctx, b))
    return num


# -- algebra specs ------------------------------------------------------------


def test_algebra_from_diagram():
    a = AlgebraSpec.from_diagram(from_partition((2, 1)))
    assert a.k == 3
    assert a.filtration == (2,)
    assert a.diagram == from_partition((2, 1))
    assert not a.is_curvilinear()


def test_trivial_and_curvilinear_algebras():
    t = AlgebraSpec.trivial()
    assert (t.k, t.filtration) == (1, ())
    assert t.is_curvilinear()
    m = AlgebraSpec.morin(3)
    assert (m.k, m.filtration) == (3, (1, 1))
    assert m.is_curvilinear()


def test_algebra_validation():
    with pytest.raises(ValueError):
        AlgebraSpec(k=0, filtration=())
    with pytest.raises(ValueError, match="sum to k-1"):
        AlgebraSpec(k=3, filtration=(1,))
    with pytest.raises(ValueError, match="positive"):
        AlgebraSpec(k=2, filtration=(0, 1))


# -- Chern polynomial specs -----------------------------------------------------


def test_normalize_phi_shapes():
    assert normalize_phi(None) == ((Fraction(1), {}),)
    assert normalize_phi(2) == ((Fraction(1), {2: 1}),)
    assert normalize_phi({2: 3}) == ((Fraction(1), {2: 3}),)
    got = set(
        (coef, tuple(sorted(powers.items())))
        for coef, powers in normalize_phi("c2^2 - 3*c1")
    )
    assert got == {(Fraction(1), ((2, 2),)), (Fraction(-3), ((1, 1),))}
    explicit = normalize_phi([(2, {1: 1}), ("1/2", {})])
    assert explicit == ((Fraction(2), {1: 1}), (Fraction(1, 2), {}))


# -- punctual builder -------------------------------------------------------------


def test_punctual_length_two_structure():
    prob = assemble_punctual(AlgebraSpec.morin(2), severi_bundle(), SURFACE, phi=2)
    ctx = prob.ctx
    assert ctx.residue_vars == ("z1",)
    assert ctx.weights == (1,)
    assert prob.denominator == ()
    # inverse square of the coordinate, then the Segre tail
    assert len(prob.laurent_prefactors) == 2
    assert prob.laurent_prefactors[0] == MPoly.var(ctx, "z1", -2)
    L = MPoly.var(ctx, "L")
    z1 = MPoly.var(ctx, "z1")
    assert prob.numerator == elementary_symmetric(2, [L, L + z1])


def test_punctual_pair_sum_denominators():
    prob = assemble_punctual(AlgebraSpec.morin(4), severi_bundle(), SURFACE, phi=None)
    ctx = prob.ctx
    assert all(f.multiplicity == 1 for f in prob.denominator)
    got = {frozenset(f.as_poly().terms.items()) for f in prob.denominator}
    want = {
        frozenset(parse_poly(ctx, t).terms.items())
        for t in ("2*z1 - z2", "2*z1 - z3", "z1 + z2 - z3")
    }
    assert got == want


def test_punctual_no_pair_sums_for_two_equal_weights():
    prob = assemble_punctual(
        AlgebraSpec(k=3, filtration=(2,)), severi_bundle(), SURFACE, phi=2
    )
    assert prob.denominator == ()
    assert prob.ctx.weights == (1, 1)


def test_punctual_rejects_bad_var_names_and_epd():
    with pytest.raises(ValueError, match="variable names"):
        assemble_punctual(
            AlgebraSpec.morin(3), severi_bundle(), SURFACE, phi=None, var_names=("a",)
        )
    bad = AlgebraSpec(k=3, filtration=(1, 1), epd="z1 + 1")
    with pytest.raises(ValueError, match="homogeneous"):
        assemble_punctual(bad, severi_bundle(), SURFACE, phi=None)


def test_punctual_doubled_point_reproduces_one_node_coefficient():
    # independent route to the same integral as the nodal-degree builder
    prob = assemble_punctual(
        AlgebraSpec(k=3, filtration=(2,)),
        severi_bundle(),
        SURFACE,
        phi=2,
        prefactor=Fraction(1, 2),
    )
    sel = evaluate(prob, SURFACE)
    assert sel.remainder.is_zero()
    assert sel.coefficients == severi_coefficient(1).coefficients


# -- geometric builder -------------------------------------------------------------


def test_geometric_single_support_matches_punctual():
    spec = GeometricSubsetSpec(algebras=(AlgebraSpec.morin(2),))
    [(alpha, prob)] = assemble_geometric(spec, severi_bundle(), SURFACE, phi=2)
    assert alpha == ((1,),)
    direct = assemble_punctual(AlgebraSpec.morin(2), severi_bundle(), SURFACE, phi=2)
    # contexts agree up to the stored contour weights (the geometric
    # builder keeps weights per block, not on the context)
    assert prob.ctx.residue_vars == direct.ctx.residue_vars
    assert prob.ctx.geometry == direct.ctx.geometry
    assert prob.ctx.dim_cap == direct.ctx.dim_cap
    assert prob.numerator.terms == direct.numerator.terms
    assert prob.denominator == ()
    assert [p.terms for p in prob.laurent_prefactors] == [
        p.terms for p in direct.laurent_prefactors
    ]
    assert prob.prefactor == direct.prefactor == 1


def test_geometric_two_points_collision_block():
    spec = GeometricSubsetSpec(algebras=(AlgebraSpec.morin(2), AlgebraSpec.morin(2)))
    out = assemble_geometric(spec, severi_bundle(), SURFACE, phi=None)
    assert [alpha for alpha, _ in out] == [((1, 2),), ((1,), (2,))]
    merged = dict(out)[((1, 2),)]
    # the summed support is a length-4 axis on three variables
    assert merged.ctx.residue_vars == ("z1", "z2", "z3")
    # collision dual for two length-2 axes is z1, entering inverted
    assert MPoly.var(merged.ctx, "z1", -1) in merged.laurent_prefactors
    split = dict(out)[((1,), (2,))]
    assert split.ctx.residue_vars == ("b1z1", "b2z1")
    names = [n for n, _ in split.ctx.geometry]
    assert {"L_1", "c1_1", "c2_1", "L_2", "c1_2", "c2_2"} <= set(names)
    assert split.ctx.dim_cap == 4


def test_geometric_unknown_dual_raises_and_override_works():
    spec = GeometricSubsetSpec(algebras=(AlgebraSpec.morin(2), AlgebraSpec.morin(4)))
    with pytest.raises(ValueError, match="no dual available"):
        assemble_geometric(spec, severi_bundle(), SURFACE, phi=None)
    patched = GeometricSubsetSpec(
        algebras=spec.algebras, duals={frozenset({1, 2}): "z1*z2"}
    )
    out = assemble_geometric(patched, severi_bundle(), SURFACE, phi=None)
    assert len(out) == 2


def test_geometric_rejects_non_monomial_dual():
    spec = GeometricSubsetSpec(
        algebras=(AlgebraSpec.morin(2), AlgebraSpec.morin(2)),
        duals={frozenset({1, 2}): "z1 + z2"},
    )
    with pytest.raises(ValueError, match="non-monomial dual"):
        assemble_geometric(spec, severi_bundle(), SURFACE, phi=None)


def test_geometric_needs_diagrams_to_merge():
    bare = AlgebraSpec(k=2, filtration=(1,))
    spec = GeometricSubsetSpec(algebras=(bare, bare))
    with pytest.raises(ValueError, match="need diagrams"):
        assemble_geometric(spec, severi_bundle(), SURFACE, phi=None)


# -- point-component builder ---------------------------------------------------------


def test_ghilb_term_count_is_bell_number():
    for k, bell in [(1, 1), (2, 2), (3, 5)]:
        out = assemble_ghilb(k, severi_bundle(), SURFACE, phi=None)
        assert len(out) == bell


def test_ghilb_single_point():
    [(alpha, prob)] = assemble_ghilb(1, severi_bundle(), SURFACE, phi=2)
    assert alpha == ((1,),)
    assert prob.ctx.residue_vars == ()
    assert prob.prefactor == 1
    # phi = c_2 of a rank-1 bundle with no offsets vanishes
    assert prob.numerator.is_zero()


def test_ghilb_two_points():
    out = dict(assemble_ghilb(2, severi_bundle(), SURFACE, phi=None))
    merged = out[((1, 2),)]
    assert merged.ctx.residue_vars == ("z1",)
    assert merged.prefactor == -1
    assert MPoly.var(merged.ctx, "z1", -3) in merged.laurent_prefactors
    split = out[((1,), (2,))]
    assert split.prefactor == 1
    assert split.ctx.residue_vars == ()
    names = [n for n, _ in split.ctx.geometry]
    assert "L_1" in names and "L_2" in names


def test_ghilb_triple_point_block():
    out = dict(assemble_ghilb(3, severi_bundle(), SURFACE, phi=None, q_polys={2: "z1*z2"}))
    tri = out[((1, 2, 3),)]
    assert tri.ctx.residue_vars == ("z1", "z2")
    assert tri.prefactor == 1  # (-1)^2
    got = {frozenset(f.as_poly().terms.items()) for f in tri.denominator}
    want = {frozenset(parse_poly(tri.ctx, "2*z1 - z2").terms.items())}
    assert got == want
    # external Q_2 multiplies the numerator
    z1z2 = parse_poly(tri.ctx, "z1*z2")
    plain = dict(assemble_ghilb(3, severi_bundle(), SURFACE, phi=None))[((1, 2, 3),)]
    assert tri.numerator == plain.numerator * z1z2


def test_ghilb_rejects_bad_k():
    with pytest.raises(ValueError):
        assemble_ghilb(0, severi_bundle(), SURFACE, phi=None)


# -- nodal-degree builder ---------------------------------------------------------


def test_severi_one_node_structure():
    prob = assemble_severi(1)
    ctx = prob.ctx
    assert ctx.residue_vars == ("z10", "z01")
    assert ctx.weights == (1, 1)
    assert prob.denominator == ()
    assert prob.prefactor == SEVERI_PRINTED_PREFACTOR[1] * SEVERI_CONTOUR_CALIBRATION[1]
    assert prob.prefactor == Fraction(-1, 2)
    diff = MPoly.var(ctx, "z10") - MPoly.var(ctx, "z01")
    roots = twisted_roots(ctx, severi_bundle(), [MPoly.var(ctx, "z10"), MPoly.var(ctx, "z01")])
    assert prob.numerator == diff * diff * elementary_symmetric(2, roots)
    assert len(prob.laurent_prefactors) == 3
    assert prob.laurent_prefactors[0] == MPoly.from_terms(
        ctx, {(-2, -2, 0, 0, 0): 1}
    )


def test_severi_two_node_structure():
    prob = assemble_severi(2)
    ctx = prob.ctx
    assert ctx.residue_vars == ("z10", "z01", "z11", "z20", "z30")
    assert ctx.weights == (1, 1, 2, 2, 3)
    assert prob.prefactor == -1
    texts = (
        "2*z10 - z20",
        "z10 + z20 - z30",
        "2*z10 - z30",
        "z10 + z01 - z30",
        "z10 + z01 - z11",
        "2*z10 - z11",
    )
    got = [frozenset(f.as_poly().terms.items()) for f in prob.denominator]
    want = [frozenset(parse_poly(ctx, t).terms.items()) for t in texts]
    assert sorted(got, key=repr) == sorted(want, key=repr)
    assert len(prob.laurent_prefactors) == 7
    assert prob.laurent_prefactors[0] == MPoly.var(ctx, "z10", -1)
    # independent numerator rebuild in the refined variable order
    refined = ("z10", "z20", "z30", "z01", "z11")
    num = difference_product(ctx, refined)
    roots = twisted_roots(ctx, severi_bundle(), [MPoly.var(ctx, n) for n in refined])
    num = num * elementary_symmetric(4, roots)
    assert prob.numerator == num


def test_severi_argument_validation():
    with pytest.raises(ValueError):
        assemble_severi(0)
    with pytest.raises(ValueError, match="built in"):
        assemble_severi(1, epd="z1")
    with pytest.raises(ValueError, match="built in"):
        assemble_severi(2, prefactor=Fraction(1))


def test_severi_template_beyond_two_warns():
    with pytest.warns(UserWarning, match="uncalibrated"):
        prob = assemble_severi(3, epd="z10^2", prefactor=Fraction(5))
    ctx = prob.ctx
    assert ctx.residue_vars == (
        "z10", "z01", "z20", "z11", "z30", "z21", "z40", "z50",
    )
    assert ctx.weights == (1, 1, 2, 2, 3, 3, 4, 5)
    assert prob.prefactor == 5
    assert all(a <= b for a, b in zip(ctx.weights, ctx.weights[1:]))


# -- published coefficient maps ----------------------------------------------------


def test_one_node_coefficient_map():
    sel = severi_coefficient(1)
    assert sel.remainder.is_zero()
    assert sel.coefficients == {
        "L^2": Fraction(3),
        "L*c1": Fraction(2),
        "c1^2": Fraction(0),
        "c2": Fraction(1),
    }


def test_two_node_coefficient_map():
    sel = severi_coefficient(2)
    assert sel.remainder.is_zero()
    assert sel.coefficients == {
        "L^2": Fraction(-42),
        "L*c1": Fraction(-39),
        "c1^2": Fraction(-6),
        "c2": Fraction(-7),
    }
