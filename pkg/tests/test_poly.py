"""Exact sparse Laurent polynomial arithmetic and the canonical text form."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tautres.poly import (
    LinearForm,
    MPoly,
    VariableContext,
    format_poly,
    linear_form,
    parse_linear_form,
    parse_poly,
)


CTX = VariableContext(
    residue_vars=("z1", "z2"),
    geometry=(("L", 1), ("c1", 1), ("c2", 2)),
)


def V(name, exp=1):
    return MPoly.var(CTX, name, exp)


# -- context validation -----------------------------------------------------


def test_context_rejects_duplicate_names():
    with pytest.raises(ValueError, match="duplicate"):
        VariableContext(residue_vars=("z1",), geometry=(("z1", 1),))


def test_context_rejects_bad_names():
    with pytest.raises(ValueError, match="bad variable name"):
        VariableContext(residue_vars=("2z",))
    with pytest.raises(ValueError, match="bad variable name"):
        VariableContext(geometry=(("c 1", 1),))


def test_context_rejects_nonmonotone_weights():
    # contour position i must have weight <= position i+1
    with pytest.raises(ValueError, match="weakly monotone"):
        VariableContext(residue_vars=("a", "b"), weights=(2, 1))
    VariableContext(residue_vars=("a", "b"), weights=(1, 1))


def test_context_rejects_weight_length_mismatch():
    with pytest.raises(ValueError, match="length mismatch"):
        VariableContext(residue_vars=("a", "b"), weights=(1,))


def test_context_lookup():
    assert CTX.k == 2
    assert CTX.nvars == 5
    assert CTX.index("c2") == 4
    with pytest.raises(KeyError):
        CTX.index("nope")


# -- arithmetic -------------------------------------------------------------


def test_basic_arithmetic():
    p = (V("z1") + V("L")) * (V("z1") - V("L"))
    assert p == V("z1", 2) - V("L", 2)
    assert p - p == MPoly.zero(CTX)
    assert (p * 0).is_zero()


def test_pow_and_scale():
    p = (V("z1") + 1) ** 3
    assert p == V("z1", 3) + 3 * V("z1", 2) + 3 * V("z1") + 1
    assert p.scale(Fraction(1, 3)) * 3 == p
    with pytest.raises(ValueError):
        p ** -1


def test_constant_equality():
    assert MPoly.const(CTX, Fraction(5, 2)) == Fraction(5, 2)
    assert MPoly.zero(CTX) == 0
    assert not MPoly.const(CTX, 1) == 2


def test_laurent_exponents():
    p = V("z1", -2) * V("z2", 3)
    assert p.min_exponent(0) == -2
    assert p.max_exponent(1) == 3


def test_coefficient_of_zeroes_the_slot():
    p = V("z1", 2) * V("L") + V("z1", 2) * V("c1") + V("z1") * V("c2")
    c = p.coefficient_of(0, 2)
    assert c == V("L") + V("c1")


def test_subs_num_rejects_zero_to_negative_power():
    p = V("z1", -1)
    with pytest.raises(ZeroDivisionError):
        p.subs_num({"z1": 0})
    assert p.subs_num({"z1": 2}) == Fraction(1, 2)


def test_eval_at():
    p = 3 * V("L", 2) + 2 * V("L") * V("c1") + V("c2")
    val = p.eval_at({"z1": 0, "z2": 0, "L": 2, "c1": -1, "c2": 7})
    assert val == Fraction(12 - 4 + 7)


def test_dim_cap_drops_deep_geometry():
    capped = VariableContext(
        residue_vars=("z",),
        geometry=(("c1", 1), ("c2", 2)),
        dim_cap=2,
    )
    c1 = MPoly.var(capped, "c1")
    c2 = MPoly.var(capped, "c2")
    # c1*c2 has geometry degree 3 > cap, so the product truncates it
    assert c1 * c2 == MPoly.zero(capped)
    assert c1 * c1 == MPoly.var(capped, "c1", 2)


# -- canonical text form ----------------------------------------------------


def test_format_reference_example():
    p = 3 * V("L", 2) + 2 * V("L") * V("c1") + V("c2")
    assert format_poly(p) == "3*L^2 + 2*L*c1 + c2"


def test_format_signs_and_rationals():
    p = -V("z1", 2) + V("L").scale(Fraction(1, 2)) - 4
    assert format_poly(p) == "-z1^2 + 1/2*L - 4"
    assert format_poly(MPoly.zero(CTX)) == "0"


def test_format_negative_exponents():
    p = V("z1", -2) * V("z2")
    assert format_poly(p) == "z1^-2*z2"


def test_parse_roundtrip():
    texts = [
        "3*L^2 + 2*L*c1 + c2",
        "z1^2 - 2*z1*z2 + z2^2",
        "5/3 - z1^-1",
        "1",
        "0",
    ]
    for text in texts:
        assert format_poly(parse_poly(CTX, text)) == text


def test_parse_rejects_unknown_symbol_and_parens():
    with pytest.raises(KeyError):
        parse_poly(CTX, "q + 1")
    with pytest.raises(ValueError):
        parse_poly(CTX, "(z1 + z2)")


@st.composite
def small_polys(draw):
    nterms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(nterms):
        key = tuple(draw(st.integers(-3, 3)) for _ in range(2)) + tuple(
            draw(st.integers(0, 2)) for _ in range(3)
        )
        coef = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 5)))
        terms[key] = terms.get(key, 0) + coef
    return MPoly.from_terms(CTX, terms)


@given(small_polys(), small_polys(), small_polys())
@settings(max_examples=120, deadline=None)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(small_polys())
@settings(max_examples=60, deadline=None)
def test_format_parse_is_identity(p):
    assert parse_poly(CTX, format_poly(p)) == p


# -- linear forms -----------------------------------------------------------


def test_linear_form_leading_index():
    f = linear_form(CTX, 2 * V("z1") - V("z2"))
    # rightmost residue variable with a nonzero coefficient leads
    assert f.leading_index() == CTX.index("z2")
    g = linear_form(CTX, V("z1") + V("L"))
    assert g.leading_index() == CTX.index("z1")
    const = linear_form(CTX, V("L") - V("c1"))
    assert const.leading_index() is None


def test_linear_form_round_trips_through_as_poly():
    p = V("z1") + 2 * V("z2") - 3 * V("L")
    f = linear_form(CTX, p, multiplicity=2)
    assert f.as_poly() == p
    assert f.multiplicity == 2


def test_linear_form_key_ignores_multiplicity():
    f = linear_form(CTX, V("z1") - V("z2"))
    g = f.with_multiplicity(3)
    assert f.key() == g.key()
    assert f != g
    assert f == linear_form(CTX, V("z1") - V("z2"))


def test_parse_linear_form():
    ctx = VariableContext(residue_vars=("z10", "z01", "z11"))
    f = parse_linear_form(ctx, "(z10 + z01 - z11)^3")
    assert f.multiplicity == 3
    assert f.as_poly() == (
        MPoly.var(ctx, "z10") + MPoly.var(ctx, "z01") - MPoly.var(ctx, "z11")
    )
    assert repr(f) == "(z10 + z01 - z11)^3"


def test_linear_form_rejects_nonlinear():
    with pytest.raises(ValueError):
        linear_form(CTX, V("z1", 2))
    with pytest.raises(ValueError):
        linear_form(CTX, V("z1") * V("L"))
    with pytest.raises(ValueError):
        LinearForm(ctx=CTX, z_coeffs=(Fraction(1),), const_part=MPoly.zero(CTX))
