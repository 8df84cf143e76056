"""Signature engine: c-signature matrices, wall-crossing deformation,
tempered rewriting and the unitarity test."""

from fractions import Fraction

import pytest

from sigzero.blocks import (
    Block,
    BlockElement,
    BlockProvider,
    builtin_block,
    sl2c_param,
    sl2r_ds_param,
    sl2r_ps_param,
)
from sigzero.errors import (
    MissingRewriteTable,
    UnsupportedGroup,
    UnsupportedUnequalRank,
)
from sigzero.sigring import WElem, WPoly, W_ONE, W_S
from sigzero.sigengine import (
    SignatureChar,
    deform_step,
    deform_to_zero,
    hs_rewrite,
    irreducible_in_standards,
    ktype_signature,
    signature_P,
    signature_Q,
    sl2r_lowest_ktype,
    unitary_test,
)

F = Fraction
S_MINUS_1 = WElem(-1, 1)
ONE_MINUS_S = WElem(1, -1)


def as_dict(sc):
    return {
        (lab if isinstance(lab, int) else lab.text): w for lab, w in sc.items()
    }


@pytest.fixture()
def provider():
    return BlockProvider()


# ---------------------------------------------------------------------------
# signature matrices

def test_signature_q_on_integral_block():
    (b, _) = builtin_block("sl2r", (1,))
    Qc = signature_Q(b)
    assert Qc[(0, 0)] == WPoly.from_int_coeffs([1])
    assert Qc[(0, 2)] == WPoly.from_int_coeffs([1])
    assert Qc[(1, 2)] == WPoly.from_int_coeffs([1])
    assert (2, 0) not in Qc


def _two_chain(q_poly, lo_orient=0, hi_orient=2, hi_length=3):
    # synthetic chain with prescribed Q and orientation gap
    e0 = BlockElement(
        0, 0, 0, lo_orient, sl2r_ds_param(1, 1), frozenset(), "A"
    )
    e1 = BlockElement(
        1, 0, hi_length, hi_orient, sl2r_ds_param(-1, 1), frozenset(), "B"
    )
    return Block("sl2r", (9,), (e0, e1), {(0, 1): tuple(q_poly)})


def test_signature_p_two_chain_closed_form():
    # Q = q with orientation difference 2: P^c must come out as q again
    b = _two_chain([0, 1])
    Pc = signature_P(b)
    assert Pc[(0, 1)] == WPoly.from_int_coeffs([0, 1])
    Qc = signature_Q(b)
    assert Qc[(0, 1)] == WPoly.from_int_coeffs([0, 1])


def test_signature_pq_compose_to_signed_identity():
    for comps in (builtin_block("sl2r", (2,)), builtin_block("sl2c", (3, 1))):
        for b in comps:
            Qc, Pc = signature_Q(b), signature_P(b)
            lengths = {e.id: e.length for e in b.elements}
            for r in b.ids():
                for c in b.ids():
                    acc = WPoly.from_int_coeffs([])
                    for k in b.ids():
                        p = Pc.get((r, k))
                        q = Qc.get((k, c))
                        if p is None or q is None:
                            continue
                        sign = (-1) ** ((lengths[r] + lengths[k]) % 2)
                        acc = acc + sign * (p * q)
                    want = (
                        WPoly.from_int_coeffs([1])
                        if r == c
                        else WPoly.from_int_coeffs([])
                    )
                    assert acc == want


# ---------------------------------------------------------------------------
# expansions

def test_irreducible_in_standards_integral():
    (b, _) = builtin_block("sl2r", (1,))
    sc = irreducible_in_standards(b, 2)
    assert sc.basis == "standard"
    assert as_dict(sc) == {"PS+(1)": W_ONE, "DS+(1)": -W_ONE, "DS-(1)": -W_ONE}
    sc = irreducible_in_standards(b, 0)
    assert as_dict(sc) == {"DS+(1)": W_ONE}


def test_deform_step_at_wall():
    (b, _) = builtin_block("sl2r", (1,))
    gamma = sl2r_ps_param(0, 1)
    delta = deform_step(b, gamma)
    assert delta.basis == "irreducible"
    assert as_dict(delta) == {"DS+(1)": S_MINUS_1, "DS-(1)": S_MINUS_1}


def test_hs_rewrite():
    d0 = sl2r_ps_param(0, 0).discrete
    assert as_dict(hs_rewrite(d0, "sl2r")) == {"PS0": W_ONE}
    d1 = sl2r_ps_param(1, 0).discrete
    assert as_dict(hs_rewrite(d1, "sl2r")) == {"LDS+": W_ONE, "LDS-": W_ONE}
    with pytest.raises(MissingRewriteTable):
        hs_rewrite(_nonfinal_sl2c(), "sl2c")


def _nonfinal_sl2c():
    from sigzero.params import DiscreteParam

    d = sl2c_param(1, 0).discrete
    return DiscreteParam(
        cartan=d.cartan,
        dlambda=d.dlambda,
        grading={},
        final=False,
        ktype_parity=d.ktype_parity,
    )


# ---------------------------------------------------------------------------
# deformation truth table

DEFORM_TABLE = [
    (0, F(1), {"PS0": W_ONE}),
    (0, F(3, 2), {"PS0": W_ONE, "DS+(1)": S_MINUS_1, "DS-(1)": S_MINUS_1}),
    (0, F(3), {"PS0": W_ONE, "DS+(1)": S_MINUS_1, "DS-(1)": S_MINUS_1}),
    # the wall at 3 is crossed with one reducibility wall still below it,
    # so its delta carries an extra factor of s: s(s-1) = 1-s
    (
        0,
        F(7, 2),
        {
            "PS0": W_ONE,
            "DS+(1)": S_MINUS_1,
            "DS-(1)": S_MINUS_1,
            "DS+(3)": ONE_MINUS_S,
            "DS-(3)": ONE_MINUS_S,
        },
    ),
    (1, F(2), {"LDS+": W_ONE, "LDS-": W_ONE}),
    (
        1,
        F(3),
        {
            "LDS+": W_ONE,
            "LDS-": W_ONE,
            "DS+(2)": S_MINUS_1,
            "DS-(2)": S_MINUS_1,
        },
    ),
]


@pytest.mark.parametrize("eps,nu,want", DEFORM_TABLE)
def test_deform_to_zero_table(provider, eps, nu, want):
    g = sl2r_ps_param(eps, nu)
    sc = deform_to_zero(g, provider)
    assert sc.basis == "final_tempered"
    assert as_dict(sc) == want


def test_deform_memoized_and_trace_bypasses_cache(provider):
    g = sl2r_ps_param(0, F(7, 2))
    first = deform_to_zero(g, provider)
    assert deform_to_zero(g, provider) == first
    records = []
    again = deform_to_zero(g, provider, trace=records.append)
    assert again == first
    events = {r["event"] for r in records}
    assert events == {"crossing", "recurse"}
    # 7/2 crosses the walls at 1 and 3: two crossing records at top level
    crossings = [r for r in records if r["event"] == "crossing"]
    assert [r["t"] for r in crossings] == ["6/7", "2/7"]


def test_deform_is_provider_local():
    p1, p2 = BlockProvider(), BlockProvider()
    g = sl2r_ps_param(0, F(3, 2))
    assert deform_to_zero(g, p1) == deform_to_zero(g, p2)


# ---------------------------------------------------------------------------
# unitarity

CLASSICAL = [
    (0, F(0), True),
    (0, F(1, 2), True),
    (0, F(1), True),
    (0, F(5, 4), False),
    (0, F(2), False),
    (1, F(0), True),
    (1, F(1, 2), False),
    (1, F(1), False),
    (1, F(2), False),
]


@pytest.mark.parametrize("eps,nu,want", CLASSICAL)
def test_unitary_verdicts(provider, eps, nu, want):
    res = unitary_test(sl2r_ps_param(eps, nu), provider)
    assert res.is_unitary == want


def test_unitary_certificates(provider):
    res = unitary_test(sl2r_ps_param(0, 1), provider)
    assert res.verdict == "unitary"
    assert as_dict(res.B) == {
        "PS0": W_ONE,
        "DS+(1)": -W_ONE,
        "DS-(1)": -W_ONE,
    }
    res = unitary_test(sl2r_ps_param(1, 1), provider)
    assert res.verdict == "nonunitary"
    assert res.violations
    res = unitary_test(sl2r_ps_param(0, F(3, 2)), provider)
    assert res.verdict == "nonunitary"
    assert "W-components" in res.reason


def test_unitary_unsupported(provider):
    with pytest.raises(UnsupportedUnequalRank):
        unitary_test(sl2c_param(0, 1), provider, group="sl2c")
    with pytest.raises(UnsupportedGroup):
        unitary_test(sl2r_ps_param(0, 1), provider, group="so5")


def test_tempered_is_unitary(provider):
    res = unitary_test(sl2r_ds_param(1, 2), provider)
    assert res.is_unitary
    res = unitary_test(sl2r_ps_param(0, 0), provider)
    assert res.is_unitary


# ---------------------------------------------------------------------------
# K-types

def test_sl2r_lowest_ktype():
    assert sl2r_lowest_ktype(sl2r_ds_param(1, 1)) == 2
    assert sl2r_lowest_ktype(sl2r_ds_param(-1, 1)) == -2
    assert sl2r_lowest_ktype(sl2r_ds_param(1, 0)) == 1
    assert sl2r_lowest_ktype(sl2r_ps_param(0, 2)) == 0


def test_ktype_signature_spherical_wall(provider):
    sc = deform_to_zero(sl2r_ps_param(0, F(3, 2)), provider)
    kt = ktype_signature(sc, 4)
    assert as_dict(kt) == {0: W_ONE, 2: W_S, -2: W_S, 4: W_S, -4: W_S}


def test_ktype_signature_trivial(provider):
    sc = deform_to_zero(sl2r_ps_param(0, 1), provider)
    kt = ktype_signature(sc, 6)
    assert set(as_dict(kt).values()) == {W_ONE}


def test_ktype_signature_rejects_wrong_basis():
    sc = SignatureChar("sl2r", "standard")
    with pytest.raises(ValueError):
        ktype_signature(sc, 4)
