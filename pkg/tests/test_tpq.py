"""T_pq geometries, the reflection sigma, and Knoerrer descent of labels."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cuspcm import (
    BundleTriple,
    KahnViolation,
    SSeq,
    TpqKind,
    TpqModuleLabel,
    apply_sigma,
    canonical_form,
    classify_label,
    descend,
    free_label,
    geometry_of,
    is_sigma_symmetric,
    shift_by,
    sigma_of_module,
    tpq_iso,
)

G38 = geometry_of(3, 8)
G55 = geometry_of(5, 5)

CASES = [(3, 7), (3, 8), (4, 5), (4, 6), (5, 5), (5, 6), (6, 7)]


def sequences_for(geom, max_r=3, lo=-2, hi=2):
    s = geom.cusp.s
    return st.integers(1, max_r).flatmap(
        lambda r: st.tuples(*[st.integers(lo, hi)] * (r * s)).map(
            lambda e: SSeq(s, e)
        )
    )


# ------------------------------------------------------------- geometry


def test_geometry_examples():
    g = geometry_of(3, 7)
    assert (g.cusp.s, g.cusp.b) == (1, (1,))
    g = geometry_of(4, 6)
    assert (g.cusp.s, g.cusp.b) == (2, (2, 0))
    assert (G55.cusp.s, G55.t, G55.cusp.b) == (2, 2, (1, 1))
    assert (G38.cusp.s, G38.cusp.b, G38.t) == (2, (1, 0), None)
    g = geometry_of(6, 7)
    assert (g.cusp.s, g.t, g.cusp.b) == (5, 3, (1, 0, 1, 0, 0))


def test_geometry_rejects_non_cusps():
    with pytest.raises(ValueError):
        geometry_of(2, 9)
    with pytest.raises(ValueError):
        geometry_of(4, 3)
    with pytest.raises(ValueError):
        geometry_of(3, 6)  # 1/3 + 1/6 = 1/2 exactly
    with pytest.raises(ValueError):
        geometry_of(4, 4)


# ---------------------------------------------------------------- sigma


def test_sigma_examples():
    assert apply_sigma(G38, SSeq(2, (1, 2, 3, 4))).entries == (1, 4, 3, 2)
    assert apply_sigma(G55, SSeq(2, (3, 9))).entries == (9, 3)
    assert apply_sigma(G38, SSeq(2, (7, 9))).entries == (7, 9)
    with pytest.raises(ValueError):
        apply_sigma(G38, SSeq(1, (1,)))


def test_sigma_symmetry_examples():
    assert is_sigma_symmetric(G38, SSeq(2, (1, 2, 1, 3)))
    assert not is_sigma_symmetric(G38, SSeq(2, (1, 2, 3, 4)))
    assert is_sigma_symmetric(G55, SSeq(2, (1, 1)))


@pytest.mark.parametrize("p,q", CASES)
def test_b_sequence_is_sigma_symmetric(p, q):
    geom = geometry_of(p, q)
    assert is_sigma_symmetric(geom, geom.cusp.b_sequence)


@pytest.mark.parametrize("p,q", CASES)
@given(data=st.data())
def test_sigma_involution_and_shift_orbits(p, q, data):
    geom = geometry_of(p, q)
    seq = data.draw(sequences_for(geom))
    k = data.draw(st.integers(-4, 4))
    assert apply_sigma(geom, apply_sigma(geom, seq)) == seq
    assert canonical_form(apply_sigma(geom, shift_by(seq, k))) == canonical_form(
        apply_sigma(geom, seq)
    )


def test_sigma_of_module_examples():
    got = sigma_of_module(G38, BundleTriple(SSeq(2, (1, 2, 3, 4)), 1, Fraction(5)))
    assert got.seq.entries == canonical_form(SSeq(2, (1, 4, 3, 2))).entries
    assert (got.m, got.lam) == (1, Fraction(1, 5))
    fixed = BundleTriple(SSeq(2, (1, 1)), 2, Fraction(1))
    assert sigma_of_module(G55, fixed) == fixed
    with pytest.raises(KahnViolation):
        sigma_of_module(G38, BundleTriple(SSeq(2, (0, 0)), 1, Fraction(1)))


@given(data=st.data())
def test_sigma_of_module_is_an_involution(data):
    seq = data.draw(sequences_for(G38, lo=0, hi=2))
    lam = data.draw(st.sampled_from([1, -1, 2, Fraction(1, 3)]))
    triple = BundleTriple(canonical_form(seq), 1, lam)
    if all(v == 0 for v in seq.entries) and lam == 1:
        return
    back = sigma_of_module(G38, sigma_of_module(G38, triple))
    assert back == triple  # canonical forms make shift-equivalence equality
    assert back.lam == triple.lam


# -------------------------------------------------------------- labels


def test_label_validation():
    with pytest.raises(ValueError):
        TpqModuleLabel(geometry=G38, kind=TpqKind.FREE, m=1)
    with pytest.raises(ValueError):
        TpqModuleLabel(
            geometry=G38, kind=TpqKind.SINGLE, seq=SSeq(2, (1, 0)), m=1, lam=1
        )  # sigma-symmetric with lam=1 must split
    with pytest.raises(ValueError):
        TpqModuleLabel(
            geometry=G38, kind=TpqKind.SPLIT, seq=SSeq(2, (1, 2, 3, 4)), m=1,
            sign=1, branch=1,
        )  # not sigma-symmetric
    with pytest.raises(ValueError):
        TpqModuleLabel(
            geometry=G38, kind=TpqKind.SPLIT, seq=SSeq(2, (0, 0)), m=1,
            sign=1, branch=1,
        )  # zero sequence only splits at sign -1
    lab = TpqModuleLabel(
        geometry=G38, kind=TpqKind.SPLIT, seq=SSeq(2, (1, 0)), m=1, sign=-1, branch=2
    )
    assert str(lab) == "N2([1,0],1,-1)"


# -------------------------------------------------------------- descend


def test_descend_free():
    labs = descend(G38, free_label(G38.cusp))
    assert [lab.kind for lab in labs] == [TpqKind.FREE]
    assert str(labs[0]) == "A'"


def test_descend_sigma_symmetric_generic_lam_stays_single():
    lab = classify_label(BundleTriple(SSeq(2, (1, 2, 1, 3)), 1, Fraction(5)), G38.cusp)
    got = descend(G38, lab)
    assert [g.kind for g in got] == [TpqKind.SINGLE]
    assert str(got[0]) == "N([1,2,1,3],1,5)"


def test_descend_splits_at_sign():
    lab = classify_label(BundleTriple(SSeq(2, (1, 0)), 1, Fraction(-1)), G38.cusp)
    got = descend(G38, lab)
    assert [str(g) for g in got] == ["N1([1,0],1,-1)", "N2([1,0],1,-1)"]


def test_descend_rejects_other_geometry():
    with pytest.raises(ValueError):
        descend(G38, free_label(G55.cusp))


# -------------------------------------------------------------- tpq_iso


def single(seq, m, lam, geom=G38):
    return TpqModuleLabel(
        geometry=geom, kind=TpqKind.SINGLE, seq=SSeq(geom.cusp.s, seq), m=m,
        lam=Fraction(lam),
    )


def test_iso_examples():
    assert tpq_iso(G38, single((1, 2), 1, 3), single((1, 2), 1, Fraction(1, 3)))
    assert tpq_iso(
        G38, single((1, 2, 3, 4), 1, 5), single((1, 4, 3, 2), 1, Fraction(1, 5))
    )
    assert not tpq_iso(G38, single((1, 2), 1, 3), single((1, 2), 1, 5))
    a = TpqModuleLabel(
        geometry=G38, kind=TpqKind.SPLIT, seq=SSeq(2, (1, 0)), m=1, sign=-1, branch=1
    )
    b = TpqModuleLabel(
        geometry=G38, kind=TpqKind.SPLIT, seq=SSeq(2, (1, 0)), m=1, sign=-1, branch=2
    )
    assert not tpq_iso(G38, a, b)
    assert tpq_iso(G38, a, a)


def test_iso_mixed_kinds_differ():
    free = TpqModuleLabel(geometry=G38, kind=TpqKind.FREE)
    assert not tpq_iso(G38, free, single((1, 2), 1, 3))
    assert tpq_iso(G38, free, TpqModuleLabel(geometry=G38, kind=TpqKind.FREE))


@given(data=st.data())
def test_iso_is_symmetric(data):
    seqs = st.sampled_from([(1, 2), (1, 2, 3, 4), (0, 1), (2, 2)])
    a = single(data.draw(seqs), 1, data.draw(st.sampled_from([3, 5, Fraction(1, 3)])))
    b = single(data.draw(seqs), 1, data.draw(st.sampled_from([3, 5, Fraction(1, 3)])))
    assert tpq_iso(G38, a, b) == tpq_iso(G38, b, a)
