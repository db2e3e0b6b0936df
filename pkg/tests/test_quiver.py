"""AR quiver assembly: almost split sequences, tubes, DOT/JSON export."""

from fractions import Fraction

import pytest

from cuspcm import (
    ARQuiver,
    BundleTriple,
    KahnViolation,
    SSeq,
    ar_sequence,
    arrow_multiplicity,
    build_tube,
    classify_label,
    cusp_quiver,
    export_dot,
    free_label,
    geometry_of,
    quiver_to_dict,
    tpq_quiver,
    validate_cusp,
)

B1 = validate_cusp(1, [1])
G38 = geometry_of(3, 8)


def label(entries, m, lam, geom=B1):
    return classify_label(
        BundleTriple(SSeq(geom.s, entries), m, Fraction(lam)), geom
    )


def arrow_pairs(quiver):
    return {(a.src, a.dst) for a in quiver.arrows}


# ------------------------------------------------------------ sequences


def test_ar_sequence_bottom_level():
    seq = ar_sequence(B1, label((2,), 1, 3))
    assert seq.left == seq.right == label((2,), 1, 3)
    assert [str(x) for x in seq.middle] == ["M([2],2,3)"]


def test_ar_sequence_special_bottom():
    seq = ar_sequence(B1, label((1,), 1, 1))
    assert [str(x) for x in seq.middle] == ["A", "M([1],2,1)"]


def test_ar_sequence_inner_level():
    seq = ar_sequence(B1, label((2,), 3, 3))
    assert [str(x) for x in seq.middle] == ["M([2],4,3)", "M([2],2,3)"]


def test_ar_sequence_rejects_free():
    with pytest.raises(ValueError):
        ar_sequence(B1, free_label(B1))


def test_ar_sequence_rank_additive():
    for entries, m, lam in [((2,), 1, 3), ((2,), 3, 3), ((1,), 1, 1), ((0, 1), 2, 5)]:
        left = label(entries, m, lam)
        seq = ar_sequence(B1, left)
        assert sum(x.rank for x in seq.middle) == 2 * left.rank


# ----------------------------------------------------------- cusp tubes


def test_build_tube_ranks_along_levels():
    tube = build_tube(B1, SSeq(1, (2,)), 3, depth=3)
    assert [n.rank for n in tube.nodes] == [2, 4, 6]
    assert tube.tubes[0].period == 1
    assert all(tube.translate[n.id] == n.id for n in tube.nodes)


def test_build_tube_special_contains_free():
    tube = build_tube(B1, SSeq(1, (1,)), 1, depth=2)
    assert [n.id for n in tube.nodes] == ["A", "M([1],1,1)", "M([1],2,1)"]
    assert [n.rank for n in tube.nodes] == [1, 2, 3]
    assert ("A", "M([1],1,1)") in arrow_pairs(tube)
    assert ("M([1],1,1)", "A") in arrow_pairs(tube)
    assert "A" not in tube.translate


def test_build_tube_kahn_violation():
    with pytest.raises(KahnViolation):
        build_tube(B1, SSeq(1, (0,)), 1, depth=1)
    with pytest.raises(ValueError):
        build_tube(B1, SSeq(1, (2,)), 3, depth=0)


def test_cusp_quiver_partitions_nodes():
    quiver = cusp_quiver(B1, max_base_rank=2, depth=3)
    seen = {}
    for tube in quiver.tubes:
        for member in tube.members:
            assert member not in seen
            seen[member] = tube.id
    assert set(seen) == {n.id for n in quiver.nodes}
    # One special tube only; the free module lives there.
    assert sum(1 for t in quiver.tubes if "A" in t.members) == 1


# ------------------------------------------------------------ tpq tubes


def test_tpq_single_tube_shape():
    quiver = tpq_quiver(G38, depth=2, bases=[(SSeq(2, (1, 2)), 3)])
    assert [n.id for n in quiver.nodes] == ["N([1,2],1,3)", "N([1,2],2,3)"]
    assert quiver.tubes[0].period == 1
    assert arrow_pairs(quiver) == {
        ("N([1,2],1,3)", "N([1,2],2,3)"),
        ("N([1,2],2,3)", "N([1,2],1,3)"),
    }


def test_tpq_split_tube_mesh():
    quiver = tpq_quiver(G38, depth=3, bases=[(SSeq(2, (1, 0)), -1)])
    pairs = arrow_pairs(quiver)
    assert quiver.tubes[0].period == 2
    # Raise along each branch, lower across branches.
    assert ("N1([1,0],1,-1)", "N1([1,0],2,-1)") in pairs
    assert ("N2([1,0],1,-1)", "N2([1,0],2,-1)") in pairs
    assert ("N1([1,0],2,-1)", "N2([1,0],1,-1)") in pairs
    assert ("N2([1,0],2,-1)", "N1([1,0],1,-1)") in pairs
    assert ("N1([1,0],1,-1)", "N2([1,0],2,-1)") not in pairs
    # Translation swaps the branches at every level.
    assert quiver.translate["N1([1,0],1,-1)"] == "N2([1,0],1,-1)"
    assert quiver.translate["N2([1,0],3,-1)"] == "N1([1,0],3,-1)"


def test_tpq_special_tube_attaches_free():
    quiver = tpq_quiver(G38, depth=2, bases=[(SSeq(2, (1, 0)), 1)])
    pairs = arrow_pairs(quiver)
    assert ("N2([1,0],1,1)", "A'") in pairs
    assert ("A'", "N1([1,0],1,1)") in pairs
    assert ("A'", "N2([1,0],1,1)") not in pairs
    assert "A'" in quiver.tubes[0].members
    assert "A'" not in quiver.translate


def test_tpq_quiver_merges_sigma_orbits():
    # (d, lam) and (sigma d, 1/lam) name the same tube downstairs.
    twice = tpq_quiver(
        G38, depth=2,
        bases=[(SSeq(2, (1, 2, 3, 4)), 5), (SSeq(2, (1, 4, 3, 2)), Fraction(1, 5))],
    )
    once = tpq_quiver(G38, depth=2, bases=[(SSeq(2, (1, 2, 3, 4)), 5)])
    assert twice == once


def test_tpq_quiver_argument_check():
    with pytest.raises(ValueError):
        tpq_quiver(G38, depth=2)
    with pytest.raises(ValueError):
        tpq_quiver(G38, depth=2, max_base_rank=2, bases=[(SSeq(2, (1, 0)), 1)])


# --------------------------------------------------------- decorations


def test_arrow_multiplicity_values():
    assert arrow_multiplicity(2).at_free == 2
    assert arrow_multiplicity(2).per_arrow_added == 0
    assert arrow_multiplicity(4).at_free == 4
    assert arrow_multiplicity(3) == arrow_multiplicity(3).__class__(2, 2)
    assert arrow_multiplicity(1) == arrow_multiplicity(1).__class__(2, 1)
    assert arrow_multiplicity(7).per_arrow_added == 8
    with pytest.raises(ValueError):
        arrow_multiplicity(0)


# --------------------------------------------------------------- export


def test_export_empty_quiver():
    empty = ARQuiver(nodes=(), arrows=(), tubes=(), translate={})
    assert export_dot(empty) == "digraph ar_quiver {\n  rankdir=BT;\n}\n"


def test_export_counts_round_trip():
    quiver = cusp_quiver(B1, max_base_rank=2, depth=2)
    dot = export_dot(quiver)
    assert dot.count(" -> ") == len(quiver.arrows)
    # Every multiplicity here is 1, so [label= marks exactly the node lines.
    assert dot.count("[label=") == len(quiver.nodes)
    assert dot.count("subgraph cluster_") == len(quiver.tubes)


def test_export_is_deterministic():
    a = export_dot(cusp_quiver(B1, max_base_rank=2, depth=3))
    b = export_dot(cusp_quiver(B1, max_base_rank=2, depth=3))
    assert a == b


def test_quiver_to_dict_schema():
    quiver = tpq_quiver(G38, depth=2, bases=[(SSeq(2, (1, 0)), 1)])
    data = quiver_to_dict(quiver)
    assert set(data) == {"nodes", "arrows", "tubes", "translate"}
    assert {n["kind"] for n in data["nodes"]} == {"free", "split"}
    assert all(set(a) == {"src", "dst", "mult"} for a in data["arrows"])
    assert data["tubes"][0]["period"] == 2
    assert all(set(t) == {"from", "to"} for t in data["translate"])
    # Ranks only appear where defined; curve labels carry none.
    assert all("rank" not in n for n in data["nodes"])
