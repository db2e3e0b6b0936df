"""Auslander-Reiten quivers over the cusp and their curve-side counterparts.

Over the cusp every non-free indecomposable M(d, m, lam) is fixed by the
AR translation, so the quiver falls apart into homogeneous tubes indexed
by (d, lam): levels m = 1, 2, ... joined by one irreducible map each way.
The tube over (B, 1) is special: the free module A is glued to its bottom
level.  Over the curve T_pq the descended tubes look the same except over
sigma-fixed data, where the tube has period two: two branches swapped by
the translation, with level-raising arrows along each branch and
level-lowering arrows crossing between them; the special tube glues the
free module between the two bottom levels.

Quivers are plain node/arrow/tube containers with a deterministic
construction order, exportable as DOT or as JSON-ready dictionaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cohomology import BundleTriple, CuspGeometry, Scalar
from .cusp import (
    CMModuleLabel,
    LambdaBase,
    classify_label,
    enumerate_rank,
    free_label,
)
from .sequences import SSeq, canonical_form
from .tpq import TpqGeometry, TpqKind, TpqModuleLabel, apply_sigma, is_sigma_symmetric

__all__ = [
    "QuiverNode",
    "QuiverArrow",
    "Tube",
    "ARQuiver",
    "ARSequence",
    "ar_sequence",
    "build_tube",
    "cusp_quiver",
    "tpq_quiver",
    "ArrowMultiplicity",
    "arrow_multiplicity",
    "export_dot",
    "quiver_to_dict",
]


@dataclass(frozen=True)
class QuiverNode:
    id: str
    kind: str
    rank: int | None = None


@dataclass(frozen=True)
class QuiverArrow:
    src: str
    dst: str
    mult: int = 1


@dataclass(frozen=True)
class Tube:
    id: str
    period: int
    members: tuple[str, ...]


@dataclass(frozen=True, eq=True)
class ARQuiver:
    """Nodes, arrows, tubes and the AR translation on node ids.

    The free module is not in the domain of the translation; every other
    node is.
    """

    nodes: tuple[QuiverNode, ...]
    arrows: tuple[QuiverArrow, ...]
    tubes: tuple[Tube, ...]
    translate: dict[str, str]


@dataclass(frozen=True)
class ARSequence:
    """An almost split sequence 0 -> left -> sum(middle) -> right -> 0."""

    left: CMModuleLabel
    middle: tuple[CMModuleLabel, ...]
    right: CMModuleLabel


def ar_sequence(geom: CuspGeometry, label: CMModuleLabel) -> ARSequence:
    """The almost split sequence starting (and ending) at the label.

    The translation fixes every non-free module, so left = right.  Middle
    terms: the levels m+1 and m-1 of the same tube, the m-1 term dropped at
    the bottom level, and with the free module joining M(B, 2, 1) for the
    bottom of the special tube.

    Raises:
        ValueError: for the free module, which admits no such sequence.
    """
    if label.geometry != geom:
        raise ValueError("label belongs to a different geometry")
    if label.is_free:
        raise ValueError("the free module is not the end of an almost split sequence")
    t = label.triple

    def level(m: int) -> CMModuleLabel:
        return classify_label(BundleTriple(t.seq, m, t.lam), geom)

    if t.m > 1:
        middle: tuple[CMModuleLabel, ...] = (level(t.m + 1), level(t.m - 1))
    elif t.seq == geom.b_sequence and t.lam == 1:
        middle = (free_label(geom), level(2))
    else:
        middle = (level(2),)
    return ARSequence(left=label, middle=middle, right=label)


def build_tube(geom: CuspGeometry, seq: SSeq, lam: Scalar | int | str, depth: int) -> ARQuiver:
    """The tube over one parameter point: M(seq, m, lam) for m = 1..depth.

    Consecutive levels are joined by one arrow each way.  Over (B, 1) the
    free module is glued to the bottom level and listed as a member of the
    tube; it is excluded from the translation.
    """
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    lam = Fraction(lam)
    labels = [
        classify_label(BundleTriple(seq, m, lam), geom) for m in range(1, depth + 1)
    ]
    ids = [str(lab) for lab in labels]
    special = labels[0].triple.seq == geom.b_sequence and lam == 1

    nodes: list[QuiverNode] = []
    arrows: list[QuiverArrow] = []
    members: list[str] = []
    if special:
        a = free_label(geom)
        nodes.append(QuiverNode(id=str(a), kind="free", rank=a.rank))
        members.append(str(a))
        arrows.append(QuiverArrow(src=str(a), dst=ids[0]))
        arrows.append(QuiverArrow(src=ids[0], dst=str(a)))
    for lab, nid in zip(labels, ids):
        nodes.append(QuiverNode(id=nid, kind="module", rank=lab.rank))
        members.append(nid)
    for low, high in zip(ids, ids[1:]):
        arrows.append(QuiverArrow(src=low, dst=high))
        arrows.append(QuiverArrow(src=high, dst=low))

    tube = Tube(
        id=f"T({labels[0].triple.seq},{lam})",
        period=1,
        members=tuple(members),
    )
    return ARQuiver(
        nodes=tuple(nodes),
        arrows=tuple(arrows),
        tubes=(tube,),
        translate={nid: nid for nid in ids},
    )


def _merge(quivers: Iterable[ARQuiver]) -> ARQuiver:
    nodes: list[QuiverNode] = []
    arrows: list[QuiverArrow] = []
    tubes: list[Tube] = []
    translate: dict[str, str] = {}
    for q in quivers:
        nodes.extend(q.nodes)
        arrows.extend(q.arrows)
        tubes.extend(q.tubes)
        translate.update(q.translate)
    return ARQuiver(
        nodes=tuple(nodes), arrows=tuple(arrows), tubes=tuple(tubes),
        translate=translate,
    )


def _base_points(
    geom: CuspGeometry, max_base_rank: int, lambdas: Sequence[Scalar | int | str]
) -> list[tuple[SSeq, Fraction]]:
    # Tube bases (seq, lam) whose bottom module has rank <= max_base_rank,
    # in (family rank, sequence length, sequence, lam) order.
    if max_base_rank < 1:
        raise ValueError(f"max_base_rank must be positive, got {max_base_rank}")
    lams = sorted(set(Fraction(l) for l in lambdas))
    if any(l == 0 for l in lams):
        raise ValueError("lam must be nonzero")
    points: list[tuple[SSeq, Fraction]] = []
    for rank in range(1, max_base_rank + 1):
        for fam in enumerate_rank(geom, rank).families:
            if fam.m != 1:
                continue
            for lam in lams:
                if lam == 1 and fam.base is LambdaBase.NONZERO_EXCEPT_ONE:
                    # Either no module at lam = 1 (zero sequence) or the
                    # special base M(B, 1, 1); keep the latter if its rank
                    # still fits.
                    if fam.seq != geom.b_sequence:
                        continue
                    if rank + 1 > max_base_rank:
                        continue
                points.append((fam.seq, lam))
    return points


def cusp_quiver(
    geom: CuspGeometry,
    max_base_rank: int,
    depth: int,
    lambdas: Sequence[Scalar | int | str] = (1, 2),
) -> ARQuiver:
    """Assemble the tubes whose bottom module has rank <= max_base_rank.

    Tubes are indexed by (seq, lam) with lam drawn from the given sample
    values; parameter points where no module exists are skipped.  The
    result order is deterministic: by family rank, then sequence, then lam.
    """
    return _merge(
        build_tube(geom, seq, lam, depth)
        for seq, lam in _base_points(geom, max_base_rank, lambdas)
    )


def _tpq_tube(
    geom: TpqGeometry, seq: SSeq, lam: Fraction, depth: int
) -> ARQuiver:
    # One curve-side tube over the sigma-orbit of (seq, lam).
    split = is_sigma_symmetric(geom, seq) and lam in (1, -1)
    if not split:
        labels = [
            TpqModuleLabel(geometry=geom, kind=TpqKind.SINGLE, seq=seq, m=m, lam=lam)
            for m in range(1, depth + 1)
        ]
        ids = [str(lab) for lab in labels]
        nodes = [QuiverNode(id=nid, kind="single") for nid in ids]
        arrows: list[QuiverArrow] = []
        for low, high in zip(ids, ids[1:]):
            arrows.append(QuiverArrow(src=low, dst=high))
            arrows.append(QuiverArrow(src=high, dst=low))
        tube = Tube(id=f"T({seq},{lam})", period=1, members=tuple(ids))
        return ARQuiver(
            nodes=tuple(nodes), arrows=tuple(arrows), tubes=(tube,),
            translate={nid: nid for nid in ids},
        )

    sign = 1 if lam == 1 else -1
    special = seq == geom.cusp.b_sequence and sign == 1

    def branch_id(branch: int, m: int) -> str:
        return str(
            TpqModuleLabel(
                geometry=geom, kind=TpqKind.SPLIT,
                seq=seq, m=m, sign=sign, branch=branch,
            )
        )

    nodes = []
    members: list[str] = []
    arrows = []
    translate: dict[str, str] = {}
    free_id = str(TpqModuleLabel(geometry=geom, kind=TpqKind.FREE))
    if special:
        nodes.append(QuiverNode(id=free_id, kind="free"))
        members.append(free_id)
    for m in range(1, depth + 1):
        for branch in (1, 2):
            nid = branch_id(branch, m)
            nodes.append(QuiverNode(id=nid, kind="split"))
            members.append(nid)
            translate[nid] = branch_id(3 - branch, m)
    if special:
        # The free module sits in the sequence starting from branch 2.
        arrows.append(QuiverArrow(src=free_id, dst=branch_id(1, 1)))
        arrows.append(QuiverArrow(src=branch_id(2, 1), dst=free_id))
    for m in range(1, depth):
        arrows.append(QuiverArrow(src=branch_id(1, m), dst=branch_id(1, m + 1)))
        arrows.append(QuiverArrow(src=branch_id(2, m), dst=branch_id(2, m + 1)))
        arrows.append(QuiverArrow(src=branch_id(1, m + 1), dst=branch_id(2, m)))
        arrows.append(QuiverArrow(src=branch_id(2, m + 1), dst=branch_id(1, m)))
    tube = Tube(id=f"T({seq},{sign})", period=2, members=tuple(members))
    return ARQuiver(
        nodes=tuple(nodes), arrows=tuple(arrows), tubes=(tube,),
        translate=translate,
    )


def tpq_quiver(
    geom: TpqGeometry,
    depth: int,
    max_base_rank: int | None = None,
    lambdas: Sequence[Scalar | int | str] = (1, 2),
    bases: Sequence[tuple[SSeq, Scalar | int | str]] | None = None,
) -> ARQuiver:
    """Curve-side AR quiver assembled from descended tubes.

    Bases are either explicit (seq, lam) pairs or, given max_base_rank, the
    cusp tube bases of that rank bound at the sampled lam values.  Bases in
    one sigma-orbit give the same tube downstairs, so each orbit is built
    once, from its first representative in order.
    """
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    if (bases is None) == (max_base_rank is None):
        raise ValueError("give exactly one of max_base_rank or bases")
    if bases is None:
        points = _base_points(geom.cusp, max_base_rank, lambdas)
    else:
        points = []
        for seq, lam in bases:
            lam = Fraction(lam)
            seq = canonical_form(seq)
            # Validate the base point through the cusp classification.
            classify_label(BundleTriple(seq, 1, lam), geom.cusp)
            points.append((seq, lam))
    seen: set[tuple[tuple[int, ...], Fraction]] = set()
    quivers: list[ARQuiver] = []
    for seq, lam in points:
        flip = (canonical_form(apply_sigma(geom, seq)).entries, 1 / lam)
        key = (seq.entries, lam)
        if key in seen or flip in seen:
            continue
        seen.add(key)
        quivers.append(_tpq_tube(geom, seq, Fraction(lam), depth))
    return _merge(quivers)


@dataclass(frozen=True)
class ArrowMultiplicity:
    """Arrow counts for the n-dimensional hypersurface analogue."""

    at_free: int
    per_arrow_added: int


def arrow_multiplicity(n: int) -> ArrowMultiplicity:
    """How the quiver decorations scale with hypersurface dimension n.

    Even n: the arrow pair at the free vertex becomes 2^(n/2) parallel
    arrows and nothing else changes.  Odd n: the free vertex keeps its two
    arrows and every other arrow gains 2^((n-1)/2) parallel copies.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if n % 2 == 0:
        return ArrowMultiplicity(at_free=2 ** (n // 2), per_arrow_added=0)
    return ArrowMultiplicity(at_free=2, per_arrow_added=2 ** ((n - 1) // 2))


def export_dot(quiver: ARQuiver) -> str:
    """Render as a DOT digraph, one cluster per tube, byte-deterministic.

    Node labels carry the rank when one is defined; arrows of multiplicity
    greater than one carry the multiplicity as an edge label.
    """
    by_id = {node.id: node for node in quiver.nodes}
    lines = ["digraph ar_quiver {", "  rankdir=BT;"]
    placed: set[str] = set()
    for index, tube in enumerate(quiver.tubes):
        lines.append(f"  subgraph cluster_{index} {{")
        lines.append(f'    label="{tube.id} period {tube.period}";')
        for nid in tube.members:
            node = by_id[nid]
            text = nid if node.rank is None else f"{nid}\\nrank {node.rank}"
            lines.append(f'    "{nid}" [label="{text}"];')
            placed.add(nid)
        lines.append("  }")
    for node in quiver.nodes:
        if node.id not in placed:
            text = node.id if node.rank is None else f"{node.id}\\nrank {node.rank}"
            lines.append(f'  "{node.id}" [label="{text}"];')
    for arrow in quiver.arrows:
        attr = f' [label="{arrow.mult}"]' if arrow.mult > 1 else ""
        lines.append(f'  "{arrow.src}" -> "{arrow.dst}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_to_dict(quiver: ARQuiver) -> dict:
    """JSON-ready dictionary with nodes, arrows, tubes and the translation."""
    nodes = []
    for node in quiver.nodes:
        item: dict = {"id": node.id, "kind": node.kind}
        if node.rank is not None:
            item["rank"] = node.rank
        nodes.append(item)
    return {
        "nodes": nodes,
        "arrows": [
            {"src": a.src, "dst": a.dst, "mult": a.mult} for a in quiver.arrows
        ],
        "tubes": [
            {"id": t.id, "period": t.period, "members": list(t.members)}
            for t in quiver.tubes
        ],
        "translate": [
            {"from": src, "to": dst} for src, dst in quiver.translate.items()
        ],
    }
