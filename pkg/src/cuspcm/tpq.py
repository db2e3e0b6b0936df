"""The curve singularities T_pq and descent from their double covers.

For q >= p >= 3 with 1/p + 1/q < 1/2 the plane curve x^p + x^2*y^2 + y^q
has, as its double cover data, a degenerate cusp surface singularity whose
resolution cycle is computed here case by case in p.  The deck involution
sigma acts on degree sequences as an explicit reflection of the cyclic
index set, and Knoerrer-style descent matches CM modules over the surface
with CM modules over the curve: sigma-invariant module labels with
lam = +-1 split into two branch modules downstairs, everything else maps
to a single module determined up to the flip (d, lam) -> (sigma d, 1/lam).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .cohomology import BundleTriple, CuspGeometry, KahnViolation, kahn_condition
from .cusp import CMModuleLabel
from .sequences import SSeq, canonical_form, is_aperiodic, shift_by

__all__ = [
    "TpqCase",
    "TpqGeometry",
    "TpqKind",
    "TpqModuleLabel",
    "geometry_of",
    "apply_sigma",
    "is_sigma_symmetric",
    "sigma_of_module",
    "descend",
    "tpq_iso",
]


class TpqCase(Enum):
    P3 = "P3"
    P4 = "P4"
    P5PLUS = "P5plus"


@dataclass(frozen=True)
class TpqGeometry:
    """Resolution data of the double cover of T_pq.

    t is the block cut of the reflection sigma and is only meaningful for
    p >= 5 (where t = p - 3); for p in {3, 4} the reflection is anchored at
    position 1 and t is None.
    """

    p: int
    q: int
    cusp: CuspGeometry
    t: int | None
    case_tag: TpqCase

    @property
    def axis(self) -> int:
        """Anchor position of the reflection: t for p >= 5, else 1."""
        return 1 if self.t is None else self.t


def geometry_of(p: int, q: int) -> TpqGeometry:
    """Cycle weights of the double cover of T_pq, case by case in p.

    Requires q >= p >= 3 and 1/p + 1/q < 1/2 (checked exactly); the three
    shapes are b = (1, 0, ..., 0) with s = q - 6 for p = 3,
    b = (2, 0, ..., 0) with s = q - 4 for p = 4, and b_1 = b_t = 1 inside
    s = p + q - 8 zeros with t = p - 3 for p >= 5.
    """
    if p < 3:
        raise ValueError(f"p must be at least 3, got {p}")
    if q < p:
        raise ValueError(f"need q >= p, got p={p}, q={q}")
    if 2 * (p + q) >= p * q:
        raise ValueError(
            f"T_{p},{q} is not in the cusp regime: 1/{p} + 1/{q} >= 1/2"
        )
    if p == 3:
        s = q - 6
        return TpqGeometry(
            p, q, CuspGeometry(s, (1,) + (0,) * (s - 1)), None, TpqCase.P3
        )
    if p == 4:
        s = q - 4
        return TpqGeometry(
            p, q, CuspGeometry(s, (2,) + (0,) * (s - 1)), None, TpqCase.P4
        )
    s = p + q - 8
    t = p - 3
    b = [0] * s
    b[0] = 1
    b[t - 1] = 1
    return TpqGeometry(p, q, CuspGeometry(s, tuple(b)), t, TpqCase.P5PLUS)


def apply_sigma(geom: TpqGeometry, seq: SSeq) -> SSeq:
    """Degree sequence of the pullback along the deck involution.

    Entry i of the result is entry (axis + 1 - i) of the input, indices
    cyclic: the reflection of the index circle anchored at the axis.
    """
    if seq.s != geom.cusp.s:
        raise ValueError(
            f"sequence has s={seq.s} but the geometry has s={geom.cusp.s}"
        )
    e = seq.entries
    n = len(e)
    t = geom.axis
    return SSeq(seq.s, tuple(e[(t - 1 - i) % n] for i in range(n)))


def is_sigma_symmetric(geom: TpqGeometry, seq: SSeq) -> bool:
    """True when the reflected sequence is a rotation of the original."""
    reflected = apply_sigma(geom, seq)
    return any(reflected == shift_by(seq, k) for k in range(seq.r))


def sigma_of_module(geom: TpqGeometry, triple: BundleTriple) -> BundleTriple:
    """Image of a module label under the involution: (sigma d, m, 1/lam).

    The reflected sequence is returned in canonical form.  Applying this
    twice gives back a triple shift-equivalent to the input.
    """
    if not kahn_condition(triple):
        raise KahnViolation(f"no CM module for {triple}")
    reflected = apply_sigma(geom, triple.seq)
    return BundleTriple(canonical_form(reflected), triple.m, 1 / triple.lam)


class TpqKind(Enum):
    FREE = "free"
    SINGLE = "single"
    SPLIT = "split"


@dataclass(frozen=True)
class TpqModuleLabel:
    """Label of an indecomposable CM module over the curve T_pq.

    Three shapes: the free module; a single module N(seq, m, lam) for
    non-sigma-fixed surface data; a branch module N_branch(seq, m, sign)
    for sigma-symmetric seq and lam = sign in {+1, -1}.  No rank is
    attached: ranks downstairs are not determined by the surface label.
    """

    geometry: TpqGeometry
    kind: TpqKind
    seq: SSeq | None = None
    m: int | None = None
    lam: Fraction | None = None  # single only
    sign: int | None = None  # split only
    branch: int | None = None  # split only

    def __post_init__(self) -> None:
        if self.kind is TpqKind.FREE:
            if not (self.seq is None and self.m is None and self.lam is None
                    and self.sign is None and self.branch is None):
                raise ValueError("the free label carries no parameters")
            return
        if self.seq is None or self.m is None or self.m < 1:
            raise ValueError("module labels need a sequence and a positive m")
        if not is_aperiodic(self.seq):
            raise ValueError(f"periodic sequence {self.seq} does not label a module")
        if any(v < 0 for v in self.seq.entries):
            raise ValueError(f"negative entries in {self.seq} label no module")
        object.__setattr__(self, "seq", canonical_form(self.seq))
        symmetric = is_sigma_symmetric(self.geometry, self.seq)
        zero = all(v == 0 for v in self.seq.entries)
        if self.kind is TpqKind.SINGLE:
            if self.sign is not None or self.branch is not None:
                raise ValueError("single labels carry lam, not sign/branch")
            lam = Fraction(self.lam)
            if lam == 0:
                raise ValueError("lam must be a nonzero rational")
            if zero and lam == 1:
                raise ValueError("no module for the zero sequence with lam=1")
            if symmetric and lam in (1, -1):
                raise ValueError(
                    f"sigma-symmetric {self.seq} with lam={lam} splits; "
                    "use branch labels"
                )
            object.__setattr__(self, "lam", lam)
            return
        # split
        if self.lam is not None:
            raise ValueError("branch labels carry a sign, not lam")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.branch not in (1, 2):
            raise ValueError(f"branch must be 1 or 2, got {self.branch}")
        if not symmetric:
            raise ValueError(f"{self.seq} is not sigma-symmetric; nothing splits")
        if zero and self.sign == 1:
            raise ValueError("no module for the zero sequence with lam=1")

    def __str__(self) -> str:
        if self.kind is TpqKind.FREE:
            return "A'"
        if self.kind is TpqKind.SINGLE:
            return f"N({self.seq},{self.m},{self.lam})"
        return f"N{self.branch}({self.seq},{self.m},{self.sign})"


def descend(geom: TpqGeometry, label: CMModuleLabel) -> list[TpqModuleLabel]:
    """CM modules over the curve that a surface module descends to.

    The free module descends to the free module.  A triple whose sequence
    is sigma-symmetric and whose lam is +1 or -1 splits into the two branch
    modules; every other triple descends to one single module.
    """
    if label.geometry != geom.cusp:
        raise ValueError("label belongs to a different geometry")
    if label.is_free:
        return [TpqModuleLabel(geometry=geom, kind=TpqKind.FREE)]
    t = label.triple
    if is_sigma_symmetric(geom, t.seq) and t.lam in (1, -1):
        sign = 1 if t.lam == 1 else -1
        return [
            TpqModuleLabel(
                geometry=geom, kind=TpqKind.SPLIT,
                seq=t.seq, m=t.m, sign=sign, branch=branch,
            )
            for branch in (1, 2)
        ]
    return [
        TpqModuleLabel(
            geometry=geom, kind=TpqKind.SINGLE, seq=t.seq, m=t.m, lam=t.lam
        )
    ]


def tpq_iso(geom: TpqGeometry, a: TpqModuleLabel, b: TpqModuleLabel) -> bool:
    """Whether two curve labels name isomorphic modules.

    Free and branch labels are rigid; single labels are identified under
    the flip N(d, m, lam) = N(sigma d, m, 1/lam).
    """
    if a.geometry != geom or b.geometry != geom:
        raise ValueError("labels belong to a different geometry")
    if a.kind != b.kind:
        return False
    if a.kind is TpqKind.FREE:
        return True
    if a.kind is TpqKind.SPLIT:
        return a == b
    if a == b:
        return True
    flipped = TpqModuleLabel(
        geometry=geom,
        kind=TpqKind.SINGLE,
        seq=canonical_form(apply_sigma(geom, b.seq)),
        m=b.m,
        lam=1 / b.lam,
    )
    return a == flipped
