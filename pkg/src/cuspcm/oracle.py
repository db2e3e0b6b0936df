"""Independent linear-algebra measurement of the cohomology dimensions.

The bundle G(d, m, lam) is glued from m copies of O(d_i) on the components
of the cycle.  Write F for the 2*m*rs dimensional space with one basis
vector eps'_{ik} and one eps''_{ik} per walk position i and copy k: the
values a section may take at the two nodes of position i.  Two subspaces
of F are written down directly from the glueing data:

  * G, spanned by the vectors e_{ik} that encode the cyclic glueing with
    the lam-twist and a Jordan block across the copies, and
  * im f, generated by the node values realized by sections of O(d_i): the
    full pair for d_i > 0, the diagonal vector for d_i = 0, nothing for
    d_i < 0.

The rank of the comparison map between sections upstairs and the glueing
obstruction is rk h = dim(im f + G) - dim G, and the cohomology follows:
h^0 = m * sum((d_i + 1)^+) - rk h and h^1 = m*rs - rk h + m * sum((d_i + 1)^-).
Everything is exact rational arithmetic; no closed-form count is consulted,
so this module serves as an oracle for the formulas in `cohomology`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .cohomology import BundleTriple, CohomReport, cohom_dims, delta
from .sequences import enumerate_canonical

__all__ = [
    "PRIME",
    "DOUBLE_PRIME",
    "coordinate_index",
    "OracleSpace",
    "build_presentation",
    "rank_of_h",
    "oracle_dims",
    "VerifyReport",
    "verify_formula",
    "GridReport",
    "verify_grid",
]

PRIME = 0
DOUBLE_PRIME = 1


def coordinate_index(i: int, k: int, side: int, m: int) -> int:
    """Index of eps_{ik} in the (i, k, side)-lexicographic coordinate order.

    i and k are 1-based; side is PRIME or DOUBLE_PRIME.  The order is fixed
    so elimination pivots, and with them every intermediate matrix, are
    reproducible run to run.
    """
    return ((i - 1) * m + (k - 1)) * 2 + side


@dataclass(frozen=True)
class OracleSpace:
    """Presentation data for one triple.

    Vectors are sparse maps from coordinate index (see `coordinate_index`)
    to a nonzero rational coefficient.
    """

    dim_f: int
    g_basis: tuple[dict[int, Fraction], ...]
    imf_basis: tuple[dict[int, Fraction], ...]


def build_presentation(triple: BundleTriple) -> OracleSpace:
    """Write down G and the generators of im f for the triple.

    The glueing vectors are, for k = 1..m,
      e_{ik}  = eps'_{ik} + eps''_{i+1,k}                     for i < rs,
      e_{rs,k} = eps'_{rs,k} + lam*eps''_{1,k} + eps''_{1,k-1} for k > 1,
      e_{rs,1} = eps'_{rs,1} + lam*eps''_{1,1}.
    """
    d = triple.seq.entries
    rs = len(d)
    m = triple.m
    lam = triple.lam
    one = Fraction(1)

    g: list[dict[int, Fraction]] = []
    for i in range(1, rs + 1):
        for k in range(1, m + 1):
            if i != rs:
                vec = {
                    coordinate_index(i, k, PRIME, m): one,
                    coordinate_index(i + 1, k, DOUBLE_PRIME, m): one,
                }
            elif k != 1:
                vec = {
                    coordinate_index(rs, k, PRIME, m): one,
                    coordinate_index(1, k, DOUBLE_PRIME, m): lam,
                    coordinate_index(1, k - 1, DOUBLE_PRIME, m): one,
                }
            else:
                vec = {
                    coordinate_index(rs, 1, PRIME, m): one,
                    coordinate_index(1, 1, DOUBLE_PRIME, m): lam,
                }
            g.append(vec)

    imf: list[dict[int, Fraction]] = []
    for i in range(1, rs + 1):
        for k in range(1, m + 1):
            if d[i - 1] > 0:
                imf.append({coordinate_index(i, k, PRIME, m): one})
                imf.append({coordinate_index(i, k, DOUBLE_PRIME, m): one})
            elif d[i - 1] == 0:
                imf.append(
                    {
                        coordinate_index(i, k, PRIME, m): one,
                        coordinate_index(i, k, DOUBLE_PRIME, m): one,
                    }
                )

    return OracleSpace(dim_f=2 * m * rs, g_basis=tuple(g), imf_basis=tuple(imf))


def _integer_rows(vectors: Iterable[dict[int, Fraction]]) -> list[dict[int, int]]:
    # Clearing denominators rescales each vector; spans are unchanged.
    rows = []
    for vec in vectors:
        den = 1
        for v in vec.values():
            den = den * v.denominator // gcd(den, v.denominator)
        rows.append({c: int(v * den) for c, v in vec.items()})
    return rows


def _eliminate(rows: Iterable[dict[int, int]], pivots: dict[int, dict[int, int]]) -> int:
    """Feed rows into a growing sparse echelon basis; count the independent ones.

    Rows are integer vectors standing for rational vectors up to positive
    scale.  One reduction step replaces row by b*row - a*pivot where a and b
    are the leading coefficients, which is the exact rational elimination
    step with denominators cleared; each new pivot row is normalized by the
    gcd of its entries.  Pivot columns are always the least coordinate of
    the reduced row, so the elimination order is deterministic.
    """
    added = 0
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                pivots[c] = {cc: v // g for cc, v in row.items()}
                added += 1
                break
            a = row.pop(c)
            b = piv[c]
            if b != 1:
                for cc in row:
                    row[cc] *= b
            for cc, v in piv.items():
                if cc == c:
                    continue
                nv = row.get(cc, 0) - a * v
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
    return added


def rank_of_h(triple: BundleTriple) -> int:
    """rk h = dim(im f + G) - dim G by exact Gaussian elimination.

    The glueing vectors go in first and are verified to be independent
    (they are, for every nonzero lam), so the measured quotient rank is
    exactly the number of im f generators that remain independent.
    """
    space = build_presentation(triple)
    pivots: dict[int, dict[int, int]] = {}
    dim_g = _eliminate(_integer_rows(space.g_basis), pivots)
    if dim_g != len(space.g_basis):
        raise ArithmeticError("glueing vectors came out dependent; corrupt presentation")
    return _eliminate(_integer_rows(space.imf_basis), pivots)


def oracle_dims(triple: BundleTriple) -> CohomReport:
    """h^0 and h^1 measured from the presentation alone.

    delta comes straight from its definition; theta is recovered from the
    measured rank via rk h = m*theta - delta, so a formula/oracle comparison
    of reports checks that identity as well.
    """
    d = triple.seq.entries
    rs = len(d)
    m = triple.m
    rk = rank_of_h(triple)
    de = delta(triple.seq, triple.lam)
    th, rem = divmod(rk + de, m)
    if rem:
        raise ArithmeticError(
            f"measured rank {rk} of {triple} is not of the form m*theta - delta"
        )
    pos = sum(v + 1 for v in d if v + 1 > 0)
    neg = sum(-(v + 1) for v in d if v + 1 < 0)
    return CohomReport(theta=th, delta=de, h0=m * pos - rk, h1=m * rs - rk + m * neg)


@dataclass(frozen=True)
class VerifyReport:
    """Formula and oracle reports side by side for one triple."""

    formula: CohomReport
    oracle: CohomReport
    agree: bool


def verify_formula(triple: BundleTriple) -> VerifyReport:
    """Compare the closed form against the measurement; agree means both
    h^0 and h^1 match exactly."""
    f = cohom_dims(triple)
    o = oracle_dims(triple)
    return VerifyReport(formula=f, oracle=o, agree=f.h0 == o.h0 and f.h1 == o.h1)


@dataclass(frozen=True)
class GridReport:
    """Aggregate result of a formula-vs-oracle sweep.

    Each failure list holds one human-readable descriptor per offending
    case, in sweep order; all empty means the sweep is clean.
    """

    cases: int
    formula_mismatches: tuple[str, ...]
    euler_failures: tuple[str, ...]
    rank_identity_failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not (
            self.formula_mismatches
            or self.euler_failures
            or self.rank_identity_failures
        )


def verify_grid(
    s_values: Sequence[int] = (1, 2, 3),
    rs_max: int = 6,
    lo: int = -3,
    hi: int = 3,
    m_values: Sequence[int] = (1, 2, 3),
    lambdas: Sequence[Fraction | int | str] = (1, -1, 2, -2, "1/2"),
) -> GridReport:
    """Sweep every canonical aperiodic sequence in the box against the oracle.

    For each s in s_values, each canonical aperiodic sequence with length up
    to rs_max and entries in [lo, hi], each multiplicity and each lam, three
    exact checks run: the closed-form h^0/h^1 equal the measured ones, both
    sides satisfy h^0 - h^1 = m * sum(d), and the measured rank satisfies
    rk h = m*theta(d) - delta(d, lam).  Zero tolerance throughout.
    """
    lams = tuple(Fraction(l) for l in lambdas)
    cases = 0
    mismatches: list[str] = []
    euler: list[str] = []
    rank_id: list[str] = []
    for s in s_values:
        if s > rs_max:
            continue
        for seq in enumerate_canonical(s, rs_max // s, lo, hi):
            rs = len(seq.entries)
            dsum = sum(seq.entries)
            pos = sum(v + 1 for v in seq.entries if v + 1 > 0)
            neg = sum(-(v + 1) for v in seq.entries if v + 1 < 0)
            for m in m_values:
                for lam in lams:
                    triple = BundleTriple(seq, m, lam)
                    cases += 1
                    tag = f"s={s} d={seq} m={m} lam={lam}"
                    formula = cohom_dims(triple)
                    rk = rank_of_h(triple)
                    oracle_h0 = m * pos - rk
                    oracle_h1 = m * rs - rk + m * neg
                    if formula.h0 != oracle_h0 or formula.h1 != oracle_h1:
                        mismatches.append(
                            f"{tag}: formula ({formula.h0},{formula.h1}) "
                            f"vs oracle ({oracle_h0},{oracle_h1})"
                        )
                    if (
                        formula.h0 - formula.h1 != m * dsum
                        or oracle_h0 - oracle_h1 != m * dsum
                    ):
                        euler.append(tag)
                    if rk != m * formula.theta - formula.delta:
                        rank_id.append(f"{tag}: rk={rk}")
    return GridReport(
        cases=cases,
        formula_mismatches=tuple(mismatches),
        euler_failures=tuple(euler),
        rank_identity_failures=tuple(rank_id),
    )
