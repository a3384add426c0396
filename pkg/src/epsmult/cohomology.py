"""Lengths of degree-zero local cohomology for monomial quotients.

The length of H^0 against the graded maximal ideal equals the number of
lattice points in sat(I) \\ I.  Three routes are implemented:

* box enumeration over the proven box prod_i [0, c_i) with c_i the
  generator-wise exponent maximum (the default oracle-grade method),
* a d = 2 staircase walk that reads the count off the minimal generators
  in O(#generators),
* the simplicial route counting exponents whose complex of inverted-variable
  subsets is exactly {empty face}, detected through reduced homology.

The box bound is sound: a point of sat(I) \\ I with a_i >= c_i would stay in
sat(I) \\ I after adding e_i indefinitely, contradicting finiteness.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from ._exactla import rank
from .errors import PreconditionError, ZeroIdealError
from .ideal_core import Monomial, MonomialIdeal

METHOD_BOX = "box-enumeration"
METHOD_STAIRCASE = "staircase-2d"
METHOD_TAKAYAMA = "takayama"


@dataclass(frozen=True)
class SimplicialComplex:
    """Faces over the ground set {1..d}; no faces at all means the void complex,
    a lone empty face the irrelevant complex."""

    ground: int
    faces: frozenset[frozenset[int]]

    def __post_init__(self):
        for f in self.faces:
            if not f <= frozenset(range(1, self.ground + 1)):
                raise PreconditionError(f"face {sorted(f)} outside ground set 1..{self.ground}")
            for v in f:
                if f - {v} not in self.faces:
                    raise PreconditionError("face set is not downward closed")

    @property
    def is_void(self) -> bool:
        return not self.faces

    @classmethod
    def void(cls, ground: int) -> "SimplicialComplex":
        return cls(ground, frozenset())

    @classmethod
    def irrelevant(cls, ground: int) -> "SimplicialComplex":
        return cls(ground, frozenset([frozenset()]))


@dataclass(frozen=True)
class H0Count:
    length: int
    method: str
    witnesses: Optional[tuple[Monomial, ...]] = None

    def __post_init__(self):
        if self.witnesses is not None and len(self.witnesses) != self.length:
            raise PreconditionError("witness count disagrees with length")


# ---------------------------------------------------------------------------
# d = 2 staircase walk.


def _staircase_blocks(ideal: MonomialIdeal):
    """Rectangular blocks tiling sat(I) \\ I for d = 2.

    Generators sorted lex have strictly increasing x and strictly decreasing
    y; the saturation is the principal ideal at the corner (a_1, b_g).
    """
    gens = ideal.gens
    corner = (gens[0][0], gens[-1][1])
    blocks = []
    for i in range(len(gens) - 1):
        blocks.append(((gens[i][0], gens[i + 1][0]), (corner[1], gens[i][1])))
    return corner, blocks


def _staircase_length(ideal: MonomialIdeal) -> int:
    _, blocks = _staircase_blocks(ideal)
    return sum((x1 - x0) * (y1 - y0) for (x0, x1), (y0, y1) in blocks)


def staircase_max_degree(ideal: MonomialIdeal) -> int:
    """Largest total degree in sat(I) \\ I for d = 2 (0 when empty)."""
    _, blocks = _staircase_blocks(ideal)
    degs = [(x1 - 1) + (y1 - 1) for (x0, x1), (y0, y1) in blocks]
    return max(degs, default=0)


def _staircase_witnesses(ideal: MonomialIdeal) -> tuple[Monomial, ...]:
    _, blocks = _staircase_blocks(ideal)
    pts = []
    for (x0, x1), (y0, y1) in blocks:
        pts.extend((x, y) for x in range(x0, x1) for y in range(y0, y1))
    return tuple(sorted(pts))


# ---------------------------------------------------------------------------
# Box enumeration.


def _python_box_scan(box, sat, outer, inner, collect: bool):
    count = 0
    maxdeg = -1
    pts = []
    for p in itertools.product(*(range(c) for c in box)):
        if not any(all(g[i] <= p[i] for i in range(len(p))) for g in sat.gens):
            continue
        if outer is not None and not outer.contains(p):
            continue
        if inner.contains(p):
            continue
        count += 1
        maxdeg = max(maxdeg, sum(p))
        if collect:
            pts.append(p)
    return count, maxdeg, tuple(pts) if collect else None


def _box_count(inner: MonomialIdeal, sat: MonomialIdeal, outer: Optional[MonomialIdeal],
               box: Sequence[int], witnesses: bool, threads: int = 1):
    """Count points of *box* in sat (and outer, when given) but not inner."""
    if any(c <= 0 for c in box):
        return 0, -1, (() if witnesses else None)
    small = all(c < _kernels.INT64_SAFE for c in box)
    if witnesses or not small or not inner.fits_int64() or not sat.fits_int64() \
            or (outer is not None and not outer.fits_int64()):
        return _python_box_scan(box, sat, outer if outer is not None else MonomialIdeal.unit(inner.d),
                                inner, witnesses)
    sat_a = sat.as_array()
    outer_a = outer.as_array() if outer is not None else _kernels.as_array([(0,) * inner.d])
    inner_a = inner.as_array()
    box_a = np.asarray(box, dtype=np.int64)
    if threads > 1 and box[0] >= threads:
        bounds = [round(i * box[0] / threads) for i in range(threads + 1)]
        jobs = [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if lo < hi]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda rng: _kernels.count_box(box_a, sat_a, outer_a, inner_a, rng[0], rng[1]),
                jobs))
        count = sum(c for c, _ in parts)
        maxdeg = max((m for _, m in parts), default=-1)
        return count, maxdeg, None
    count, maxdeg = _kernels.count_box(box_a, sat_a, outer_a, inner_a)
    return count, maxdeg, None


def h0_length(ideal: MonomialIdeal, method: str = "auto", witnesses: bool = False,
              threads: int = 1) -> H0Count:
    """Length of H^0 of R/I, i.e. the number of monomials in sat(I) \\ I."""
    if ideal.is_zero:
        raise ZeroIdealError("H^0 length of R/0 is undefined here")
    if method == "auto":
        method = METHOD_STAIRCASE if ideal.d == 2 else METHOD_BOX
    if ideal.is_unit:
        return H0Count(0, method, () if witnesses else None)
    if method == METHOD_STAIRCASE:
        if ideal.d != 2:
            raise PreconditionError("staircase method requires two variables")
        return H0Count(_staircase_length(ideal), METHOD_STAIRCASE,
                       _staircase_witnesses(ideal) if witnesses else None)
    if method == METHOD_TAKAYAMA:
        return h0_length_takayama(ideal, witnesses=witnesses)
    if method != METHOD_BOX:
        raise PreconditionError(f"unknown h0 method {method!r}")
    sat = ideal.saturate()
    if sat == ideal:
        return H0Count(0, METHOD_BOX, () if witnesses else None)
    count, _, pts = _box_count(ideal, sat, None, ideal.max_exponents(), witnesses, threads)
    return H0Count(count, METHOD_BOX, pts)


def h0_of_quotient(outer: MonomialIdeal, inner: MonomialIdeal, witnesses: bool = False,
                   threads: int = 1) -> H0Count:
    """Length of the maximal-ideal torsion of J/J', for monomial J' inside J.

    Counts the monomials of sat(J') that lie in J but not in J'; this is the
    box count with the box taken from J' (its socle bound also bounds the
    intersection with J, since J is itself an ideal).
    """
    if inner.is_zero:
        raise ZeroIdealError("quotient by the zero ideal is not supported")
    outer._same_ring(inner)
    if not inner.is_subset(outer):
        raise PreconditionError("inner ideal is not contained in the outer ideal")
    sat = inner.saturate()
    count, _, pts = _box_count(inner, sat, outer, inner.max_exponents(), witnesses, threads)
    return H0Count(count, METHOD_BOX, pts)


def max_socle_degree(ideal: MonomialIdeal) -> int:
    """Largest total degree over sat(I) \\ I, 0 when the socle is empty."""
    if ideal.is_zero:
        raise ZeroIdealError("socle of R/0 is undefined here")
    if ideal.is_unit:
        return 0
    if ideal.d == 2:
        return staircase_max_degree(ideal)
    sat = ideal.saturate()
    if sat == ideal:
        return 0
    _, maxdeg, _ = _box_count(ideal, sat, None, ideal.max_exponents(), False)
    return max(maxdeg, 0)


# ---------------------------------------------------------------------------
# The simplicial route.


def delta_complex(ideal: MonomialIdeal, point: Sequence[int]) -> SimplicialComplex:
    """Subsets F of {1..d} with x^point outside the localization at F."""
    if ideal.is_zero:
        raise ZeroIdealError("complex of the zero ideal is undefined")
    d = ideal.d
    faces = set()
    for size in range(d + 1):
        for combo in itertools.combinations(range(1, d + 1), size):
            f = frozenset(combo)
            if size and any(f - {v} not in faces for v in f):
                continue  # localizations only grow, so supersets cannot re-enter
            if not ideal.localize(f).contains(point):
                faces.add(f)
    return SimplicialComplex(d, frozenset(faces))


def _boundary_rank(faces_lower: list[tuple[int, ...]], faces_upper: list[tuple[int, ...]]) -> int:
    if not faces_lower or not faces_upper:
        return 0
    index = {f: i for i, f in enumerate(faces_lower)}
    rows = [[0] * len(faces_upper) for _ in faces_lower]
    for j, f in enumerate(faces_upper):
        for i, v in enumerate(f):
            sub = f[:i] + f[i + 1:]
            rows[index[sub]][j] = (-1) ** i
    return rank(rows)


def reduced_betti(complex_: SimplicialComplex, q: int) -> int:
    """Rank over Q of the q-th reduced simplicial homology group."""
    if complex_.is_void:
        return 0
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for f in complex_.faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
    for fs in by_dim.values():
        fs.sort()
    dim_q = len(by_dim.get(q, []))
    if dim_q == 0:
        return 0
    rank_down = _boundary_rank(by_dim.get(q - 1, []), by_dim.get(q, [])) if q >= 0 else 0
    rank_up = _boundary_rank(by_dim.get(q, []), by_dim.get(q + 1, []))
    return dim_q - rank_down - rank_up


def h0_length_takayama(ideal: MonomialIdeal, witnesses: bool = False) -> H0Count:
    """H^0 length by summing homology ranks of the inverted-variable complexes.

    In homological degree -1 the only contributing complexes are those equal
    to {empty face}, and their witnesses coincide with sat(I) \\ I; the scan
    deliberately avoids the saturation machinery so the two routes stay
    independent.
    """
    if ideal.is_zero:
        raise ZeroIdealError("H^0 length of R/0 is undefined here")
    d = ideal.d
    if ideal.is_unit:
        return H0Count(0, METHOD_TAKAYAMA, () if witnesses else None)
    localizations = {}
    for size in range(d + 1):
        for combo in itertools.combinations(range(1, d + 1), size):
            localizations[frozenset(combo)] = ideal.localize(frozenset(combo))
    box = ideal.max_exponents()
    count = 0
    pts = []
    for p in itertools.product(*(range(c) for c in box)):
        faces = frozenset(f for f, loc in localizations.items() if not loc.contains(p))
        complex_ = SimplicialComplex(d, faces)
        if reduced_betti(complex_, -1) == 1:
            count += 1
            if witnesses:
                pts.append(p)
    return H0Count(count, METHOD_TAKAYAMA, tuple(pts) if witnesses else None)
