"""Length tables, exact quasi-polynomial fitting, epsilon extraction.

Fitting is exact rational interpolation, never least squares: eventual
quasi-polynomiality is a theorem for Noetherian monomial families, so any
residual means the window is wrong, and the fitter says so instead of
approximating.  The period search ascends and accepts the first exact fit.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product
from math import factorial
from typing import Optional, Sequence

from ._exactla import rank, solve_least_determined
from .cohomology import h0_length
from .errors import (InsufficientDataError, NoFitError, PreconditionError,
                     TheoremViolationError, ZeroIdealError)
from .families import FamilySpec, eval_family, family_to_json

Index = tuple[int, ...]


def _as_index(idx) -> Index:
    return idx if isinstance(idx, tuple) else (int(idx),)


@dataclass
class LengthTable:
    arity: int
    entries: dict[Index, int]
    spec_hash: str
    methods: tuple[str, ...]

    def indices(self) -> list[Index]:
        return sorted(self.entries)

    def value(self, idx) -> int:
        return self.entries[_as_index(idx)]

    def series(self) -> list[tuple[Index, int]]:
        return [(i, self.entries[i]) for i in self.indices()]


def length_table(spec: FamilySpec, indices: Sequence, threads: int = 1) -> LengthTable:
    """H^0 lengths of R/I_n over the given indices (d = 2 uses the staircase)."""
    idxs = [_as_index(i) for i in indices]
    if not idxs:
        raise PreconditionError("empty index range")
    seen = set()
    ordered = [i for i in idxs if not (i in seen or seen.add(i))]

    def entry(idx: Index):
        ideal = eval_family(spec, idx if spec.arity > 1 else idx[0])
        if ideal.is_zero:
            raise ZeroIdealError(f"I_{idx} is the zero ideal")
        count = h0_length(ideal)
        return idx, count.length, count.method

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(entry, ordered))
    else:
        rows = [entry(i) for i in ordered]
    spec_hash = hashlib.sha256(
        json.dumps(family_to_json(spec), sort_keys=True).encode()).hexdigest()[:16]
    return LengthTable(spec.arity, {i: v for i, v, _ in rows}, spec_hash,
                       tuple(sorted({m for _, _, m in rows})))


# ---------------------------------------------------------------------------
# Quasi-polynomials.


def _monomial_basis(arity: int, degree: int) -> list[Index]:
    basis = [e for e in iter_product(range(degree + 1), repeat=arity) if sum(e) <= degree]
    basis.sort(key=lambda e: (sum(e), e))
    return basis


@dataclass
class QuasiPolynomial:
    arity: int
    period: int
    degree: int
    coeffs: dict[tuple[Index, Index], Fraction] = field(default_factory=dict)
    # keys are (residue tuple mod period, exponent tuple)

    def residues(self) -> list[Index]:
        return sorted({res for res, _ in self.coeffs})

    def evaluate(self, idx) -> Fraction:
        i = _as_index(idx)
        res = tuple(n % self.period for n in i)
        total = Fraction(0)
        for e in _monomial_basis(self.arity, self.degree):
            c = self.coeffs.get((res, e), Fraction(0))
            if c:
                term = c
                for n, p in zip(i, e):
                    term *= Fraction(n) ** p
                total += term
        return total

    def top_form(self) -> dict[Index, dict[Index, Fraction]]:
        """Degree-bound coefficients keyed by exponent, then residue."""
        out: dict[Index, dict[Index, Fraction]] = {}
        for (res, e), c in self.coeffs.items():
            if sum(e) == self.degree:
                out.setdefault(e, {})[res] = c
        return out


def fit_quasi_polynomial(table: LengthTable, degree: int, period_max: int = 6,
                         holdout: int = 0, start: Optional[int] = None) -> QuasiPolynomial:
    """Smallest-period exact quasi-polynomial reproducing the table.

    The last ``holdout`` window entries are excluded from interpolation and
    must be reproduced exactly; ``start`` drops indices with any coordinate
    below it before fitting.
    """
    r = table.arity
    window = table.indices()
    if start is not None:
        window = [i for i in window if all(c >= start for c in i)]
    if len(window) <= holdout:
        raise InsufficientDataError("window smaller than the holdout")
    fit_idx = window[: len(window) - holdout] if holdout else window
    hold_idx = window[len(window) - holdout:] if holdout else []
    basis = _monomial_basis(r, degree)
    k = len(basis)

    def row(idx: Index) -> list[Fraction]:
        return [math.prod(Fraction(n) ** p for n, p in zip(idx, e)) for e in basis]

    best: tuple[int, int, Optional[Index]] = (-1, 1 << 60, None)
    tried_any = False
    for a in range(1, period_max + 1):
        classes: dict[Index, list[Index]] = {}
        for i in fit_idx:
            classes.setdefault(tuple(n % a for n in i), []).append(i)
        full: dict[Index, int] = {}
        for i in window:
            res = tuple(n % a for n in i)
            full[res] = full.get(res, 0) + 1
        # every class needs k points to interpolate and at least one more,
        # in-window or held out, to actually verify the claimed fit
        if any(len(pts) < k for pts in classes.values()):
            continue
        if any(full.get(res, 0) < k + 1 for res in classes):
            continue
        if any(rank([row(i) for i in pts]) < k for pts in classes.values()):
            continue
        tried_any = True
        coeffs: dict[tuple[Index, Index], Fraction] = {}
        fails = 0
        first_fail: Optional[Index] = None
        for res, pts in sorted(classes.items()):
            sol, ok = solve_least_determined([row(i) for i in pts],
                                             [table.entries[i] for i in pts])
            if not ok:
                fails += 1
                if first_fail is None:
                    first_fail = pts[0]
                continue
            for e, c in zip(basis, sol):
                coeffs[(res, e)] = c
        candidate = QuasiPolynomial(r, a, degree, coeffs)
        if fails == 0:
            for i in hold_idx:
                res = tuple(n % a for n in i)
                if res not in classes or candidate.evaluate(i) != table.entries[i]:
                    fails += 1
                    if first_fail is None:
                        first_fail = i
        if fails == 0:
            return candidate
        if fails < best[1]:
            best = (a, fails, first_fail)
    if not tried_any:
        raise InsufficientDataError(
            f"no period <= {period_max} has {k} independent points per residue class")
    raise NoFitError(
        f"no exact quasi-polynomial of degree <= {degree} and period <= {period_max}",
        best_period=best[0], first_fail=best[2])


@dataclass
class EpsilonReport:
    degree: int
    mixed: dict[Index, Fraction]
    leading_form: dict[Index, Fraction]
    epsilon: Optional[Fraction] = None   # r = 1 only
    raw_limit: Optional[Fraction] = None  # r = 1 only


def extract_epsilons(quasi: QuasiPolynomial, d: int) -> EpsilonReport:
    """Mixed epsilon multiplicities from the degree-d part of the fit.

    Every total-degree-d coefficient must be residue-independent; the mixed
    value of type (d_1..d_r) is d_1! ... d_r! times that coefficient.
    """
    if quasi.degree < d:
        raise PreconditionError("fit degree bound is below the ambient dimension")
    residues = quasi.residues()
    mixed: dict[Index, Fraction] = {}
    leading: dict[Index, Fraction] = {}
    for e in _monomial_basis(quasi.arity, quasi.degree):
        if sum(e) != d:
            continue
        vals = {quasi.coeffs.get((res, e), Fraction(0)) for res in residues}
        if len(vals) > 1:
            raise TheoremViolationError(
                f"degree-{d} coefficient at {e} varies with the residue class: "
                f"{sorted(vals)}")
        val = vals.pop() if vals else Fraction(0)
        leading[e] = val
        mixed[e] = val * math.prod(factorial(p) for p in e)
    report = EpsilonReport(d, mixed, leading)
    if quasi.arity == 1:
        report.epsilon = mixed[(d,)]
        report.raw_limit = leading[(d,)]
    return report


# ---------------------------------------------------------------------------
# Convergence diagnostics for non-Noetherian families.


@dataclass
class ConvergenceReport:
    normalizer: str
    values: tuple[tuple[int, float], ...]
    window_max: float
    trend: str


def _parse_normalizer(text: str) -> tuple[Fraction, bool]:
    import re

    m = re.fullmatch(r"n(?:\^\(?(\d+(?:/\d+)?)\)?)?(\*ln\(n\))?", text.replace(" ", ""))
    if not m:
        raise PreconditionError(f"cannot parse normalizer {text!r}; use n^p or n^p*ln(n)")
    p = Fraction(m.group(1)) if m.group(1) else Fraction(1)
    return p, bool(m.group(2))


def convergence_report(table: LengthTable, normalizer: str) -> ConvergenceReport:
    """Normalized length sequence with a limsup proxy and trend tag."""
    if table.arity != 1:
        raise PreconditionError("convergence reports are for singly indexed tables")
    power, with_log = _parse_normalizer(normalizer)
    values = []
    for idx, length in table.series():
        n = idx[0]
        if n < 1 or (with_log and n == 1):
            continue
        denom = float(n) ** float(power)
        if with_log:
            denom *= math.log(n)
        values.append((n, length / denom))
    if not values:
        raise PreconditionError("no usable indices for this normalizer")
    tail = [v for _, v in values[-min(5, len(values)):]]
    diffs = [b - a for (_, a), (_, b) in zip(values, values[1:])]
    if all(x <= 0 for x in diffs):
        trend = "decreasing"
    elif all(x >= 0 for x in diffs):
        trend = "increasing"
    else:
        trend = "oscillating"
    return ConvergenceReport(normalizer, tuple(values), max(tail), trend)
