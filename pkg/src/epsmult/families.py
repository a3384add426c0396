"""Declarative graded families {I_n} and their structural checks.

A FamilySpec pairs an ambient dimension with one of the built-in rules
(power, product grid, the two-generated counter family, principal ideals
with irrational slope, hyperbola-staircase families, the recursive limit
family, Noetherian families built from seeds, or an explicit table).
Evaluation is memoized content-addressed on (spec, index), so the recursive
rules pay for each index once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import isqrt
from typing import Optional, Union

from .cohomology import max_socle_degree
from .errors import ParseError, PreconditionError, ZeroIdealError
from .ideal_core import Monomial, MonomialIdeal

Gens = tuple[Monomial, ...]
Index = Union[int, tuple[int, ...]]


def _gens_of(ideal: MonomialIdeal) -> Gens:
    return ideal.gens


@dataclass(frozen=True)
class PowerRule:
    gens: Gens


@dataclass(frozen=True)
class ProductGridRule:
    factors: tuple[Gens, ...]


@dataclass(frozen=True)
class CounterRule:
    """I_n = (X Y^{a_n}, X^2) with a_n a formula tag or an explicit tuple."""

    a: Union[str, tuple[int, ...]]

    def value(self, n: int) -> int:
        if isinstance(self.a, str):
            if self.a == "n^2":
                return n * n
            if self.a == "n^3":
                return n ** 3
            if self.a == "2^n":
                return 2 ** n
            raise PreconditionError(f"unknown counter formula {self.a!r}")
        if n > len(self.a):
            raise PreconditionError(f"counter sequence has no term a_{n}")
        return self.a[n - 1]


@dataclass(frozen=True)
class SqrtPrincipalRule:
    """I_n = (X^{ceil(n sqrt(k))}) for a non-square k, via exact isqrt."""

    k: int

    def __post_init__(self):
        if self.k < 1 or isqrt(self.k) ** 2 == self.k:
            raise PreconditionError("k must be a positive non-square integer")


@dataclass(frozen=True)
class HyperbolaRule:
    variant: str  # lower | upper | sum

    def __post_init__(self):
        if self.variant not in ("lower", "upper", "sum"):
            raise PreconditionError(f"unknown hyperbola variant {self.variant!r}")


@dataclass(frozen=True)
class LimitRecursiveRule:
    pass


@dataclass(frozen=True)
class NoetherianSeedsRule:
    seeds: tuple[tuple[int, Gens], ...]  # sorted (degree, generators)

    @property
    def maxdeg(self) -> int:
        return max(deg for deg, _ in self.seeds)


@dataclass(frozen=True)
class TableRule:
    ideals: tuple[Gens, ...]


Rule = Union[PowerRule, ProductGridRule, CounterRule, SqrtPrincipalRule,
             HyperbolaRule, LimitRecursiveRule, NoetherianSeedsRule, TableRule]


@dataclass(frozen=True)
class FamilySpec:
    d: int
    rule: Rule

    def __post_init__(self):
        if isinstance(self.rule, (CounterRule, HyperbolaRule, LimitRecursiveRule)) and self.d != 2:
            raise PreconditionError("this rule is specific to two variables")
        if isinstance(self.rule, SqrtPrincipalRule) and self.d != 1:
            raise PreconditionError("principal sqrt families live in one variable")
        if isinstance(self.rule, TableRule):
            if not self.rule.ideals:
                raise PreconditionError("table family needs at least I_0")
            first = MonomialIdeal.from_gens(self.d, self.rule.ideals[0])
            if not first.is_unit:
                raise PreconditionError("a graded family needs I_0 = R")

    @property
    def arity(self) -> int:
        return len(self.rule.factors) if isinstance(self.rule, ProductGridRule) else 1


def power_family(ideal: MonomialIdeal) -> FamilySpec:
    return FamilySpec(ideal.d, PowerRule(_gens_of(ideal)))


def product_grid_family(ideals: list[MonomialIdeal]) -> FamilySpec:
    if not ideals:
        raise PreconditionError("product grid needs at least one factor")
    d = ideals[0].d
    for i in ideals:
        if i.d != d:
            raise PreconditionError("product grid factors must share the ambient ring")
    return FamilySpec(d, ProductGridRule(tuple(_gens_of(i) for i in ideals)))


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@lru_cache(maxsize=None)
def _eval(spec: FamilySpec, idx: Index) -> MonomialIdeal:
    d, rule = spec.d, spec.rule
    if isinstance(rule, ProductGridRule):
        parts = [_eval(FamilySpec(d, PowerRule(g)), n) for g, n in zip(rule.factors, idx)]
        return reduce(lambda a, b: a.multiply(b), parts)
    n = idx
    if n == 0:
        return MonomialIdeal.unit(d)
    if isinstance(rule, PowerRule):
        return _eval(spec, n - 1).multiply(MonomialIdeal.from_gens(d, rule.gens))
    if isinstance(rule, CounterRule):
        return MonomialIdeal.from_gens(2, [(1, rule.value(n)), (2, 0)])
    if isinstance(rule, SqrtPrincipalRule):
        return MonomialIdeal.from_gens(1, [(isqrt(n * n * rule.k) + 1,)])
    if isinstance(rule, HyperbolaRule):
        lower = [(a, _ceil_div(n * n, a)) for a in range(1, n + 1)]
        if rule.variant == "lower":
            return MonomialIdeal.from_gens(2, lower)
        upper = [(b, a) for a, b in lower]
        if rule.variant == "upper":
            return MonomialIdeal.from_gens(2, upper)
        return MonomialIdeal.from_gens(2, lower + upper)
    if isinstance(rule, LimitRecursiveRule):
        if n == 1:
            return MonomialIdeal.from_gens(2, [(1, 1)])
        for m in range(2, n):
            _eval(spec, m)
        acc = MonomialIdeal.from_gens(2, [(1, n * n), (n * n, 1)])
        for t in range(1, n // 2 + 1):
            acc = acc.add(_eval(spec, t).multiply(_eval(spec, n - t)))
        return acc
    if isinstance(rule, NoetherianSeedsRule):
        for m in range(1, n):
            _eval(spec, m)
        acc = MonomialIdeal.zero(d)
        for deg, gens in rule.seeds:
            if deg <= n:
                acc = acc.add(MonomialIdeal.from_gens(d, gens).multiply(_eval(spec, n - deg)))
        return acc
    if isinstance(rule, TableRule):
        if n >= len(rule.ideals):
            raise PreconditionError(f"table family has no I_{n}")
        return MonomialIdeal.from_gens(d, rule.ideals[n])
    raise PreconditionError(f"unknown family rule {rule!r}")


def eval_family(spec: FamilySpec, index: Index) -> MonomialIdeal:
    """The ideal I_index of the family, minimalized and memoized."""
    if isinstance(spec.rule, ProductGridRule):
        if not isinstance(index, tuple) or len(index) != spec.arity:
            raise PreconditionError(f"product grid index must be a {spec.arity}-tuple")
        if any(n < 0 for n in index):
            raise PreconditionError("family indices must be non-negative")
        return _eval(spec, tuple(int(n) for n in index))
    if isinstance(index, tuple):
        if len(index) != 1:
            raise PreconditionError("this family is singly indexed")
        index = index[0]
    if index < 0:
        raise PreconditionError("family indices must be non-negative")
    return _eval(spec, int(index))


# ---------------------------------------------------------------------------
# Structural checks.


@dataclass(frozen=True)
class StructureReport:
    passed: bool
    mode: str
    upto: int
    violation: Optional[dict]


def check_structure(spec: FamilySpec, upto: int, mode: str = "graded") -> StructureReport:
    """Verify I_n I_m <= I_{n+m} (and descent, in filtration mode) up to N."""
    if mode not in ("graded", "filtration"):
        raise PreconditionError(f"unknown mode {mode!r}")
    if upto < 2:
        raise PreconditionError("need N >= 2")
    if isinstance(spec.rule, ProductGridRule):
        raise PreconditionError("structure checks apply to singly indexed families")
    for n in range(1, upto):
        for m in range(n, upto - n + 1):
            prod = eval_family(spec, n).multiply(eval_family(spec, m))
            if not prod.is_subset(eval_family(spec, n + m)):
                return StructureReport(False, mode, upto,
                                       {"kind": "product", "pair": (n, m)})
    if mode == "filtration":
        for n in range(upto):
            if not eval_family(spec, n + 1).is_subset(eval_family(spec, n)):
                return StructureReport(False, mode, upto,
                                       {"kind": "chain", "index": n + 1})
    return StructureReport(True, mode, upto, None)


def generation_degree(spec: FamilySpec, a_max: int, window: int) -> Optional[int]:
    """Smallest a with I_{an+r} = I_a^{n-1} I_{a+r} on the test window, if any."""
    if a_max < 1 or window < 2:
        raise PreconditionError("need a_max >= 1 and window >= 2")
    if isinstance(spec.rule, ProductGridRule):
        raise PreconditionError("generation degree applies to singly indexed families")
    for a in range(1, a_max + 1):
        base = eval_family(spec, a)
        ok = True
        for n in range(2, window + 1):
            for r in range(a):
                try:
                    lhs = eval_family(spec, a * n + r)
                except PreconditionError:
                    ok = False
                    break
                if lhs != base.power(n - 1).multiply(eval_family(spec, a + r)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return a
    return None


@dataclass(frozen=True)
class GrowthReport:
    n: int
    max_socle_degree: int
    minimal_c_linear: int
    minimal_c_quadratic: int


def growth_constants(spec: FamilySpec, n: int) -> GrowthReport:
    """Socle degree of I_n and the minimal truncation constants at index n.

    The truncation identity I_n cap m^t = sat(I_n) cap m^t holds exactly when
    t exceeds the maximal socle degree, so the minimal linear (quadratic)
    constant is ceil((max+1)/n) (resp. over n^2).
    """
    if n < 1:
        raise PreconditionError("growth constants need n >= 1")
    ideal = eval_family(spec, n)
    if ideal.is_zero:
        raise ZeroIdealError(f"I_{n} is the zero ideal")
    if ideal.is_unit:
        raise PreconditionError(f"I_{n} is the unit ideal")
    msd = max_socle_degree(ideal)
    return GrowthReport(n, msd, _ceil_div(msd + 1, n), _ceil_div(msd + 1, n * n))


# ---------------------------------------------------------------------------
# JSON interchange for family specs.


def family_from_json(data) -> FamilySpec:
    """Build a FamilySpec from a dict / JSON string (see README for shapes)."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad family spec JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("family spec must be a JSON object")
    rule_obj = data.get("rule", data)
    kind = rule_obj.get("type")
    d = data.get("d")
    try:
        if kind == "power":
            gens = tuple(tuple(int(e) for e in g) for g in rule_obj["ideal"])
            dim = d or (len(gens[0]) if gens else None)
            if dim is None:
                raise ParseError("power rule needs a non-empty ideal or explicit d")
            return FamilySpec(dim, PowerRule(gens))
        if kind == "counter":
            a = rule_obj["a"]
            a = tuple(int(x) for x in a) if isinstance(a, list) else str(a)
            return FamilySpec(2, CounterRule(a))
        if kind == "limit_recursive":
            return FamilySpec(2, LimitRecursiveRule())
        if kind == "hyperbola":
            return FamilySpec(2, HyperbolaRule(str(rule_obj["variant"])))
        if kind == "sqrt":
            return FamilySpec(1, SqrtPrincipalRule(int(rule_obj["k"])))
        if kind == "noetherian":
            seeds = tuple(sorted(
                (int(deg), tuple(tuple(int(e) for e in g) for g in gens))
                for deg, gens in rule_obj["seeds"].items()))
            if not seeds:
                raise ParseError("noetherian rule needs at least one seed")
            dim = d or len(seeds[0][1][0])
            return FamilySpec(dim, NoetherianSeedsRule(seeds))
        if kind == "product_grid":
            factors = tuple(tuple(tuple(int(e) for e in g) for g in gens)
                            for gens in rule_obj["ideals"])
            dim = d or len(factors[0][0])
            return FamilySpec(dim, ProductGridRule(factors))
        if kind == "table":
            ideals = tuple(tuple(tuple(int(e) for e in g) for g in i)
                           for i in rule_obj["ideals"])
            dim = d
            if dim is None:
                widths = {len(g) for i in ideals for g in i}
                if len(widths) != 1:
                    raise ParseError("table rule needs an explicit d")
                dim = widths.pop()
            return FamilySpec(dim, TableRule(ideals))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed family spec: {exc}") from exc
    raise ParseError(f"unknown family rule type {kind!r}")


def family_to_json(spec: FamilySpec) -> dict:
    rule = spec.rule
    if isinstance(rule, PowerRule):
        body = {"type": "power", "ideal": [list(g) for g in rule.gens]}
    elif isinstance(rule, ProductGridRule):
        body = {"type": "product_grid",
                "ideals": [[list(g) for g in gens] for gens in rule.factors]}
    elif isinstance(rule, CounterRule):
        body = {"type": "counter", "a": rule.a if isinstance(rule.a, str) else list(rule.a)}
    elif isinstance(rule, LimitRecursiveRule):
        body = {"type": "limit_recursive"}
    elif isinstance(rule, HyperbolaRule):
        body = {"type": "hyperbola", "variant": rule.variant}
    elif isinstance(rule, SqrtPrincipalRule):
        body = {"type": "sqrt", "k": rule.k}
    elif isinstance(rule, NoetherianSeedsRule):
        body = {"type": "noetherian",
                "seeds": {str(deg): [list(g) for g in gens] for deg, gens in rule.seeds}}
    elif isinstance(rule, TableRule):
        body = {"type": "table", "ideals": [[list(g) for g in i] for i in rule.ideals]}
    else:
        raise PreconditionError(f"cannot serialize rule {rule!r}")
    return {"d": spec.d, "rule": body}
