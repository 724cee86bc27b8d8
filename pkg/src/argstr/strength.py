"""Intrinsic strength of arguments.

Two direct methods (simple product and weakest link over the argument's
basis), their recursive forms, and the generic (f, g) aggregation-method
evaluator together with a small library of t-norm based f and g functions.
"""

from __future__ import annotations

import itertools
import math
import random
import statistics
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Sequence, Union

from .argument import Argument

# --------------------------------------------------------------------------
# direct methods


def strength_sp(arg: Argument) -> float:
    weight = arg.theory.weight
    return math.prod(weight(b) for b in arg.basis)


def strength_wl(arg: Argument) -> float:
    weight = arg.theory.weight
    return min(weight(b) for b in arg.basis)


def strength_sp_recursive(arg: Argument, memo: dict | None = None) -> float:
    memo = {} if memo is None else memo
    if arg in memo:
        return memo[arg]
    if arg.is_premise:
        value = arg.weight
    else:
        value = arg.weight * math.prod(strength_sp_recursive(a, memo) for a in arg.sorted_antecedents())
    memo[arg] = value
    return value


def strength_wl_recursive(arg: Argument, memo: dict | None = None) -> float:
    memo = {} if memo is None else memo
    if arg in memo:
        return memo[arg]
    if arg.is_premise:
        value = arg.weight
    else:
        value = min([arg.weight] + [strength_wl_recursive(a, memo) for a in arg.antecedents])
    memo[arg] = value
    return value


# --------------------------------------------------------------------------
# f / g building blocks


def t_product(x: float, y: float) -> float:
    return x * y


def t_minimum(x: float, y: float) -> float:
    return min(x, y)


def t_hamacher(x: float, y: float) -> float:
    if x == 0 and y == 0:
        return 0.0
    return x * y / (x + y - x * y)


def t_lukasiewicz(x: float, y: float) -> float:
    return max(0.0, x + y - 1.0)


def g_product(xs: Sequence[float]) -> float:
    return math.prod(xs)


def g_minimum(xs: Sequence[float]) -> float:
    return min(xs) if xs else 1.0


def _folded(tnorm: Callable[[float, float], float]) -> Callable[[Sequence[float]], float]:
    def g(xs: Sequence[float]) -> float:
        if not xs:
            return 1.0
        if len(xs) == 1:
            return xs[0]
        return reduce(tnorm, xs)

    g.__name__ = f"g_{tnorm.__name__[2:]}"
    return g


g_hamacher = _folded(t_hamacher)
g_lukasiewicz = _folded(t_lukasiewicz)


def g_mean(xs: Sequence[float]) -> float:
    # empty input mapped to 1 so only the genuinely mean-specific clauses fail
    return math.fsum(xs) / len(xs) if xs else 1.0


def g_median(xs: Sequence[float]) -> float:
    return statistics.median(xs) if xs else 1.0


@dataclass(frozen=True)
class CombineFn:
    """Binary f: [0,1]^2 -> [0,1].

    ``certified`` marks functions known analytically to meet the
    well-behavedness clauses for f (all four built-ins are t-norms).
    """

    name: str
    fn: Callable[[float, float], float] = field(compare=False)
    certified: bool = False

    def __call__(self, x: float, y: float) -> float:
        return self.fn(x, y)


@dataclass(frozen=True)
class AggregateFn:
    """Symmetric variadic g over [0,1]; called with a sequence."""

    name: str
    fn: Callable[[Sequence[float]], float] = field(compare=False)
    certified: bool = False

    def __call__(self, xs: Sequence[float]) -> float:
        return self.fn(xs)


@dataclass(frozen=True)
class AggregationMethod:
    f: CombineFn
    g: AggregateFn
    name: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            object.__setattr__(self, "name", f"{self.f.name}-{self.g.name}")

    @property
    def certified(self) -> bool:
        return self.f.certified and self.g.certified


@dataclass(frozen=True)
class DirectMethod:
    name: str
    fn: Callable[[Argument], float] = field(compare=False)


SP = DirectMethod("sp", strength_sp)
WL = DirectMethod("wl", strength_wl)

StrengthMethod = Union[DirectMethod, AggregationMethod]


def eval_aggregation(method: AggregationMethod, arg: Argument, memo: dict | None = None) -> float:
    """Evaluate ``method`` bottom-up; shared subarguments are computed once.

    Antecedent strengths reach g in canonical signature order, which is
    harmless as long as g is symmetric.
    """
    memo = {} if memo is None else memo
    if arg in memo:
        return memo[arg]
    stack = [arg]
    f, g = method.f, method.g
    while stack:
        node = stack[-1]
        if node in memo:
            stack.pop()
            continue
        pending = [a for a in node.antecedents if a not in memo]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        aggregated = g(tuple(memo[a] for a in node.sorted_antecedents()))
        memo[node] = f(node.weight, aggregated)
    return memo[arg]


def strength(method: StrengthMethod, arg: Argument, memo: dict | None = None) -> float:
    if isinstance(method, DirectMethod):
        if memo is None:
            return method.fn(arg)
        if arg not in memo:
            memo[arg] = method.fn(arg)
        return memo[arg]
    return eval_aggregation(method, arg, memo)


# --------------------------------------------------------------------------
# registry

COMBINE: dict[str, CombineFn] = {}
AGGREGATE: dict[str, AggregateFn] = {}


def register_combine(name: str, fn: Callable[[float, float], float], certified: bool = False) -> CombineFn:
    if "-" in name:
        raise ValueError("function names may not contain '-'")
    COMBINE[name] = CombineFn(name, fn, certified)
    return COMBINE[name]


def register_aggregate(
    name: str,
    fn: Callable[[Sequence[float]], float],
    certified: bool = False,
    samples: int = 200,
    seed: int = 0,
) -> AggregateFn:
    """Register g after a sampled symmetry check (raises ValueError if asymmetric)."""
    if "-" in name:
        raise ValueError("function names may not contain '-'")
    rng = random.Random(seed)
    for _ in range(samples):
        xs = [rng.choice((0.0, 1.0, rng.random())) for _ in range(rng.randint(2, 4))]
        ref = fn(tuple(xs))
        for perm in itertools.permutations(xs):
            if abs(fn(perm) - ref) > 1e-12:
                raise ValueError(f"aggregate {name!r} is not symmetric: g{tuple(xs)} != g{perm}")
    AGGREGATE[name] = AggregateFn(name, fn, certified)
    return AGGREGATE[name]


for _name, _fn in (("prod", t_product), ("min", t_minimum), ("hamacher", t_hamacher), ("lukasiewicz", t_lukasiewicz)):
    register_combine(_name, _fn, certified=True)
for _name, _fn in (("prod", g_product), ("min", g_minimum), ("hamacher", g_hamacher), ("lukasiewicz", g_lukasiewicz)):
    register_aggregate(_name, _fn, certified=True)
register_aggregate("mean", g_mean)
register_aggregate("median", g_median)

# named methods beyond plain "<f>-<g>" pairs
ALIASES = {
    "hamacher": "hamacher-hamacher",
    "lukasiewicz": "lukasiewicz-lukasiewicz",
}
NAMED_METHODS = ("sp", "wl", "prod-prod", "min-min", "prod-min", "hamacher", "lukasiewicz")


def get_method(name: str) -> StrengthMethod:
    if name == "sp":
        return SP
    if name == "wl":
        return WL
    pair = ALIASES.get(name, name)
    f_name, sep, g_name = pair.partition("-")
    if not sep or f_name not in COMBINE or g_name not in AGGREGATE:
        raise KeyError(f"unknown strength method {name!r}")
    return AggregationMethod(COMBINE[f_name], AGGREGATE[g_name], name)


def aggregation_methods() -> list[AggregationMethod]:
    """Every named aggregation method plus each registered non-certified g paired with prod."""
    methods = [get_method(n) for n in NAMED_METHODS if n not in ("sp", "wl")]
    methods += [get_method(f"prod-{g}") for g, fn in AGGREGATE.items() if not fn.certified]
    return methods


# --------------------------------------------------------------------------
# well-behavedness

CLAUSES = {
    1: "f non-decreasing in both variables when neither is 0",
    2: "f(0,x) = f(x,0) = 0",
    3: "f(x,1) = f(1,x) = x",
    4: "g() = 1",
    5: "g(x) = x",
    6: "g(x1..xn, 0) = 0",
    7: "g(x1..xn) = g(x1..xn, 1)",
    8: "g(x1..xn, y) <= g(x1..xn, z) if y <= z",
}


@dataclass
class ClauseResult:
    clause: int
    ok: bool
    checked: int
    witness: dict | None = None


@dataclass
class WellBehavedVerdict:
    method: str
    status: str  # "certified" | "falsified" | "no-violation-found"
    clauses: list[ClauseResult]
    samples: int = 0

    @property
    def falsified(self) -> list[ClauseResult]:
        return [c for c in self.clauses if not c.ok]

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "status": self.status,
            "samples": self.samples,
            "clauses": [
                {"clause": c.clause, "text": CLAUSES[c.clause], "ok": c.ok, "checked": c.checked, "witness": c.witness}
                for c in self.clauses
            ],
        }


def default_grid(steps: int = 10) -> list[float]:
    return [i / steps for i in range(steps + 1)]


def check_well_behaved(
    method: AggregationMethod,
    grid: Sequence[float] | None = None,
    max_prefix: int = 2,
    tol: float = 1e-12,
    force_grid: bool = False,
) -> WellBehavedVerdict:
    """Certify from analytic metadata, or search a grid for clause violations.

    Grid search can only ever falsify. g clauses are exercised on every
    prefix tuple of length 0..``max_prefix`` drawn from the grid.
    """
    if method.certified and not force_grid:
        return WellBehavedVerdict(method.name, "certified", [ClauseResult(c, True, 0) for c in CLAUSES])

    grid = list(default_grid() if grid is None else grid)
    f, g = method.f, method.g
    nonzero = [x for x in grid if x != 0]
    prefixes = [p for n in range(max_prefix + 1) for p in itertools.product(grid, repeat=n)]
    results: dict[int, ClauseResult] = {c: ClauseResult(c, True, 0) for c in CLAUSES}

    def record(clause: int, ok: bool, **witness) -> None:
        res = results[clause]
        res.checked += 1
        if not ok and res.ok:
            res.ok = False
            res.witness = witness

    for x, x2, y in itertools.product(nonzero, repeat=3):
        if x <= x2:
            record(1, f(x, y) <= f(x2, y) + tol, x=x, x2=x2, y=y, lo=f(x, y), hi=f(x2, y), variable=1)
            record(1, f(y, x) <= f(y, x2) + tol, x=x, x2=x2, y=y, lo=f(y, x), hi=f(y, x2), variable=2)
    for x in grid:
        record(2, f(0.0, x) == 0 and f(x, 0.0) == 0, x=x, left=f(0.0, x), right=f(x, 0.0))
        record(3, abs(f(x, 1.0) - x) <= tol and abs(f(1.0, x) - x) <= tol, x=x, left=f(x, 1.0), right=f(1.0, x))
        record(5, abs(g((x,)) - x) <= tol, x=x, value=g((x,)))
    record(4, abs(g(()) - 1.0) <= tol, value=g(()))
    for p in prefixes:
        with_zero = g(p + (0.0,))
        record(6, with_zero == 0, xs=list(p), value=with_zero)
        plain, with_one = g(p), g(p + (1.0,))
        record(7, abs(plain - with_one) <= tol, xs=list(p), without_one=plain, with_one=with_one)
        for y, z in itertools.combinations_with_replacement(grid, 2):
            lo, hi = g(p + (y,)), g(p + (z,))
            record(8, lo <= hi + tol, xs=list(p), y=y, z=z, lo=lo, hi=hi)

    clauses = [results[c] for c in CLAUSES]
    samples = sum(c.checked for c in clauses)
    status = "falsified" if any(not c.ok for c in clauses) else "no-violation-found"
    return WellBehavedVerdict(method.name, status, clauses, samples)
