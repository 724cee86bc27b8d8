"""Weighted argumentation graphs: grounded extension and the weighted h-categorizer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .argument import enumerate_arguments, sort_key
from .model import Theory
from .strength import StrengthMethod, get_method, strength


@dataclass(frozen=True)
class WeightedGraph:
    """Arguments with base weights and weighted attack edges (``from``, ``to``, ``weight``)."""

    nodes: Mapping[str, float]
    attacks: tuple = ()

    def __post_init__(self) -> None:
        nodes = dict(self.nodes)
        if not nodes:
            raise ValueError("a graph needs at least one argument")
        for n, w in nodes.items():
            if not 0 <= w <= 1:
                raise ValueError(f"base weight of {n!r} outside [0, 1]")
        attacks = []
        for edge in self.attacks:
            src, dst, *rest = edge
            w = float(rest[0]) if rest else 1.0
            if src not in nodes or dst not in nodes:
                raise ValueError(f"attack {src!r} -> {dst!r} references an unknown argument")
            if not 0 <= w <= 1:
                raise ValueError(f"attack weight {w} outside [0, 1]")
            attacks.append((src, dst, w))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "attacks", tuple(attacks))

    def attackers(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {n: [] for n in self.nodes}
        for src, dst, _ in self.attacks:
            out[dst].append(src)
        return out


class NonUnitAttackWeight(ValueError):
    code = "nonunit-attack-weight"


class NoConvergence(RuntimeError):
    code = "no-convergence"

    def __init__(self, iterations: int, residual: float) -> None:
        super().__init__(f"no convergence after {iterations} iterations (residual {residual:.3g})")
        self.iterations = iterations
        self.residual = residual


# --------------------------------------------------------------------------
# grounded semantics


def grounded_extension(graph: WeightedGraph) -> frozenset:
    """Least fixed point of the defense function, reached by iterating from the empty set."""
    attackers = graph.attackers()
    current: frozenset = frozenset()
    while True:
        beaten = {x for x in graph.nodes if any(a in current for a in attackers[x])}
        nxt = frozenset(x for x in graph.nodes if all(a in beaten for a in attackers[x]))
        if nxt == current:
            return current
        current = nxt


def grounded_labelling(graph: WeightedGraph) -> dict[str, str]:
    """``in`` for members of the grounded extension, ``out`` for what they attack, ``undec`` otherwise."""
    ext = grounded_extension(graph)
    attackers = graph.attackers()
    return {
        n: "in" if n in ext else "out" if any(a in ext for a in attackers[n]) else "undec"
        for n in graph.nodes
    }


def is_conflict_free(graph: WeightedGraph, members: Iterable[str]) -> bool:
    s = set(members)
    return not any(a in s and b in s for a, b, _ in graph.attacks)


def defends(graph: WeightedGraph, members: Iterable[str], x: str) -> bool:
    s = set(members)
    attackers = graph.attackers()
    return all(any(c in s for c in attackers[b]) for b in attackers[x])


def is_admissible(graph: WeightedGraph, members: Iterable[str]) -> bool:
    s = set(members)
    return is_conflict_free(graph, s) and all(defends(graph, s, x) for x in s)


# --------------------------------------------------------------------------
# weighted h-categorizer


@dataclass
class DegreeAssignment:
    degrees: dict[str, float]
    iterations: int
    residual: float
    #: residual after each iteration
    history: list[float] = field(default_factory=list, repr=False)


def h_categorizer_degrees(graph: WeightedGraph, eps: float = 1e-12, max_iter: int = 10_000) -> DegreeAssignment:
    """Jacobi iteration of deg(x) = w(x) / (1 + sum of attacker degrees) from deg = w.

    Stops when the largest change between successive iterates drops below ``eps``.
    """
    for src, dst, w in graph.attacks:
        if w != 1:
            raise NonUnitAttackWeight(f"attack {src} -> {dst} has weight {w}; only unit attack weights are supported")
    attackers = graph.attackers()
    sigma = graph.nodes
    deg = dict(sigma)
    history: list[float] = []
    residual = float("inf")
    for it in range(1, max_iter + 1):
        nxt = {x: sigma[x] / (1.0 + sum(deg[b] for b in attackers[x])) for x in sigma}
        residual = max(abs(nxt[x] - deg[x]) for x in sigma)
        history.append(residual)
        deg = nxt
        if residual < eps:
            return DegreeAssignment(deg, it, residual, history)
    raise NoConvergence(max_iter, residual)


# --------------------------------------------------------------------------
# from a theory to a graph


class UnknownArgumentId(KeyError):
    code = "unknown-argument-id"

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown argument id"


def argument_ids(args: Sequence) -> list[tuple[str, str]]:
    """(canonical id, alias) for arguments already in canonical order.

    The canonical id is the first 12 hex digits of the signature, with an
    ordinal suffix when two arguments share that prefix.
    """
    seen: dict[str, int] = {}
    out = []
    for i, a in enumerate(args, start=1):
        short = a.signature[:12]
        n = seen.get(short, 0)
        seen[short] = n + 1
        out.append((short if n == 0 else f"{short}-{n}", f"A{i}"))
    return out


def seed_graph_from_theory(
    theory: Theory,
    attacks: Iterable[tuple] = (),
    method: StrengthMethod | str = "sp",
    budget: int = 8,
) -> WeightedGraph:
    """A WAG over the enumerated arguments whose base weights are their intrinsic strengths.

    Attacks are ``(from, to)`` or ``(from, to, weight)`` and may name arguments
    by canonical id or by alias. Nodes are keyed by canonical id.
    """
    if isinstance(method, str):
        method = get_method(method)
    args = sorted(enumerate_arguments(theory, budget), key=sort_key)
    ids = argument_ids(args)
    lookup = {}
    for (cid, alias), a in zip(ids, args):
        lookup[cid] = cid
        lookup[alias] = cid
    memo: dict = {}
    nodes = {cid: strength(method, a, memo) for (cid, _), a in zip(ids, args)}
    edges = []
    for att in attacks:
        src, dst, *rest = att
        for end in (src, dst):
            if end not in lookup:
                raise UnknownArgumentId(f"attack names unknown argument {end!r}")
        edges.append((lookup[src], lookup[dst], float(rest[0]) if rest else 1.0))
    return WeightedGraph(nodes, tuple(edges))
