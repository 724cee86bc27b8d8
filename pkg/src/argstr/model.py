"""Logical language, rules, knowledge bases and weighted argumentation theories.

Everything here is immutable once built. Weights are keyed by rule id for
inference rules and by literal for premises.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Any, Callable, Generic, Hashable, Iterable, Iterator, Mapping, TypeVar, Union

T = TypeVar("T", bound=Hashable)
A = TypeVar("A")


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    negated: bool = False

    def __post_init__(self) -> None:
        if not self.atom:
            raise ValueError("literal atom must be a non-empty identifier")

    @classmethod
    def parse(cls, text: str) -> Literal:
        text = text.strip()
        if text.startswith("~"):
            return cls(text[1:].strip(), True)
        return cls(text)

    def __str__(self) -> str:
        return ("~" if self.negated else "") + self.atom

    def __repr__(self) -> str:
        return f"Literal({str(self)!r})"


def complement(lit: Literal) -> Literal:
    return Literal(lit.atom, not lit.negated)


def lit(text: str) -> Literal:
    """Shorthand used throughout the tests and examples: ``lit("~p")``."""
    return Literal.parse(text)


STRICT = "strict"
DEFEASIBLE = "defeasible"


@dataclass(frozen=True)
class Rule:
    id: str
    antecedents: frozenset
    consequent: Literal
    kind: str = DEFEASIBLE

    def __post_init__(self) -> None:
        if self.kind not in (STRICT, DEFEASIBLE):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if not isinstance(self.antecedents, frozenset):
            object.__setattr__(self, "antecedents", frozenset(self.antecedents))

    @property
    def is_strict(self) -> bool:
        return self.kind == STRICT

    def __str__(self) -> str:
        arrow = "->" if self.is_strict else "=>"
        ants = ", ".join(str(a) for a in sorted(self.antecedents))
        return f"{self.id}: {ants} {arrow} {self.consequent}".replace(":  ", ": ")

    def __repr__(self) -> str:
        return f"Rule({str(self)!r})"


def strict(rule_id: str, antecedents: Iterable[str | Literal], consequent: str | Literal) -> Rule:
    return Rule(rule_id, frozenset(_as_lit(a) for a in antecedents), _as_lit(consequent), STRICT)


def defeasible(rule_id: str, antecedents: Iterable[str | Literal], consequent: str | Literal) -> Rule:
    return Rule(rule_id, frozenset(_as_lit(a) for a in antecedents), _as_lit(consequent), DEFEASIBLE)


def _as_lit(x: str | Literal) -> Literal:
    return x if isinstance(x, Literal) else Literal.parse(x)


# --------------------------------------------------------------------------
# multisets


class Multiset(Generic[T]):
    """Immutable bag backed by a :class:`collections.Counter`.

    ``+`` is the multiplicity sum and ``|`` the multiplicity-max union.
    Iteration yields every element once per occurrence.
    """

    __slots__ = ("_counts", "_hash")

    def __init__(self, items: Iterable[T] | Mapping[T, int] = ()) -> None:
        if isinstance(items, Mapping):
            counts = Counter()
            for key, n in items.items():
                if n != int(n) or n < 0:
                    raise ValueError(f"illegal multiplicity {n!r} for {key!r}")
                if n:
                    counts[key] = int(n)
        else:
            counts = Counter(items)
        self._counts = counts
        self._hash = None

    @classmethod
    def _wrap(cls, counts: Counter) -> Multiset:
        new = cls.__new__(cls)
        new._counts = counts
        new._hash = None
        return new

    def count(self, item: T) -> int:
        return self._counts.get(item, 0)

    __getitem__ = count

    def support(self) -> frozenset:
        return frozenset(self._counts)

    def sum(self, other: Multiset[T]) -> Multiset[T]:
        return Multiset._wrap(self._counts + other._counts)

    def union(self, other: Multiset[T]) -> Multiset[T]:
        return Multiset._wrap(self._counts | other._counts)

    __add__ = sum
    __or__ = union

    def fold(self, fn: Callable[[A, T], A], initial: A) -> A:
        acc = initial
        for item in self:
            acc = fn(acc, item)
        return acc

    def items(self) -> Iterator[tuple[T, int]]:
        return iter(self._counts.items())

    def __iter__(self) -> Iterator[T]:
        return self._counts.elements()

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __contains__(self, item: object) -> bool:
        return item in self._counts

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __repr__(self) -> str:
        parts = []
        for item, n in sorted(self._counts.items(), key=lambda kv: str(kv[0])):
            label = item.id if isinstance(item, Rule) else str(item)
            parts.append(label if n == 1 else f"{label}^{n}")
        return "[" + ", ".join(parts) + "]"


def multiset_sum(a: Multiset, b: Multiset) -> Multiset:
    return a + b


def multiset_union(a: Multiset, b: Multiset) -> Multiset:
    return a | b


def multiset_support(a: Multiset) -> frozenset:
    return a.support()


def multiset_fold(fn: Callable[[A, Any], A], initial: A, a: Multiset) -> A:
    return a.fold(fn, initial)


EMPTY: Multiset = Multiset()


# --------------------------------------------------------------------------
# closure and consistency


def strict_closure(literals: Iterable[Literal], rules: Iterable[Rule]) -> frozenset:
    """Least superset of ``literals`` closed under the strict rules in ``rules``."""
    closed = set(literals)
    pending = [r for r in rules if r.is_strict]
    changed = True
    while changed:
        changed = False
        rest = []
        for rule in pending:
            if rule.antecedents <= closed:
                if rule.consequent not in closed:
                    closed.add(rule.consequent)
                changed = True
            else:
                rest.append(rule)
        pending = rest
    return frozenset(closed)


def is_directly_consistent(literals: Iterable[Literal]) -> bool:
    seen = set(literals)
    return not any(complement(x) in seen for x in seen)


def is_indirectly_consistent(literals: Iterable[Literal], rules: Iterable[Rule]) -> bool:
    return is_directly_consistent(strict_closure(literals, rules))


# --------------------------------------------------------------------------
# knowledge base and theory


@dataclass(frozen=True)
class KnowledgeBase:
    axioms: frozenset = frozenset()
    ordinary: frozenset = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "axioms", frozenset(self.axioms))
        object.__setattr__(self, "ordinary", frozenset(self.ordinary))

    def __contains__(self, item: object) -> bool:
        return item in self.axioms or item in self.ordinary


WeightKey = Union[str, Literal]


@dataclass(frozen=True, eq=False)
class Theory:
    """A weighted argumentation theory.

    ``weights`` maps rule ids and premise literals to reals in [0, 1].
    ``labels`` optionally names premises (used when printing theories back
    to the text format); unnamed premises get generated names.
    """

    rules: tuple
    kb: KnowledgeBase
    weights: Mapping[WeightKey, float]
    labels: Mapping[Literal, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "weights", MappingProxyType(dict(self.weights)))
        object.__setattr__(self, "labels", MappingProxyType(dict(self.labels)))

    def __reduce__(self):
        return (Theory, (self.rules, self.kb, dict(self.weights), dict(self.labels)))

    @classmethod
    def build(
        cls,
        rules: Iterable[Rule] = (),
        axioms: Iterable[str | Literal] = (),
        ordinary: Mapping[str | Literal, float] | None = None,
        rule_weights: Mapping[str, float] | None = None,
        labels: Mapping[str | Literal, str] | None = None,
    ) -> Theory:
        """Convenience constructor: strict rules and axioms get weight 1."""
        rules = tuple(rules)
        ordinary = {_as_lit(k): float(v) for k, v in (ordinary or {}).items()}
        axioms = frozenset(_as_lit(a) for a in axioms)
        weights: dict[WeightKey, float] = {a: 1.0 for a in axioms}
        weights.update(ordinary)
        rule_weights = dict(rule_weights or {})
        for r in rules:
            if r.id in rule_weights:
                weights[r.id] = float(rule_weights.pop(r.id))
            elif r.is_strict:
                weights[r.id] = 1.0
        # keep unknown ids so validation can report them as dangling
        weights.update(rule_weights)
        return cls(
            rules,
            KnowledgeBase(axioms, frozenset(ordinary)),
            weights,
            {_as_lit(k): v for k, v in (labels or {}).items()},
        )

    @cached_property
    def rules_by_id(self) -> Mapping[str, Rule]:
        return MappingProxyType({r.id: r for r in self.rules})

    @cached_property
    def strict_rules(self) -> tuple:
        return tuple(r for r in self.rules if r.is_strict)

    @cached_property
    def defeasible_rules(self) -> tuple:
        return tuple(r for r in self.rules if not r.is_strict)

    @cached_property
    def _closure_cache(self) -> dict:
        return {}

    def closure(self, literals: Iterable[Literal]) -> frozenset:
        key = frozenset(literals)
        cache = self._closure_cache
        if key not in cache:
            cache[key] = strict_closure(key, self.strict_rules)
        return cache[key]

    def consistent(self, literals: Iterable[Literal]) -> bool:
        return is_directly_consistent(self.closure(literals))

    def weight(self, item: Rule | Literal) -> float:
        if isinstance(item, Rule):
            return self.weights[item.id]
        return self.weights[item]

    def label(self, premise: Literal) -> str:
        if premise in self.labels:
            return self.labels[premise]
        prefix = "ax" if premise in self.kb.axioms else "pr"
        return f"{prefix}_{'n' if premise.negated else ''}{premise.atom}"

    def extend(self, rules: Iterable[Rule], weights: Mapping[str, float]) -> Theory:
        """A copy with extra rules (and their weights) appended."""
        merged = dict(self.weights)
        merged.update(weights)
        return Theory(self.rules + tuple(rules), self.kb, merged, self.labels)

    def language(self) -> frozenset:
        lits = set(self.kb.axioms) | set(self.kb.ordinary)
        for r in self.rules:
            lits |= r.antecedents
            lits.add(r.consequent)
        return frozenset(lits | {complement(x) for x in lits})


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    subject: str = ""

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def validate_theory(theory: Theory) -> list[Violation]:
    """Report every broken theory invariant; an empty list means valid."""
    out: list[Violation] = []
    seen_ids: set[str] = set()
    for r in theory.rules:
        if r.id in seen_ids:
            out.append(Violation("duplicate-rule-id", f"rule id {r.id!r} used more than once", r.id))
        seen_ids.add(r.id)

    for r in theory.rules:
        if r.id not in theory.weights:
            out.append(Violation("missing-weight", f"rule {r.id!r} has no weight", r.id))
            continue
        w = theory.weights[r.id]
        if r.is_strict and w != 1:
            out.append(Violation("strict-weight", f"strict rule weight ≠ 1 ({r.id!r} has {w!r})", r.id))
        elif not r.is_strict and not 0 <= w < 1:
            out.append(Violation("defeasible-weight", f"defeasible rule {r.id!r} weight {w!r} not in [0,1)", r.id))

    kb = theory.kb
    for a in sorted(kb.axioms):
        if a not in theory.weights:
            out.append(Violation("missing-weight", f"axiom {a} has no weight", str(a)))
        elif theory.weights[a] != 1:
            out.append(Violation("axiom-weight", f"axiom weight ≠ 1 ({a} has {theory.weights[a]!r})", str(a)))
    for p in sorted(kb.ordinary):
        if p not in theory.weights:
            out.append(Violation("missing-weight", f"ordinary premise {p} has no weight", str(p)))
        elif not 0 <= theory.weights[p] < 1:
            out.append(Violation("premise-weight", f"ordinary premise {p} weight {theory.weights[p]!r} not in [0,1)", str(p)))

    for both in sorted(kb.axioms & kb.ordinary):
        out.append(Violation("kb-overlap", f"{both} is both an axiom and an ordinary premise", str(both)))
    if not is_indirectly_consistent(kb.axioms, theory.rules):
        out.append(Violation("axioms-inconsistent", "axioms indirectly inconsistent"))

    for key in theory.weights:
        if isinstance(key, Literal):
            if key not in kb:
                out.append(Violation("dangling-weight", f"weight for {key} which is not a premise", str(key)))
        elif key not in seen_ids:
            out.append(Violation("dangling-weight", f"weight for unknown rule id {key!r}", key))
    return out
