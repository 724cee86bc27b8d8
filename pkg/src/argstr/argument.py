"""Inference-tree arguments over a weighted theory.

An argument is either a premise leaf or a rule applied to a set of
antecedent arguments, one per antecedent literal of the rule. All derived
multisets (rules and premises used, with multiplicity) are computed once
at construction.
"""

from __future__ import annotations

import hashlib
from itertools import product
from typing import Iterable, Iterator

from .model import EMPTY, Literal, Multiset, Rule, Theory


class ArgumentError(ValueError):
    code = "argument-error"


class NotInKnowledgeBase(ArgumentError):
    code = "literal-not-in-kb"


class UnknownRule(ArgumentError):
    code = "unknown-rule"


class AntecedentMismatch(ArgumentError):
    code = "antecedent-mismatch"


class InconsistentSubarguments(ArgumentError):
    code = "inconsistent-subarguments"


class DuplicateConclusion(ArgumentError):
    code = "duplicate-nonstrict-conclusion"


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "undefined"


UNDEFINED = _Undefined()


class Argument:
    """Immutable argument node. Build with :func:`make_premise` / :func:`make_inference`.

    Equality is structural (same premise, or same rule over equal antecedents)
    and ignores which theory object the argument was built against.
    """

    __slots__ = (
        "theory", "conclusion", "rule", "antecedents", "axiom", "weight",
        "sub", "def_rules", "str_rules", "ord_prem", "axioms",
        "rule_count", "signature", "tree", "_key", "_hash",
    )

    def __init__(self, **kw) -> None:
        for name, value in kw.items():
            object.__setattr__(self, name, value)
        object.__setattr__(self, "_hash", hash(self._key))

    def __setattr__(self, name, value):
        raise AttributeError("Argument is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Argument):
            return NotImplemented
        return self is other or (self._hash == other._hash and self._key == other._key)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Argument({self.tree} ⊢ {self.conclusion})"

    def __reduce__(self):
        # rebuilt through the checked constructors so hashes are recomputed
        if self.rule is None:
            return (make_premise, (self.theory, self.conclusion))
        return (make_inference, (self.theory, self.rule, tuple(self.antecedents)))

    # accessors -----------------------------------------------------------

    @property
    def is_premise(self) -> bool:
        return self.rule is None

    @property
    def top_rule(self):
        return UNDEFINED if self.rule is None else self.rule

    @property
    def def_basis(self) -> Multiset:
        return self.ord_prem + self.def_rules

    @property
    def str_basis(self) -> Multiset:
        return self.axioms + self.str_rules

    @property
    def basis(self) -> Multiset:
        return self.def_basis + self.str_basis

    @property
    def rules(self) -> Multiset:
        return self.str_rules + self.def_rules

    @property
    def prem(self) -> Multiset:
        return self.axioms + self.ord_prem

    @property
    def is_strict(self) -> bool:
        return not self.def_rules and not self.ord_prem

    def sorted_antecedents(self) -> tuple:
        """Antecedents in canonical (signature, tree) order."""
        return tuple(sorted(self.antecedents, key=sort_key))


def sort_key(a: Argument) -> tuple:
    return (a.signature, a.tree)


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def make_premise(theory: Theory, literal: Literal) -> Argument:
    kb = theory.kb
    if literal in kb.axioms:
        axiom = True
    elif literal in kb.ordinary:
        axiom = False
    else:
        raise NotInKnowledgeBase(f"{literal} is not in the knowledge base")
    weight = theory.weight(literal)
    single = Multiset((literal,))
    return Argument(
        theory=theory,
        conclusion=literal,
        rule=None,
        antecedents=frozenset(),
        axiom=axiom,
        weight=weight,
        sub=None,
        def_rules=EMPTY,
        str_rules=EMPTY,
        ord_prem=EMPTY if axiom else single,
        axioms=single if axiom else EMPTY,
        rule_count=0,
        signature=_digest(f"L{weight!r}"),
        tree=theory.label(literal),
        _key=("P", literal, axiom),
    )


def make_inference(theory: Theory, rule: Rule, antecedents: Iterable[Argument]) -> Argument:
    if theory.rules_by_id.get(rule.id) != rule:
        raise UnknownRule(f"rule {rule.id!r} does not belong to the theory")
    ants = frozenset(antecedents)
    concs = [a.conclusion for a in ants]
    if len(set(concs)) != len(concs) or set(concs) != rule.antecedents:
        want = ", ".join(str(x) for x in sorted(rule.antecedents)) or "nothing"
        got = ", ".join(sorted(str(x) for x in concs)) or "nothing"
        raise AntecedentMismatch(f"rule {rule.id} needs {want}; got {got}")

    sub = set()
    def_rules = str_rules = ord_prem = axioms = EMPTY
    for a in ants:
        sub |= subarguments(a)
        def_rules = def_rules + a.def_rules
        str_rules = str_rules + a.str_rules
        ord_prem = ord_prem + a.ord_prem
        axioms = axioms + a.axioms
    top = Multiset((rule,))
    if rule.is_strict:
        str_rules = str_rules + top
    else:
        def_rules = def_rules + top

    weight = theory.weight(rule)
    ordered = sorted(ants, key=sort_key)
    signature = _digest(f"N{weight!r}(" + ",".join(a.signature for a in ordered) + ")")
    tree = f"{rule.id}(" + ", ".join(sorted(a.tree for a in ants)) + ")"
    arg = Argument(
        theory=theory,
        conclusion=rule.consequent,
        rule=rule,
        antecedents=ants,
        axiom=False,
        weight=weight,
        sub=None,
        def_rules=def_rules,
        str_rules=str_rules,
        ord_prem=ord_prem,
        axioms=axioms,
        rule_count=1 + sum(a.rule_count for a in ants),
        signature=signature,
        tree=tree,
        _key=("R", rule, ants),
    )
    sub.add(arg)

    if not theory.consistent({s.conclusion for s in sub}):
        raise InconsistentSubarguments(f"conclusions of the subarguments of {tree} are inconsistent")
    nonstrict = [s.conclusion for s in sub if not s.is_strict]
    if len(nonstrict) != len(set(nonstrict)):
        raise DuplicateConclusion(f"{tree} contains two distinct non-strict subarguments with one conclusion")
    object.__setattr__(arg, "sub", frozenset(sub))
    return arg


def subarguments(a: Argument) -> frozenset:
    return frozenset((a,)) if a.sub is None else a.sub


def rebuild(arg: Argument, theory: Theory) -> Argument:
    """Reconstruct ``arg`` against ``theory``, re-running every well-formedness check."""
    if arg.is_premise:
        return make_premise(theory, arg.conclusion)
    rule = theory.rules_by_id.get(arg.rule.id, arg.rule)
    return make_inference(theory, rule, [rebuild(a, theory) for a in arg.antecedents])


# --------------------------------------------------------------------------
# accessors as free functions


def conc(a: Argument) -> Literal:
    return a.conclusion


def top_rule(a: Argument):
    return a.top_rule


def antecedents(a: Argument) -> frozenset:
    return a.antecedents


def sub(a: Argument) -> frozenset:
    return subarguments(a)


def basis(a: Argument) -> Multiset:
    return a.basis


def is_strict(a: Argument) -> bool:
    return a.is_strict


def is_isomorphic(a: Argument, b: Argument) -> bool:
    return a.signature == b.signature


def walk(a: Argument) -> Iterator[Argument]:
    """Pre-order walk over the tree (shared subtrees visited per occurrence)."""
    yield a
    for child in a.sorted_antecedents():
        yield from walk(child)


# --------------------------------------------------------------------------
# enumeration


def enumerate_arguments(theory: Theory, budget: int) -> list[Argument]:
    """Every well-formed argument with at most ``budget`` rule applications.

    Built bottom-up, semi-naively: each round only combines antecedent
    tuples that use at least one argument from the previous round.
    Deduplicated structurally and sorted by (signature, tree).
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    found: dict[Argument, Argument] = {}
    by_conc: dict[Literal, list[Argument]] = {}

    def add(a: Argument) -> bool:
        if a in found:
            return False
        found[a] = a
        by_conc.setdefault(a.conclusion, []).append(a)
        return True

    frontier = [make_premise(theory, p) for p in sorted(theory.kb.axioms | theory.kb.ordinary)]
    for a in frontier:
        add(a)
    first = True
    while frontier:
        fresh = set(frontier)
        new = []
        for rule in theory.rules:
            ants = sorted(rule.antecedents)
            if not ants:
                if not first or budget < 1:
                    continue
                combos: Iterable[tuple] = [()]
            else:
                pools = [by_conc.get(x, ()) for x in ants]
                if not all(pools):
                    continue
                combos = product(*pools)
            for combo in combos:
                if ants and not any(a in fresh for a in combo):
                    continue
                if 1 + sum(a.rule_count for a in combo) > budget:
                    continue
                try:
                    arg = make_inference(theory, rule, combo)
                except ArgumentError:
                    continue
                if arg not in found:
                    new.append(arg)
        first = False
        frontier = [a for a in new if add(a)]
    return sorted(found, key=sort_key)
