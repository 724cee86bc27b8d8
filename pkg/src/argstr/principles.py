"""The thirteen intrinsic-strength principles as executable checks.

``check_principle`` decides one instance. ``probe`` / ``sweep`` search random
theories for counterexamples; they can falsify a principle but never prove
one, so results the literature has proved are kept in ``theorem_table`` and
the random search doubles as a sanity sweep against it.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterable, Sequence

from .argument import Argument, ArgumentError, enumerate_arguments, is_isomorphic, make_inference, make_premise, rebuild
from .model import DEFEASIBLE, STRICT, KnowledgeBase, Literal, Rule, Theory, is_indirectly_consistent
from .strength import AggregationMethod, StrengthMethod, get_method, strength

EQ_TOL = 1e-9
MARGIN = 1e-12


class Principle(Enum):
    ANONYMITY = "anonymity"
    PREMISING = "premising"
    STRICT_ARGUMENT = "strict-argument"
    RESILIENCE = "resilience"
    ARGUMENT_DEATH = "argument-death"
    ANTECEDENT_MAXIMALITY = "antecedent-maximality"
    ANTECEDENT_NEUTRALITY = "antecedent-neutrality"
    ANTECEDENT_WEAKENING = "antecedent-weakening"
    INFERENTIAL_WEAKENING = "inferential-weakening"
    INFERENCE_WEIGHT_SENSITIVITY = "inference-weight-sensitivity"
    PROPORTIONALITY = "proportionality"
    WEAKEST_LINK = "weakest-link"
    WEAKEST_LINK_LIMITING = "weakest-link-limiting"

    @property
    def arity(self) -> int:
        return _ARITY.get(self, 1)

    @property
    def title(self) -> str:
        return self.value.replace("-", " ").title()

    @classmethod
    def lookup(cls, name: str) -> Principle:
        key = name.strip().lower().replace("_", "-").replace(" ", "-")
        for p in cls:
            if key in (p.value, p.name.lower().replace("_", "-")):
                return p
        raise KeyError(f"unknown principle {name!r}")


_ARITY = {
    Principle.ANONYMITY: 2,
    Principle.ANTECEDENT_NEUTRALITY: 3,
    Principle.ANTECEDENT_WEAKENING: 3,
    Principle.INFERENCE_WEIGHT_SENSITIVITY: 2,
    Principle.PROPORTIONALITY: 2,
}

#: principles every well-behaved aggregation method satisfies
GUARANTEED = (
    Principle.ANONYMITY,
    Principle.PREMISING,
    Principle.STRICT_ARGUMENT,
    Principle.ARGUMENT_DEATH,
    Principle.ANTECEDENT_MAXIMALITY,
    Principle.ANTECEDENT_NEUTRALITY,
    Principle.WEAKEST_LINK_LIMITING,
)


class InstanceShapeError(ValueError):
    pass


# --------------------------------------------------------------------------
# predicates: each returns (antecedent holds, consequent holds)

Str = Callable[[Argument], float]


def _eq(x: float, y: float) -> bool:
    return abs(x - y) <= EQ_TOL


def _min_basis(a: Argument) -> float:
    return min(a.theory.weight(b) for b in a.basis)


def _extends(a: Argument, a1: Argument, a2: Argument) -> bool:
    """Same top-rule weight and Ant(a1) = Ant(a) plus the new antecedent a2."""
    return (
        not a.is_premise
        and not a1.is_premise
        and a.weight == a1.weight
        and a2 not in a.antecedents
        and a1.antecedents == a.antecedents | {a2}
    )


def injection_exists(left: Sequence[Argument], right: Sequence[Argument], S: Str) -> bool:
    """Is there an injective map left -> right sending each x to a strictly weaker image?"""
    left, right = list(left), list(right)
    if len(left) > len(right):
        return False
    edges = [[j for j, y in enumerate(right) if S(x) > S(y) + MARGIN] for x in left]
    owner: dict[int, int] = {}

    def augment(i: int, seen: set) -> bool:
        for j in edges[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in owner or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(left)))


def _anonymity(S, a, b):
    return is_isomorphic(a, b), _eq(S(a), S(b))


def _premising(S, a):
    return a.is_premise, _eq(S(a), a.weight)


def _strict_argument(S, a):
    return not a.def_basis, _eq(S(a), 1.0)


def _resilience(S, a):
    w = a.theory.weight
    return all(w(b) > 0 for b in a.basis.support()), S(a) > 0


def _argument_death(S, a):
    w = a.theory.weight
    return any(w(b) == 0 for b in a.basis.support()), _eq(S(a), 0.0)


def _antecedent_maximality(S, a):
    applies = not a.is_premise and all(_eq(S(x), 1.0) for x in a.antecedents)
    return applies, _eq(S(a), a.weight)


def _antecedent_neutrality(S, a, a1, a2):
    return _extends(a, a1, a2) and _eq(S(a2), 1.0), _eq(S(a), S(a1))


def _antecedent_weakening(S, a, a1, a2):
    applies = _extends(a, a1, a2) and S(a2) < 1.0 - MARGIN and S(a) > MARGIN
    return applies, S(a) > S(a1)


def _inferential_weakening(S, a):
    applies = (
        not a.is_premise
        and not a.rule.is_strict
        and bool(a.antecedents)
        and all(S(x) > MARGIN for x in a.antecedents)
    )
    if not applies:
        return False, True
    return True, S(a) < min(S(x) for x in a.antecedents)


def _inference_weight_sensitivity(S, a, a1):
    applies = (
        not a.is_premise
        and not a1.is_premise
        and a.antecedents == a1.antecedents
        and a.weight < a1.weight
        and all(S(x) > MARGIN for x in a.antecedents)
    )
    return applies, S(a) < S(a1)


def _proportionality(S, a, a1):
    applies = (
        not a.is_premise
        and not a1.is_premise
        and a.weight == a1.weight
        and injection_exists(a.sorted_antecedents(), a1.sorted_antecedents(), S)
    )
    return applies, S(a) > S(a1)


def _weakest_link(S, a):
    return True, _eq(S(a), _min_basis(a))


def _weakest_link_limiting(S, a):
    return True, S(a) <= _min_basis(a) + EQ_TOL


PREDICATES = {
    Principle.ANONYMITY: _anonymity,
    Principle.PREMISING: _premising,
    Principle.STRICT_ARGUMENT: _strict_argument,
    Principle.RESILIENCE: _resilience,
    Principle.ARGUMENT_DEATH: _argument_death,
    Principle.ANTECEDENT_MAXIMALITY: _antecedent_maximality,
    Principle.ANTECEDENT_NEUTRALITY: _antecedent_neutrality,
    Principle.ANTECEDENT_WEAKENING: _antecedent_weakening,
    Principle.INFERENTIAL_WEAKENING: _inferential_weakening,
    Principle.INFERENCE_WEIGHT_SENSITIVITY: _inference_weight_sensitivity,
    Principle.PROPORTIONALITY: _proportionality,
    Principle.WEAKEST_LINK: _weakest_link,
    Principle.WEAKEST_LINK_LIMITING: _weakest_link_limiting,
}


def _strength_fn(method: StrengthMethod | str, memo: dict | None = None) -> Str:
    if isinstance(method, str):
        method = get_method(method)
    memo = {} if memo is None else memo
    return lambda a: strength(method, a, memo)


def evaluate(principle: Principle, method: StrengthMethod | str, args: Sequence[Argument], memo: dict | None = None) -> tuple[bool, bool]:
    if len(args) != principle.arity:
        raise InstanceShapeError(f"{principle.value} takes {principle.arity} argument(s), got {len(args)}")
    return PREDICATES[principle](_strength_fn(method, memo), *args)


def check_principle(principle: Principle, method: StrengthMethod | str, args: Sequence[Argument]) -> bool:
    """True iff the principle's implication holds on this instance (vacuous instances hold)."""
    applies, holds = evaluate(principle, method, args)
    return holds or not applies


# --------------------------------------------------------------------------
# random theories


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    atoms: int = 4
    strict_rules: int = 2
    defeasible_rules: int = 4
    axioms: int = 2
    ordinary: int = 3
    #: relative weights of antecedent counts 0, 1, 2, ...
    arity: tuple = (0.0, 0.5, 0.35, 0.15)
    zero_mass: float = 0.05
    budget: int = 3


def draw_weight(rng: random.Random, zero_mass: float) -> float:
    """A defeasible weight: exactly 0 with probability ``zero_mass``, else uniform on [0, 1)."""
    return 0.0 if rng.random() < zero_mass else rng.random()


def generate_theory(cfg: GeneratorConfig) -> Theory:
    rng = random.Random(cfg.seed)
    atoms = [f"p{i}" for i in range(cfg.atoms)]
    arities = list(range(len(cfg.arity)))

    def random_rule(rule_id: str, kind: str) -> Rule:
        k = min(rng.choices(arities, weights=cfg.arity)[0], len(atoms) - 1)
        chosen = rng.sample(atoms, k + 1)
        ants = [Literal(x, rng.random() < 0.5) for x in chosen[:k]]
        head = Literal(chosen[k], rng.random() < 0.5)
        return Rule(rule_id, frozenset(ants), head, kind)

    rules = [random_rule(f"s{i}", STRICT) for i in range(cfg.strict_rules)]
    rules += [random_rule(f"d{i}", DEFEASIBLE) for i in range(cfg.defeasible_rules)]

    literals = [Literal(x, neg) for x in atoms for neg in (False, True)]
    rng.shuffle(literals)
    axioms: list[Literal] = []
    for x in literals:
        if len(axioms) == cfg.axioms:
            break
        if is_indirectly_consistent(axioms + [x], rules):
            axioms.append(x)
    rest = [x for x in literals if x not in axioms]
    ordinary = rest[: cfg.ordinary]

    weights: dict = {a: 1.0 for a in axioms}
    for p in ordinary:
        weights[p] = draw_weight(rng, cfg.zero_mass)
    for r in rules:
        weights[r.id] = 1.0 if r.is_strict else draw_weight(rng, cfg.zero_mass)
    labels = {a: f"a{i}" for i, a in enumerate(axioms)}
    labels.update({p: f"o{i}" for i, p in enumerate(ordinary)})
    return Theory(tuple(rules), KnowledgeBase(frozenset(axioms), frozenset(ordinary)), weights, labels)


def trial_seed(seed: int, trial: int) -> int:
    digest = hashlib.sha256(f"{seed}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# --------------------------------------------------------------------------
# instances and instance synthesis


@dataclass(frozen=True)
class Instance:
    principle: Principle
    theory: Theory
    args: tuple

    def check(self, method: StrengthMethod | str) -> bool:
        return check_principle(self.principle, method, self.args)


def _fresh_id(theory: Theory, base: str) -> str:
    taken = theory.rules_by_id
    candidate, n = f"{base}'", 1
    while candidate in taken:
        n += 1
        candidate = f"{base}'{n}"
    return candidate


def _with_rule(theory: Theory, base_id: str, ants: Iterable[Literal], head: Literal, weight: float) -> tuple[Theory, Rule]:
    kind = STRICT if weight == 1 else DEFEASIBLE
    rule = Rule(_fresh_id(theory, base_id), frozenset(ants), head, kind)
    return theory.extend([rule], {rule.id: weight}), rule


def extended_instance(principle: Principle, a: Argument, extra: Argument) -> Instance | None:
    """Build A' = A's top rule widened by Conc(extra), weight unchanged, inside one theory."""
    if a.is_premise or extra.conclusion in a.rule.antecedents:
        return None
    theory, rule = _with_rule(a.theory, a.rule.id, a.rule.antecedents | {extra.conclusion}, a.conclusion, a.weight)
    try:
        a0, a2 = rebuild(a, theory), rebuild(extra, theory)
        a1 = make_inference(theory, rule, a0.antecedents | {a2})
    except ArgumentError:
        return None
    return Instance(principle, theory, (a0, a1, a2))


def reweighted_instance(a: Argument, weight: float) -> Instance | None:
    """A pair (A, A') over the same antecedents whose top rules differ only in weight."""
    if a.is_premise or weight == a.weight:
        return None
    theory, rule = _with_rule(a.theory, a.rule.id, a.rule.antecedents, a.conclusion, weight)
    try:
        a0 = rebuild(a, theory)
        a1 = make_inference(theory, rule, a0.antecedents)
    except ArgumentError:
        return None
    pair = (a0, a1) if a0.weight < a1.weight else (a1, a0)
    return Instance(Principle.INFERENCE_WEIGHT_SENSITIVITY, theory, pair)


def retargeted_instance(a: Argument, b: Argument) -> Instance | None:
    """A pair (A, B') where B' reuses B's antecedents under a fresh rule weighted like A's top rule."""
    if a.is_premise or b.is_premise:
        return None
    if a.weight == b.weight:
        return Instance(Principle.PROPORTIONALITY, a.theory, (a, b))
    theory, rule = _with_rule(b.theory, b.rule.id, b.rule.antecedents, b.conclusion, a.weight)
    try:
        a0 = rebuild(a, theory)
        b1 = make_inference(theory, rule, [rebuild(x, theory) for x in b.antecedents])
    except ArgumentError:
        return None
    return Instance(Principle.PROPORTIONALITY, theory, (a0, b1))


def renamed_theory(theory: Theory, suffix: str = "_r") -> tuple[Theory, Callable[[Literal], Literal]]:
    """Disjoint union of ``theory`` and a copy with every atom and id renamed."""

    def ren(x: Literal) -> Literal:
        return Literal(x.atom + suffix, x.negated)

    rules = [Rule(r.id + suffix, frozenset(map(ren, r.antecedents)), ren(r.consequent), r.kind) for r in theory.rules]
    kb = KnowledgeBase(
        theory.kb.axioms | {ren(x) for x in theory.kb.axioms},
        theory.kb.ordinary | {ren(x) for x in theory.kb.ordinary},
    )
    weights = dict(theory.weights)
    for key, w in theory.weights.items():
        weights[ren(key) if isinstance(key, Literal) else key + suffix] = w
    labels = {p: theory.label(p) for p in theory.kb.axioms | theory.kb.ordinary}
    labels.update({ren(p): name + suffix for p, name in list(labels.items())})
    return Theory(theory.rules + tuple(rules), kb, weights, labels), ren


def clone_argument(a: Argument, theory: Theory, ren: Callable[[Literal], Literal], suffix: str = "_r") -> Argument:
    if a.is_premise:
        return make_premise(theory, ren(a.conclusion))
    rule = theory.rules_by_id[a.rule.id + suffix]
    return make_inference(theory, rule, [clone_argument(x, theory, ren, suffix) for x in a.antecedents])


def anonymity_instance(a: Argument) -> Instance:
    theory, ren = renamed_theory(a.theory)
    return Instance(Principle.ANONYMITY, theory, (rebuild(a, theory), clone_argument(a, theory, ren)))


# --------------------------------------------------------------------------
# per-principle samplers

MAX_ATTEMPTS = 60


def _applies(inst: Instance, S: Str) -> bool:
    return PREDICATES[inst.principle](S, *inst.args)[0]


def sample_instance(
    principle: Principle,
    args: Sequence[Argument],
    S: Str,
    rng: random.Random,
    zero_mass: float = 0.05,
) -> Instance | None:
    """Draw an instance of ``principle`` whose antecedent holds, or None if none was found."""
    if not args:
        return None
    theory = args[0].theory
    inferences = [a for a in args if not a.is_premise]

    if principle is Principle.ANONYMITY:
        twins = {}
        for a in args:
            twins.setdefault(a.signature, []).append(a)
        natural = [g for g in twins.values() if len(g) > 1]
        if natural and rng.random() < 0.5:
            a, b = rng.sample(rng.choice(natural), 2)
            return Instance(principle, theory, (a, b))
        return anonymity_instance(rng.choice(args))

    if principle.arity == 1:
        order = list(args)
        rng.shuffle(order)
        for a in order:
            if PREDICATES[principle](S, a)[0]:
                return Instance(principle, theory, (a,))
        return None

    if principle in (Principle.ANTECEDENT_NEUTRALITY, Principle.ANTECEDENT_WEAKENING):
        want_one = principle is Principle.ANTECEDENT_NEUTRALITY
        pairs = [
            (a, x)
            for a in inferences
            for x in args
            if x.conclusion not in a.rule.antecedents
            and (_eq(S(x), 1.0) if want_one else (S(x) < 1.0 - MARGIN and S(a) > MARGIN))
        ]
        rng.shuffle(pairs)
        for a, x in pairs[:MAX_ATTEMPTS]:
            inst = extended_instance(principle, a, x)
            if inst is not None and _applies(inst, S):
                return inst
        return None

    if principle is Principle.INFERENCE_WEIGHT_SENSITIVITY:
        order = [a for a in inferences if all(S(x) > MARGIN for x in a.antecedents)]
        rng.shuffle(order)
        groups: dict = {}
        for a in inferences:
            groups.setdefault(a.antecedents, []).append(a)
        for a in order[:MAX_ATTEMPTS]:
            partners = [b for b in groups[a.antecedents] if b.weight != a.weight]
            if partners and rng.random() < 0.5:
                b = rng.choice(partners)
                pair = (a, b) if a.weight < b.weight else (b, a)
                return Instance(principle, theory, pair)
            inst = reweighted_instance(a, draw_weight(rng, zero_mass))
            if inst is not None and _applies(inst, S):
                return inst
        return None

    if principle is Principle.PROPORTIONALITY:
        pairs = [(a, b) for a in inferences for b in inferences if len(b.antecedents) >= len(a.antecedents)]
        rng.shuffle(pairs)
        tried = 0
        for a, b in pairs:
            if not injection_exists(a.sorted_antecedents(), b.sorted_antecedents(), S):
                continue
            inst = retargeted_instance(a, b)
            if inst is not None and _applies(inst, S):
                return inst
            tried += 1
            if tried >= MAX_ATTEMPTS:
                break
        return None

    raise AssertionError(principle)


# --------------------------------------------------------------------------
# registered counterexamples from the literature


def _inst(principle: Principle, theory: Theory, *trees: str) -> Instance:
    from .dsl import build_argument

    return Instance(principle, theory, tuple(build_argument(theory, t) for t in trees))


def known_counterexamples() -> dict[Principle, list[Instance]]:
    """Hand-built instances that falsify a principle for SP, WL or the Łukasiewicz method."""
    from .dsl import parse_theory

    def th(text: str) -> Theory:
        return parse_theory(text).to_theory()

    wl_link = th("prem p1: p w=0.5\ndefeas d1: p => c w=0.25")
    weakening = th("axiom a: a\nprem q: q w=0.8\ndefeas r: a => c w=0.2\ndefeas r2: a, q => c w=0.2")
    inferential = th("prem p: p w=0.2\ndefeas r: p => c w=0.8")
    sensitivity = th("prem p: p w=0.2\ndefeas r1: p => c w=0.5\ndefeas r2: p => c w=0.8")
    proportional = th("prem p: p w=0.8\nprem q: q w=0.5\ndefeas r1: p => c1 w=0.2\ndefeas r2: q => c2 w=0.2")
    resilience = th("prem p: p w=0.5\ndefeas r: p => c w=0.5")
    return {
        Principle.WEAKEST_LINK: [_inst(Principle.WEAKEST_LINK, wl_link, "d1(p1)")],
        Principle.ANTECEDENT_WEAKENING: [_inst(Principle.ANTECEDENT_WEAKENING, weakening, "r(a)", "r2(a, q)", "q")],
        Principle.INFERENTIAL_WEAKENING: [_inst(Principle.INFERENTIAL_WEAKENING, inferential, "r(p)")],
        Principle.INFERENCE_WEIGHT_SENSITIVITY: [
            _inst(Principle.INFERENCE_WEIGHT_SENSITIVITY, sensitivity, "r1(p)", "r2(p)")
        ],
        Principle.PROPORTIONALITY: [_inst(Principle.PROPORTIONALITY, proportional, "r1(p)", "r2(q)")],
        Principle.RESILIENCE: [_inst(Principle.RESILIENCE, resilience, "r(p)")],
    }


# --------------------------------------------------------------------------
# theorem table


class Expectation(str, Enum):
    SATISFIED = "satisfied"
    NOT_SATISFIED = "not-satisfied"
    GUARANTEED = "guaranteed"
    NOT_GUARANTEED = "not-guaranteed"

    @property
    def positive(self) -> bool:
        return self in (Expectation.SATISFIED, Expectation.GUARANTEED)


_WL_FAILS = (
    Principle.ANTECEDENT_WEAKENING,
    Principle.INFERENTIAL_WEAKENING,
    Principle.INFERENCE_WEIGHT_SENSITIVITY,
    Principle.PROPORTIONALITY,
)

_AGGREGATION_COUNTEREXAMPLES = {
    ("lukasiewicz-lukasiewicz", Principle.RESILIENCE),
    ("prod-prod", Principle.WEAKEST_LINK),
    *(("min-min", p) for p in _WL_FAILS),
}


def _canonical(name: str) -> str:
    from .strength import ALIASES

    return ALIASES.get(name, name)


def expectation(method: str, principle: Principle) -> tuple[Expectation, str]:
    """What the literature establishes for (method, principle), with a short label for the source of that result."""
    if method == "sp":
        if principle is Principle.WEAKEST_LINK:
            return Expectation.NOT_SATISFIED, "sp-counterexample"
        return Expectation.SATISFIED, "sp-principles"
    if method == "wl":
        if principle in _WL_FAILS:
            return Expectation.NOT_SATISFIED, "wl-counterexample"
        return Expectation.SATISFIED, "wl-principles"
    m = get_method(method)
    if principle is Principle.ANONYMITY:
        return Expectation.SATISFIED, "aggregation-anonymity"
    if (_canonical(method), principle) in _AGGREGATION_COUNTEREXAMPLES:
        return Expectation.NOT_SATISFIED, "well-behaved-counterexample"
    if isinstance(m, AggregationMethod) and m.certified and principle in GUARANTEED:
        return Expectation.GUARANTEED, "well-behaved-guarantee"
    return Expectation.NOT_GUARANTEED, "not-guaranteed"


def theorem_table(methods: Iterable[str] | None = None) -> dict[tuple[str, Principle], Expectation]:
    from .strength import NAMED_METHODS

    names = NAMED_METHODS if methods is None else tuple(methods)
    return {(m, p): expectation(m, p)[0] for m in names for p in Principle}


# --------------------------------------------------------------------------
# probing


@dataclass
class Witness:
    instance: Instance
    strengths: tuple
    source: str  # "corpus" or "trial <n>"

    def replays(self, method: StrengthMethod | str) -> bool:
        """True when re-checking the instance still yields a violation."""
        return not self.instance.check(method)

    def to_dict(self) -> dict:
        from .dsl import format_theory

        roles = ("A", "A'", "A''")
        used = _restrict(self.instance)
        return {
            "source": self.source,
            "theory": format_theory(used),
            "arguments": [
                {"role": roles[i], "tree": a.tree, "conclusion": str(a.conclusion), "strength": s}
                for i, (a, s) in enumerate(zip(self.instance.args, self.strengths))
            ],
        }


def _restrict(inst: Instance) -> Theory:
    """The instance's theory cut down to the rules and premises its arguments use."""
    items = set()
    for a in inst.args:
        items |= a.basis.support()
    rules = tuple(r for r in inst.theory.rules if r in items)
    prems = {x for x in items if isinstance(x, Literal)}
    kb = KnowledgeBase(inst.theory.kb.axioms & prems, inst.theory.kb.ordinary & prems)
    weights = {k: w for k, w in inst.theory.weights.items() if k in prems or k in {r.id for r in rules}}
    labels = {p: inst.theory.label(p) for p in prems}
    return Theory(rules, kb, weights, labels)


@dataclass
class Verdict:
    principle: Principle
    method: str
    status: str  # "falsified" | "no-counterexample" | "known-by-theorem"
    trials: int
    applicable: int
    witness: Witness | None = None
    expected: Expectation | None = None
    theorem: str | None = None

    @property
    def falsified(self) -> bool:
        return self.status == "falsified"

    @property
    def discrepancy(self) -> bool:
        """Search result contradicts the expected status."""
        if self.expected is None:
            return False
        if self.falsified:
            return self.expected.positive
        return self.expected is Expectation.NOT_SATISFIED

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "principle": self.principle.value,
            "status": self.status,
            "trials": self.trials,
            "applicable": self.applicable,
            "expected": None if self.expected is None else self.expected.value,
            "theorem": self.theorem,
            "discrepancy": self.discrepancy,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


@dataclass
class _Tally:
    trials: int = 0
    applicable: int = 0
    witness: Witness | None = None


def _run_trials(
    methods: Sequence[str],
    principles: Sequence[Principle],
    cfg: GeneratorConfig,
    start: int,
    stop: int,
) -> dict[tuple[str, Principle], _Tally]:
    resolved = {m: get_method(m) for m in methods}
    tallies = {(m, p): _Tally() for m in methods for p in principles}
    for trial in range(start, stop):
        open_pairs = [k for k, t in tallies.items() if t.witness is None]
        if not open_pairs:
            break
        seed = trial_seed(cfg.seed, trial)
        theory = generate_theory(replace(cfg, seed=seed))
        args = enumerate_arguments(theory, cfg.budget)
        memos: dict[str, dict] = {m: {} for m in methods}
        for m, p in open_pairs:
            tally = tallies[(m, p)]
            tally.trials += 1
            S = _strength_fn(resolved[m], memos[m])
            rng = random.Random(f"{seed}:{p.value}")
            inst = sample_instance(p, args, S, rng, cfg.zero_mass)
            if inst is None:
                continue
            applies, holds = PREDICATES[p](S, *inst.args)
            if not applies:
                continue
            tally.applicable += 1
            if not holds:
                tally.witness = Witness(inst, tuple(S(a) for a in inst.args), f"trial {trial}")
    return tallies


# (method, principle, cfg, trials, seed_corpus) -> Verdict; every pair depends
# only on its own seeded trial stream, so results are reusable across calls
_CACHE: dict[tuple, Verdict] = {}


def sweep(
    methods: Sequence[str],
    principles: Sequence[Principle] | None = None,
    cfg: GeneratorConfig | None = None,
    trials: int = 1000,
    workers: int = 1,
    seed_corpus: bool = True,
) -> dict[tuple[str, Principle], Verdict]:
    """Probe every (method, principle) pair on a shared stream of random theories.

    Trial ``i`` always sees the theory generated from ``(cfg.seed, i)``, so
    results do not depend on which pairs are swept together or on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    cfg = cfg or GeneratorConfig()
    principles = list(Principle) if principles is None else list(principles)
    methods = list(methods)

    def key(m, p):
        return (m, p, cfg, trials, seed_corpus)

    missing = [(m, p) for m in methods for p in principles if key(m, p) not in _CACHE]
    if missing:
        todo_m = [m for m in methods if any(x == m for x, _ in missing)]
        todo_p = [p for p in principles if any(y == p for _, y in missing)]
        for (m, p), verdict in _sweep(todo_m, todo_p, cfg, trials, workers, seed_corpus).items():
            _CACHE[key(m, p)] = verdict
    return {(m, p): _CACHE[key(m, p)] for m in methods for p in principles}


def _sweep(methods, principles, cfg, trials, workers, seed_corpus):
    corpus = known_counterexamples() if seed_corpus else {}
    seeded: dict[tuple[str, Principle], Witness] = {}
    for m in methods:
        for p in principles:
            for inst in corpus.get(p, ()):
                S = _strength_fn(m)
                if not check_principle(p, m, inst.args):
                    seeded[(m, p)] = Witness(inst, tuple(S(a) for a in inst.args), "corpus")
                    break

    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        bounds = [(trials * i // workers, trials * (i + 1) // workers) for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_chunk, [(methods, principles, cfg, lo, hi) for lo, hi in bounds]))
    else:
        parts = [_run_trials(methods, principles, cfg, 0, trials)]

    verdicts = {}
    for m in methods:
        for p in principles:
            exp, tag = expectation(m, p)
            total = _Tally()
            for part in parts:
                t = part[(m, p)]
                total.trials += t.trials
                total.applicable += t.applicable
                if t.witness is not None:
                    total.witness = t.witness
                    break
            witness = seeded.get((m, p)) or total.witness
            if witness is not None:
                status = "falsified"
            elif exp.positive:
                status = "known-by-theorem"
            else:
                status = "no-counterexample"
            verdicts[(m, p)] = Verdict(p, m, status, total.trials, total.applicable, witness, exp, tag)
    return verdicts


def _run_chunk(job):
    return _run_trials(*job)


def probe_principle(
    principle: Principle,
    method: str,
    cfg: GeneratorConfig | None = None,
    trials: int = 1000,
    workers: int = 1,
) -> Verdict:
    return sweep([method], [principle], cfg, trials, workers)[(method, principle)]
