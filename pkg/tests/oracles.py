"""Independent reference implementations used only by the tests.

They are deliberately naive: exhaustive search over subsets, literal
bottom-up argument construction on plain tuples, and a backtracking
isomorphism matcher. None of them import the engine's algorithms.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def brute_closure(literals, rules):
    """Smallest strict-closed superset, as the intersection of all closed supersets."""
    literals = frozenset(literals)
    strict = [r for r in rules if r.is_strict]
    universe = set(literals)
    for r in strict:
        universe |= r.antecedents | {r.consequent}
    extra = sorted(universe - literals)
    best = frozenset(universe)
    for k in range(len(extra) + 1):
        for chosen in itertools.combinations(extra, k):
            cand = literals | frozenset(chosen)
            if all(r.consequent in cand for r in strict if r.antecedents <= cand):
                best &= cand
    return best


def brute_consistent(literals, rules):
    closed = brute_closure(literals, rules)
    return not any(type(x)(x.atom, not x.negated) in closed for x in closed)


# --------------------------------------------------------------------------
# arguments as plain tuples: ("P", literal, is_axiom) or ("R", rule, frozenset(children))


def t_conc(t):
    return t[1] if t[0] == "P" else t[1].consequent


def t_sub(t):
    out = {t}
    if t[0] == "R":
        for c in t[2]:
            out |= t_sub(c)
    return out


def t_rule_count(t):
    return 0 if t[0] == "P" else 1 + sum(t_rule_count(c) for c in t[2])


def t_is_strict(t):
    """No ordinary premise and no defeasible rule anywhere in the tree."""
    if t[0] == "P":
        return t[2]
    return t[1].is_strict and all(t_is_strict(c) for c in t[2])


def t_basis(t):
    """Basis as a sorted list of weight keys with multiplicity."""
    if t[0] == "P":
        return [t[1]]
    out = [t[1]]
    for c in t[2]:
        out += t_basis(c)
    return out


def well_formed(t, theory):
    subs = t_sub(t)
    if not brute_consistent({t_conc(s) for s in subs}, theory.rules):
        return False
    nonstrict = [t_conc(s) for s in subs if not t_is_strict(s)]
    return len(nonstrict) == len(set(nonstrict))


def brute_arguments(theory, budget):
    """Apply the construction steps literally until nothing new appears within the budget."""
    found = {("P", p, True) for p in theory.kb.axioms} | {("P", p, False) for p in theory.kb.ordinary}
    while True:
        new = set()
        for rule in theory.rules:
            ants = sorted(rule.antecedents)
            pools = [[t for t in found if t_conc(t) == a] for a in ants]
            for combo in itertools.product(*pools):
                t = ("R", rule, frozenset(combo))
                if t in found or t_rule_count(t) > budget:
                    continue
                if well_formed(t, theory):
                    new.add(t)
        if not new:
            return found
        found |= new


def as_tuple(arg):
    if arg.is_premise:
        return ("P", arg.conclusion, arg.axiom)
    return ("R", arg.rule, frozenset(as_tuple(a) for a in arg.antecedents))


def iso(a, b, wa, wb):
    """Backtracking isomorphism test on tuple trees; ``wa``/``wb`` give weights."""
    if a[0] != b[0]:
        return False
    if a[0] == "P":
        return wa(a[1]) == wb(b[1])
    if wa(a[1].id) != wb(b[1].id) or len(a[2]) != len(b[2]):
        return False
    left, right = list(a[2]), list(b[2])
    return any(all(iso(x, y, wa, wb) for x, y in zip(left, perm)) for perm in itertools.permutations(right))


def iso_classes(trees, weight):
    """Partition trees into isomorphism classes; returns the sorted list of class sizes."""
    classes: list[list] = []
    for t in trees:
        for c in classes:
            if iso(c[0], t, weight, weight):
                c.append(t)
                break
        else:
            classes.append([t])
    return sorted(len(c) for c in classes)


# --------------------------------------------------------------------------
# strength by hand


def sp_by_basis(t, weight):
    out = Fraction(1)
    for key in t_basis(t):
        out *= Fraction(weight(key if not hasattr(key, "id") else key.id))
    return out


def h_categorizer_exact_acyclic(nodes, attacks):
    """Exact degrees on an acyclic graph by evaluating in topological order with fractions."""
    attackers = {n: [a for a, b in attacks if b == n] for n in nodes}
    deg = {}
    while len(deg) < len(nodes):
        for n in nodes:
            if n not in deg and all(a in deg for a in attackers[n]):
                deg[n] = Fraction(nodes[n]) / (1 + sum(deg[a] for a in attackers[n]))
    return deg
