"""Text formats: the line-oriented theory language, WAG JSON, DOT output and run reports.

Theory files look like::

    # comments start with '#'
    axiom a1: a
    prem p1: p w=0.5
    defeas d1: a => b w=0.25
    strict s1: b, p -> c
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .argument import Argument, ArgumentError, make_inference, make_premise
from .model import DEFEASIBLE, STRICT, KnowledgeBase, Literal, Rule, Theory

# --------------------------------------------------------------------------
# diagnostics


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class TheoryParseError(ValueError):
    def __init__(self, diagnostics: Sequence[Diagnostic], source: str = "<theory>") -> None:
        self.diagnostics = list(diagnostics)
        self.source = source
        super().__init__("\n".join(f"{source}:{d}" for d in self.diagnostics))


# --------------------------------------------------------------------------
# theory documents

KINDS = ("axiom", "prem", "strict", "defeas")

_IDENT = r"[A-Za-z_][A-Za-z0-9_'.]*"
_LITERAL = re.compile(rf"\s*(~?)\s*({_IDENT}(?:\([^()]*\))?)\s*$")
_HEADER = re.compile(rf"(\w+)\s+({_IDENT})\s*:(.*)$")
_WEIGHT = re.compile(r"\s+w\s*=\s*(\S*)\s*$")


@dataclass(frozen=True)
class Statement:
    kind: str
    id: str
    literal: Literal
    antecedents: tuple = ()
    weight: float | None = None
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def render(self) -> str:
        if self.kind in ("axiom", "prem"):
            body = str(self.literal)
        else:
            arrow = "->" if self.kind == "strict" else "=>"
            ants = ", ".join(str(a) for a in self.antecedents)
            body = f"{ants} {arrow} {self.literal}" if ants else f"{arrow} {self.literal}"
        weight = "" if self.weight is None else f" w={self.weight!r}"
        return f"{self.kind} {self.id}: {body}{weight}"


@dataclass(frozen=True)
class TheoryDocument:
    statements: tuple

    def __str__(self) -> str:
        return print_document(self)

    def to_theory(self) -> Theory:
        rules, axioms, ordinary, weights, labels = [], set(), set(), {}, {}
        for st in self.statements:
            if st.kind == "axiom":
                axioms.add(st.literal)
                weights[st.literal] = 1.0
                labels[st.literal] = st.id
            elif st.kind == "prem":
                ordinary.add(st.literal)
                weights[st.literal] = st.weight
                labels[st.literal] = st.id
            else:
                kind = STRICT if st.kind == "strict" else DEFEASIBLE
                rules.append(Rule(st.id, frozenset(st.antecedents), st.literal, kind))
                weights[st.id] = 1.0 if kind == STRICT else st.weight
        return Theory(tuple(rules), KnowledgeBase(frozenset(axioms), frozenset(ordinary)), weights, labels)


def print_document(doc: TheoryDocument) -> str:
    return "".join(st.render() + "\n" for st in doc.statements)


def _parse_literal(text: str) -> Literal | None:
    m = _LITERAL.match(text)
    if not m:
        return None
    return Literal(m.group(2), bool(m.group(1)))


def _parse_line(lineno: int, raw: str, diags: list[Diagnostic]) -> Statement | None:
    text = raw.split("#", 1)[0].rstrip()
    indent = len(text) - len(text.lstrip())
    stripped = text.strip()
    if not stripped:
        return None

    def err(col: int, msg: str) -> None:
        diags.append(Diagnostic(lineno, col + 1, msg))

    m = _HEADER.match(stripped)
    if not m:
        err(indent, "expected '<kind> <id>: ...'")
        return None
    kind, ident, body = m.group(1), m.group(2), m.group(3)
    body_col = indent + m.start(3)
    if kind not in KINDS:
        err(indent, f"unknown statement kind {kind!r} (expected one of {', '.join(KINDS)})")
        return None

    weight = None
    wm = _WEIGHT.search(body)
    if wm:
        wcol = body_col + wm.start(1)
        try:
            weight = float(wm.group(1))
        except ValueError:
            err(wcol, f"bad weight {wm.group(1)!r}")
            return None
        if not math.isfinite(weight):
            err(wcol, "weight must be a finite number")
            return None
        body = body[: wm.start()]
        if kind in ("axiom", "strict"):
            err(wcol, f"{'axioms' if kind == 'axiom' else 'strict rules'} take no weight (it is always 1)")
            return None
        if weight < 0:
            err(wcol, "weight must be >= 0")
            return None
        if weight >= 1:
            what = "ordinary premise" if kind == "prem" else "defeasible rule"
            err(wcol, f"{what} weight must be < 1")
            return None
    elif kind in ("prem", "defeas"):
        err(body_col + len(body), "missing weight 'w=<float>'")
        return None

    if kind in ("axiom", "prem"):
        literal = _parse_literal(body)
        if literal is None:
            err(body_col, f"bad literal {body.strip()!r}")
            return None
        return Statement(kind, ident, literal, (), weight, lineno, indent + 1)

    arrow = "->" if kind == "strict" else "=>"
    if body.count(arrow) != 1:
        err(body_col, f"{kind} rule needs exactly one '{arrow}'")
        return None
    left, right = body.split(arrow)
    consequent = _parse_literal(right)
    if consequent is None:
        err(body_col + len(left) + 2, f"bad literal {right.strip()!r}")
        return None
    ants: list[Literal] = []
    if left.strip():
        offset = 0
        for piece in _split_commas(left):
            literal = _parse_literal(piece)
            if literal is None:
                err(body_col + offset, f"bad literal {piece.strip()!r}")
                return None
            if literal in ants:
                err(body_col + offset, f"antecedent {literal} repeated")
                return None
            ants.append(literal)
            offset += len(piece) + 1
    return Statement(kind, ident, consequent, tuple(ants), weight, lineno, indent + 1)


def _split_commas(text: str) -> list[str]:
    """Split on commas that are not inside parentheses (predicate arguments)."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_theory(text: str, source: str = "<theory>") -> TheoryDocument:
    """Parse theory text; raises :class:`TheoryParseError` carrying every diagnostic."""
    diags: list[Diagnostic] = []
    statements: list[Statement] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        st = _parse_line(lineno, raw, diags)
        if st is not None:
            statements.append(st)

    ids: dict[str, Statement] = {}
    premises: dict[Literal, Statement] = {}
    for st in statements:
        if st.id in ids:
            diags.append(Diagnostic(st.line, st.column, f"duplicate id {st.id!r} (first used on line {ids[st.id].line})"))
        ids.setdefault(st.id, st)
        if st.kind in ("axiom", "prem"):
            if st.literal in premises:
                diags.append(
                    Diagnostic(st.line, st.column, f"premise {st.literal} already declared on line {premises[st.literal].line}")
                )
            premises.setdefault(st.literal, st)
    if not statements and not diags:
        diags.append(Diagnostic(1, 1, "empty theory"))
    if diags:
        raise TheoryParseError(sorted(diags, key=lambda d: (d.line, d.column)), source)
    return TheoryDocument(tuple(statements))


def load_theory(text: str, source: str = "<theory>") -> Theory:
    return parse_theory(text, source).to_theory()


def theory_document(theory: Theory) -> TheoryDocument:
    """Canonical document for a theory: axioms, then premises, then rules in theory order."""
    sts = [Statement("axiom", theory.label(a), a) for a in sorted(theory.kb.axioms)]
    sts += [Statement("prem", theory.label(p), p, (), theory.weights[p]) for p in sorted(theory.kb.ordinary)]
    for r in theory.rules:
        kind = "strict" if r.is_strict else "defeas"
        weight = None if r.is_strict else theory.weights[r.id]
        sts.append(Statement(kind, r.id, r.consequent, tuple(sorted(r.antecedents)), weight))
    return TheoryDocument(tuple(sts))


def format_theory(theory: Theory) -> str:
    return print_document(theory_document(theory))


# --------------------------------------------------------------------------
# argument trees as text: "s1(d1(a1), p1)"


class TreeSyntaxError(ValueError):
    pass


def build_argument(theory: Theory, tree: str) -> Argument:
    """Rebuild an argument from its tree string, re-running every well-formedness check."""
    by_label = {theory.label(p): p for p in theory.kb.axioms | theory.kb.ordinary}
    tokens = re.findall(r"[^\s(),]+|[(),]", tree)
    pos = 0

    def node() -> Argument:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] in "(),":
            raise TreeSyntaxError(f"unexpected token in {tree!r}")
        name = tokens[pos]
        pos += 1
        if pos < len(tokens) and tokens[pos] == "(":
            pos += 1
            children = []
            if tokens[pos] != ")":
                children.append(node())
                while tokens[pos] == ",":
                    pos += 1
                    children.append(node())
            if tokens[pos] != ")":
                raise TreeSyntaxError(f"expected ')' in {tree!r}")
            pos += 1
            if name not in theory.rules_by_id:
                raise TreeSyntaxError(f"unknown rule {name!r}")
            return make_inference(theory, theory.rules_by_id[name], children)
        if name in by_label:
            return make_premise(theory, by_label[name])
        if name in theory.rules_by_id:
            return make_inference(theory, theory.rules_by_id[name], [])
        raise TreeSyntaxError(f"unknown premise or rule {name!r}")

    try:
        arg = node()
    except IndexError:
        raise TreeSyntaxError(f"unterminated tree {tree!r}") from None
    if pos != len(tokens):
        raise TreeSyntaxError(f"trailing input in {tree!r}")
    return arg


# --------------------------------------------------------------------------
# weighted argumentation graphs (JSON)


class WagFormatError(ValueError):
    pass


def _unit(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise WagFormatError(f"{what} must be a number")
    if not 0 <= value <= 1:
        raise WagFormatError(f"{what} must lie in [0, 1], got {value}")
    return float(value)


def parse_wag(text: str):
    """Parse WAG JSON into a :class:`~argstr.semantics.WeightedGraph`."""
    from .semantics import WeightedGraph

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WagFormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict) or not isinstance(data.get("arguments"), list):
        raise WagFormatError("expected an object with an 'arguments' list")
    nodes: dict[str, float] = {}
    for i, item in enumerate(data["arguments"]):
        if not isinstance(item, dict) or not isinstance(item.get("id"), str):
            raise WagFormatError(f"arguments[{i}] needs a string 'id'")
        if item["id"] in nodes:
            raise WagFormatError(f"duplicate argument id {item['id']!r}")
        nodes[item["id"]] = _unit(item.get("weight", 1.0), f"weight of {item['id']!r}")
    attacks = []
    for i, item in enumerate(data.get("attacks", [])):
        if not isinstance(item, dict):
            raise WagFormatError(f"attacks[{i}] must be an object")
        src, dst = item.get("from"), item.get("to")
        for end in (src, dst):
            if end not in nodes:
                raise WagFormatError(f"attacks[{i}] references unknown argument {end!r}")
        attacks.append((src, dst, _unit(item.get("weight", 1.0), f"weight of attacks[{i}]")))
    try:
        return WeightedGraph(nodes, attacks)
    except ValueError as exc:
        raise WagFormatError(str(exc)) from None


def wag_to_dict(graph) -> dict:
    return {
        "arguments": [{"id": n, "weight": w} for n, w in graph.nodes.items()],
        "attacks": [{"from": a, "to": b, "weight": w} for a, b, w in graph.attacks],
    }


def dump_wag(graph) -> str:
    return json.dumps(wag_to_dict(graph), indent=2) + "\n"


# --------------------------------------------------------------------------
# DOT


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def arguments_to_dot(entries: Iterable[tuple[str, Argument, float]]) -> str:
    """One cluster per argument drawing its inference tree; edges point from antecedent to conclusion."""
    out = ["digraph arguments {", "  rankdir=BT;", '  node [shape=box, fontname="Helvetica"];']
    for k, (name, arg, value) in enumerate(entries):
        out.append(f"  subgraph cluster_{k} {{")
        out.append(f'    label="{_dot_escape(name)}: {_dot_escape(str(arg.conclusion))}  str={value:.6g}";')
        counter = [0]

        def draw(a: Argument) -> str:
            node_id = f"n{k}_{counter[0]}"
            counter[0] += 1
            if a.is_premise:
                kind = "axiom" if a.axiom else "premise"
                head = f"{kind} {a.theory.label(a.conclusion)}"
            else:
                head = f"{a.rule.id} ({'strict' if a.rule.is_strict else 'defeasible'})"
            label = _dot_escape(head) + "\\n" + _dot_escape(f"{a.conclusion}  w={a.weight:.6g}")
            style = "" if a.is_premise else ", style=rounded"
            out.append(f'    {node_id} [label="{label}"{style}];')
            for child in a.sorted_antecedents():
                out.append(f"    {draw(child)} -> {node_id};")
            return node_id

        draw(arg)
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# reports


def digest(data: str | bytes) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    results: Any
    version: str = ""
    seed: int | None = None

    def __post_init__(self) -> None:
        if not self.version:
            from . import __version__

            self.version = __version__

    def to_dict(self) -> dict:
        out = {"command": self.command, "engine_version": self.version, "inputs_digest": self.inputs_digest}
        if self.seed is not None:
            out["seed"] = self.seed
        out["results"] = self.results
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=False) + "\n"
