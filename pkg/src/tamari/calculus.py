"""
Derivation trees for the four rules of the calculus

    L    A*B, D |- C    from   A, B, D |- C
    R    G, D |- A*B    from   G |- A   and   D |- B
    id   A |- A
    cut  G, T, D |- B   from   T |- A   and   G, A, D |- B

together with schema validation, sequent classification, the focused-form
check and a JSON interchange format.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterator, Optional

from .term import (
    Atom,
    Formula,
    ParseError,
    Product,
    is_irreducible,
    parse_formula,
    print_context,
    print_formula,
)


class Rule(enum.Enum):
    L = "L"
    R = "R"
    ID = "id"
    CUT = "cut"


PREMISE_COUNT = {Rule.L: 1, Rule.R: 2, Rule.ID: 0, Rule.CUT: 2}


class SequentClass(enum.Enum):
    LEFT_INVERTING = "left-inverting"
    RIGHT_FOCUSING = "right-focusing"
    ATOMIC = "atomic"


@dataclass(frozen=True)
class Sequent:
    ctx: tuple
    goal: Formula

    def __post_init__(self):
        object.__setattr__(self, "ctx", tuple(self.ctx))

    def __str__(self):
        return f"{print_context(self.ctx)} |- {print_formula(self.goal)}"


def classify(s: Sequent) -> SequentClass:
    if not s.ctx:
        raise ValueError("cannot classify a sequent with an empty context")
    if not is_irreducible(s.ctx):
        return SequentClass.LEFT_INVERTING
    if isinstance(s.goal, Product):
        return SequentClass.RIGHT_FOCUSING
    return SequentClass.ATOMIC


@dataclass(frozen=True)
class Derivation:
    """A rule-labelled tree of sequents.

    ``split`` is recorded on R nodes (the left premise gets ``ctx[:split]``);
    ``at`` and ``length`` on cut nodes (the segment ``ctx[at:at+length]`` is
    the context of the left premise).
    """

    rule: Rule
    conclusion: Sequent
    premises: tuple = ()
    split: Optional[int] = None
    at: Optional[int] = None
    length: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))

    @property
    def ctx(self) -> tuple:
        return self.conclusion.ctx

    @property
    def goal(self) -> Formula:
        return self.conclusion.goal

    @property
    def cut_formula(self) -> Optional[Formula]:
        if self.rule is Rule.CUT and self.premises:
            return self.premises[0].goal
        return None

    def nodes(self) -> Iterator[tuple[tuple[int, ...], "Derivation"]]:
        """Pre-order walk yielding ``(path, node)`` pairs."""
        stack = [((), self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for i in reversed(range(len(node.premises))):
                stack.append((path + (i,), node.premises[i]))

    def __len__(self):
        return sum(1 for _ in self.nodes())

    def __str__(self):
        return render(self)


# ---------- builders (conclusions are computed from premises) ----------


def identity(A: Formula) -> Derivation:
    return Derivation(Rule.ID, Sequent((A,), A))


def times_l(premise: Derivation) -> Derivation:
    ctx = premise.ctx
    if len(ctx) < 2:
        raise ValueError("L needs a premise context of length >= 2")
    return Derivation(Rule.L, Sequent((Product(ctx[0], ctx[1]),) + ctx[2:], premise.goal), (premise,))


def times_r(left: Derivation, right: Derivation) -> Derivation:
    return Derivation(
        Rule.R,
        Sequent(left.ctx + right.ctx, Product(left.goal, right.goal)),
        (left, right),
        split=len(left.ctx),
    )


def cut(d: Derivation, e: Derivation, at: int) -> Derivation:
    """Cut ``d : T |- A`` into position ``at`` of ``e : G, A, D |- B``."""
    if not 0 <= at < len(e.ctx):
        raise ValueError(f"cut position {at} outside context of length {len(e.ctx)}")
    ctx = e.ctx[:at] + d.ctx + e.ctx[at + 1:]
    return Derivation(Rule.CUT, Sequent(ctx, e.goal), (d, e), at=at, length=len(d.ctx))


# ---------- validation ----------


@dataclass(frozen=True)
class Violation:
    path: tuple
    rule: Rule
    clause: str

    def where(self) -> str:
        if not self.path:
            return "root"
        return "root" + "".join(f".premises[{i}]" for i in self.path)

    def __str__(self):
        return f"{self.rule.value} node at {self.where()}: {self.clause}"


class InvalidDerivation(ValueError):
    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


def _check_node(node: Derivation) -> Optional[str]:
    ctx, goal = node.ctx, node.goal
    if not ctx:
        return "empty context"
    n_prem = PREMISE_COUNT[node.rule]
    if len(node.premises) != n_prem:
        return f"expected {n_prem} premise(s), found {len(node.premises)}"
    if node.rule is not Rule.R and node.split is not None:
        return "split recorded on a non-R node"
    if node.rule is not Rule.CUT and (node.at is not None or node.length is not None):
        return "cut position recorded on a non-cut node"

    if node.rule is Rule.ID:
        if ctx != (goal,):
            return "conclusion is not of the form A |- A"
    elif node.rule is Rule.L:
        (p,) = node.premises
        head = ctx[0]
        if not isinstance(head, Product):
            return "leftmost formula of the conclusion is not a product"
        if p.ctx != (head.left, head.right) + ctx[1:]:
            return "premise context is not A, B, D for conclusion A*B, D"
        if p.goal != goal:
            return "premise goal differs from conclusion goal"
    elif node.rule is Rule.R:
        if not isinstance(goal, Product):
            return "goal is not a product"
        s = node.split
        if s is None:
            return "missing split index"
        if not 1 <= s < len(ctx):
            return f"split index {s} does not give two non-empty parts"
        left, right = node.premises
        if left.ctx != ctx[:s] or right.ctx != ctx[s:]:
            return "premise contexts do not match the recorded split"
        if left.goal != goal.left or right.goal != goal.right:
            return "premise goals are not the factors of the conclusion goal"
    elif node.rule is Rule.CUT:
        at, n = node.at, node.length
        if at is None or n is None:
            return "missing cut position"
        if n < 1 or at < 0 or at + n > len(ctx):
            return f"cut segment [{at}:{at + n}] out of range"
        d, e = node.premises
        if d.ctx != ctx[at:at + n]:
            return "left premise context is not the recorded segment"
        if e.ctx != ctx[:at] + (d.goal,) + ctx[at + n:]:
            return "right premise context is not G, A, D"
        if e.goal != goal:
            return "right premise goal differs from conclusion goal"
    return None


def validate(D: Derivation) -> Optional[Violation]:
    """First schema violation in pre-order, or None if every node is a rule instance."""
    for path, node in D.nodes():
        problem = _check_node(node)
        if problem is not None:
            return Violation(path, node.rule, problem)
    return None


def is_valid(D: Derivation) -> bool:
    return validate(D) is None


def check(D: Derivation) -> Derivation:
    """Return ``D`` or raise :class:`InvalidDerivation`."""
    v = validate(D)
    if v is not None:
        raise InvalidDerivation(v)
    return D


def is_focused(D: Derivation) -> bool:
    """Cut-free, every R has an irreducible left premise, every id is atomic."""
    if validate(D) is not None:
        return False
    for _, node in D.nodes():
        if node.rule is Rule.CUT:
            return False
        if node.rule is Rule.R and not is_irreducible(node.ctx[: node.split]):
            return False
        if node.rule is Rule.ID and not isinstance(node.goal, Atom):
            return False
    return True


def render(D: Derivation, indent: str = "  ") -> str:
    """Plain-text tree, conclusion first, premises indented below."""
    lines = []
    for path, node in D.nodes():
        lines.append(f"{indent * len(path)}{node.conclusion}   ({node.rule.value})")
    return "\n".join(lines)


# ---------- JSON ----------


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def to_dict(D: Derivation) -> dict:
    # children are filled in after the parent dict exists, so no recursion is needed
    printed: dict = {}

    def text(A: Formula) -> str:
        hit = printed.get(id(A))
        if hit is None:
            hit = printed[id(A)] = (A, print_formula(A))
        return hit[1]

    root: dict = {}
    stack = [(D, root)]
    while stack:
        node, out = stack.pop()
        out["rule"] = node.rule.value
        out["sequent"] = {
            "ctx": [text(A) for A in node.ctx],
            "goal": text(node.goal),
        }
        if node.rule is Rule.R:
            out["split"] = node.split
        elif node.rule is Rule.CUT:
            out["at"] = node.at
            out["len"] = node.length
        children = [{} for _ in node.premises]
        out["premises"] = children
        stack.extend(zip(node.premises, children))
    return root


def to_json(D: Derivation) -> bytes:
    return json.dumps(to_dict(D), separators=(",", ":")).encode("utf-8")


_RULES = {r.value: r for r in Rule}


def _formula_at(value, path: str, table: dict) -> Formula:
    if not isinstance(value, str):
        raise SchemaError(path, "expected a formula string")
    hit = table.get(("text", value))
    if hit is not None:
        return hit
    try:
        A = table[("text", value)] = parse_formula(value, table)
        return A
    except ParseError as e:
        raise SchemaError(path, str(e)) from None


def _index_at(obj: dict, key: str, path: str) -> int:
    if key not in obj:
        raise SchemaError(path, f"missing field {key!r}")
    value = obj[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{path}.{key}", "expected an integer")
    return value


def from_dict(obj) -> Derivation:
    # post-order rebuild with an explicit stack; formulas are shared through one table
    table: dict = {}

    def node_fields(obj, path):
        if not isinstance(obj, dict):
            raise SchemaError(path, "expected an object")
        rule = obj.get("rule")
        if rule not in _RULES:
            raise SchemaError(f"{path}.rule", f"expected one of {sorted(_RULES)}")
        rule = _RULES[rule]
        seq = obj.get("sequent")
        if not isinstance(seq, dict):
            raise SchemaError(f"{path}.sequent", "expected an object")
        ctx = seq.get("ctx")
        if not isinstance(ctx, list):
            raise SchemaError(f"{path}.sequent.ctx", "expected an array")
        ctx = tuple(_formula_at(v, f"{path}.sequent.ctx[{i}]", table) for i, v in enumerate(ctx))
        if "goal" not in seq:
            raise SchemaError(f"{path}.sequent", "missing field 'goal'")
        goal = _formula_at(seq["goal"], f"{path}.sequent.goal", table)
        extra = {}
        if rule is Rule.R:
            extra["split"] = _index_at(obj, "split", path)
        elif rule is Rule.CUT:
            extra["at"] = _index_at(obj, "at", path)
            extra["length"] = _index_at(obj, "len", path)
        premises = obj.get("premises")
        if not isinstance(premises, list):
            raise SchemaError(f"{path}.premises", "expected an array")
        return rule, Sequent(ctx, goal), extra, premises

    built: list[Derivation] = []
    stack = [(obj, "$", False, None)]
    while stack:
        item, path, ready, fields = stack.pop()
        if ready:
            rule, seq, extra, premises = fields
            k = len(premises)
            kids = built[len(built) - k:] if k else []
            del built[len(built) - k:]
            built.append(Derivation(rule, seq, tuple(kids), **extra))
            continue
        fields = node_fields(item, path)
        stack.append((item, path, True, fields))
        premises = fields[3]
        for i in reversed(range(len(premises))):
            stack.append((premises[i], f"{path}.premises[{i}]", False, None))
    return built[0]


def from_json(data) -> Derivation:
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"malformed JSON: {e}") from None
    return from_dict(obj)
