"""
Formulas (fully-bracketed words over named atoms) and contexts.

A formula is either an :class:`Atom` or a :class:`Product` of two formulas.
Contexts are plain tuples of formulas.  Every traversal here is iterative so
that formulas with tens of thousands of products can be handled without
touching the interpreter's recursion limit.

The concrete syntax is ``formula := term ("*" term)*`` with ``*`` associating
to the left, and ``term := atom | "(" formula ")"``.
"""

from __future__ import annotations

import re
from typing import Callable, Iterator, Mapping, Optional, Sequence, TypeVar, Union

T = TypeVar("T")

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")


class Formula:
    """Base class of :class:`Atom` and :class:`Product`. Instances are immutable."""

    __slots__ = ("_hash", "size")

    def __setattr__(self, key, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if a._hash != b._hash or a.size != b.size:
                return False
            if isinstance(a, Atom):
                if not isinstance(b, Atom) or a.name != b.name:
                    return False
            else:
                if not isinstance(b, Product):
                    return False
                stack.append((a.right, b.right))
                stack.append((a.left, b.left))
        return True

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __mul__(self, other: "Formula") -> "Product":
        if not isinstance(other, Formula):
            return NotImplemented
        return Product(self, other)

    @property
    def leaves(self) -> int:
        """Length of the frontier."""
        return self.size + 1

    def __str__(self):
        return print_formula(self)

    def __repr__(self):
        return f"{type(self).__name__}<{print_formula(self)}>"


class Atom(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not isinstance(name, str) or not ATOM_RE.fullmatch(name):
            raise ValueError(f"invalid atom name {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "size", 0)
        object.__setattr__(self, "_hash", hash(("atom", name)))

    def __repr__(self):
        return f"Atom({self.name!r})"

    def __reduce__(self):
        return (Atom, (self.name,))


class Product(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        if not isinstance(left, Formula) or not isinstance(right, Formula):
            raise TypeError("Product expects two formulas")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "size", 1 + left.size + right.size)
        object.__setattr__(self, "_hash", hash((left._hash, right._hash)))

    def __reduce__(self):
        return (parse_formula, (print_formula(self),))


Context = tuple  # tuple[Formula, ...]
Frontier = tuple  # tuple[Atom, ...]


def atoms(*names: str) -> tuple[Atom, ...]:
    """``atoms("p", "q")`` -> ``(Atom('p'), Atom('q'))``."""
    return tuple(Atom(n) for n in names)


def canonical_frontier(n: int) -> tuple[Atom, ...]:
    """The frontier ``a1, ..., a(n+1)`` used for trees with ``n`` products."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return tuple(Atom(f"a{i}") for i in range(1, n + 2))


def fold(A: Formula, on_atom: Callable[[Atom], T], on_product: Callable[[T, T], T]) -> T:
    """Bottom-up fold over ``A`` (post-order, left before right), without recursion."""
    stack: list = [(A, False)]
    results: list = []
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Atom):
            results.append(on_atom(node))
        elif expanded:
            right = results.pop()
            left = results.pop()
            results.append(on_product(left, right))
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
    return results[0]


# ---------- parsing and printing ----------


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


_TOKEN_RE = re.compile(r"(?P<atom>[a-z][a-zA-Z0-9_]*)|(?P<op>[*()])|(?P<ws>\s+)|(?P<bad>.)", re.S)


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "atom":
            yield "atom", m.group(), m.start()
        elif kind == "op":
            yield m.group(), m.group(), m.start()
        elif kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", text, m.start())


def parse_formula(text: str, table: Optional[dict] = None) -> Formula:
    """Parse ``text``; ``*`` chains associate to the left.

    If ``table`` is given, structurally equal subformulas are shared through
    it (also across calls), which makes later equality tests O(1).
    """
    if table is None:
        make_atom, make_product = Atom, Product
    else:
        def make_atom(name):
            A = table.get(name)
            if A is None:
                A = table[name] = Atom(name)
            return A

        def make_product(l, r):
            key = (id(l), id(r))
            A = table.get(key)
            if A is None:
                A = table[key] = Product(l, r)
            return A

    # each frame: [accumulated formula or None, position of its "("]
    frames: list[list] = [[None, -1]]
    expect_operand = True

    def push(x: Formula) -> None:
        top = frames[-1]
        top[0] = x if top[0] is None else make_product(top[0], x)

    for kind, value, pos in _tokens(text):
        if expect_operand:
            if kind == "atom":
                push(make_atom(value))
                expect_operand = False
            elif kind == "(":
                frames.append([None, pos])
            else:
                raise ParseError(f"expected atom or '(' but found {value!r}", text, pos)
        else:
            if kind == "*":
                expect_operand = True
            elif kind == ")":
                if len(frames) == 1:
                    raise ParseError("unmatched ')'", text, pos)
                inner, _ = frames.pop()
                push(inner)
            else:
                raise ParseError(f"expected '*' or ')' but found {value!r}", text, pos)
    if expect_operand:
        raise ParseError("unexpected end of input", text, len(text))
    if len(frames) > 1:
        raise ParseError("unclosed '('", text, frames[-1][1])
    return frames[0][0]


def parse_context(text: str) -> tuple[Formula, ...]:
    """Comma-separated formulas; the empty (or blank) string is the empty context."""
    if not text.strip():
        return ()
    out = []
    offset = 0
    for chunk in text.split(","):
        try:
            out.append(parse_formula(chunk))
        except ParseError as e:
            raise ParseError("invalid context item", text, offset + e.pos) from None
        offset += len(chunk) + 1
    return tuple(out)


def print_formula(A: Formula) -> str:
    """Minimally parenthesized text: only right operands that are products get parentheses."""
    out: list[str] = []
    stack: list = [A]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            out.append(x)
        elif isinstance(x, Atom):
            out.append(x.name)
        else:
            if isinstance(x.right, Product):
                stack.extend((")", x.right, "("))
            else:
                stack.append(x.right)
            stack.append("*")
            stack.append(x.left)
    return "".join(out)


def print_context(ctx: Sequence[Formula]) -> str:
    return ", ".join(print_formula(A) for A in ctx)


# ---------- structural maps ----------


def frontier(x: Union[Formula, Sequence[Formula]]) -> tuple[Atom, ...]:
    """In-order list of atoms of a formula or of a context."""
    items = [x] if isinstance(x, Formula) else list(x)
    out: list[Atom] = []
    for A in items:
        stack = [A]
        while stack:
            node = stack.pop()
            if isinstance(node, Atom):
                out.append(node)
            else:
                stack.append(node.right)
                stack.append(node.left)
    return tuple(out)


def leaf_count(ctx: Sequence[Formula]) -> int:
    return sum(A.leaves for A in ctx)


def _as_atom(x) -> Atom:
    return x if isinstance(x, Atom) else Atom(x)


def relabel(sigma: Mapping, x):
    """Apply an atom substitution to a formula or context.

    ``sigma`` maps atoms (or atom names) to atoms (or names); atoms it does
    not mention are left alone.
    """
    table = {_as_atom(k): _as_atom(v) for k, v in sigma.items()}
    if isinstance(x, Formula):
        return fold(x, lambda a: table.get(a, a), Product)
    return tuple(fold(A, lambda a: table.get(a, a), Product) for A in x)


def is_irreducible(ctx: Sequence[Formula]) -> bool:
    return not ctx or isinstance(ctx[0], Atom)


def phi(ctx: Sequence[Formula]) -> Formula:
    """Left-associated product of a non-empty context."""
    if not ctx:
        raise ValueError("phi of the empty context is undefined")
    acc = ctx[0]
    for A in ctx[1:]:
        acc = Product(acc, A)
    return acc


def act(A: Formula, delta: Sequence[Formula]) -> Formula:
    """Right action of a context on a formula: ``act(A, (D1, ..., Dk)) = (..(A*D1)..)*Dk``."""
    for B in delta:
        A = Product(A, B)
    return A


def psi(A: Formula) -> tuple[Formula, ...]:
    """Maximal decomposition: the left spine of ``A`` cut into an irreducible context."""
    rights = []
    while isinstance(A, Product):
        rights.append(A.right)
        A = A.left
    rights.append(A)
    rights.reverse()
    return tuple(rights)


def mirror(A: Formula) -> Formula:
    """Left/right reflection of the tree."""
    return fold(A, lambda a: a, lambda l, r: Product(r, l))


def shape(A: Formula) -> Formula:
    """``A`` with every atom renamed to ``x`` (the underlying unlabelled tree)."""
    x = Atom("x")
    return fold(A, lambda a: x, Product)


def right_rotations(A: Formula) -> list[Formula]:
    """All results of one right rotation ``(X*Y)*Z -> X*(Y*Z)`` at a single node of ``A``."""
    # results[i] holds the rotations of a subtree together with the subtree itself
    def on_atom(a):
        return a, []

    def on_product(left, right):
        L, left_rots = left
        R, right_rots = right
        node = Product(L, R)
        rots = [Product(x, R) for x in left_rots] + [Product(L, y) for y in right_rots]
        if isinstance(L, Product):
            rots.insert(0, Product(L.left, Product(L.right, R)))
        return node, rots

    return fold(A, on_atom, on_product)[1]
