"""Chain formulas, visibility triangles, and named constructions.

A chain is an x-monotone sequence of points whose consecutive edges appear
in every triangulation.  Every chain decomposes uniquely into an algebraic
formula built from the one-edge primitive chain ``E`` and two n-ary sums:
the convex sum (``v``, all cross edges above the curve) and the concave sum
(``^``, all cross edges below).  This module holds the canonical expression
trees, the parser/printer for the text grammar, flips, the visibility
triangle (the chain's order-type fingerprint), the inverse reconstruction
from a visibility triangle, exhaustive enumeration, and the named families
(convex/concave chains, double chain, zig-zags, Koch, poly/twin chains and
generalized double circles).

Formulas are hash-consed: structurally equal formulas are the same object,
so equality is identity and shared subterms are evaluated once downstream.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager
from typing import Iterable, Iterator

PRIM = 0
VEE = 1
WEDGE = 2

_KIND_NAME = {PRIM: "E", VEE: "vee", WEDGE: "wedge"}

#: Visibility triangles take quadratic memory; refuse beyond this size.
VISIBILITY_CAP = 4096

#: Exhaustive enumeration cap (counts grow like 5.83^n).
ENUMERATE_CAP = 12


class FormulaError(ValueError):
    """Invalid formula construction or reconstruction input."""


@contextmanager
def _deep_recursion(frames: int):
    # Degenerate staircase chains nest as deep as they are long.
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, frames))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


class CapExceededError(RuntimeError):
    """A configured resource cap was exceeded."""


class Formula:
    """Canonical chain formula node.

    ``kind`` is PRIM, VEE or WEDGE; composite nodes have at least two
    children and never a child of their own kind (associativity is kept
    flattened); flips are eliminated during construction.  ``n`` is the
    number of chain edges (primitive leaves, counted with multiplicity).

    Instances are interned: never construct directly, use :func:`prim`,
    :func:`vee`, :func:`wedge` or the builders.  Equality is identity.
    """

    __slots__ = ("kind", "children", "n")

    def __init__(self, kind: int, children: tuple):
        self.kind = kind
        self.children = children
        self.n = 1 if kind == PRIM else sum(c.n for c in children)

    def __repr__(self):
        return f"<chain n={self.n} {self}>"

    def __str__(self):
        return formula_to_text(self)

    def is_upward(self) -> bool:
        """True if the end-to-end edge lies on or above the chain curve."""
        return self.kind != WEDGE

    def is_downward(self) -> bool:
        return self.kind != VEE


_intern: dict = {}


def _node(kind: int, children: tuple) -> Formula:
    key = (kind, children)
    node = _intern.get(key)
    if node is None:
        node = Formula(kind, children)
        _intern[key] = node
    return node


_PRIM = _node(PRIM, ())


def prim() -> Formula:
    """The primitive one-edge chain ``E``."""
    return _PRIM


def _sum_node(kind: int, parts: Iterable[Formula]) -> Formula:
    children: list[Formula] = []
    for part in parts:
        if not isinstance(part, Formula):
            raise FormulaError(f"not a formula: {part!r}")
        if part.kind == kind:
            children.extend(part.children)
        else:
            children.append(part)
    if not children:
        raise FormulaError("a sum needs at least one operand")
    if len(children) == 1:
        return children[0]
    return _node(kind, tuple(children))


def vee(*parts: Formula) -> Formula:
    """Convex sum; same-kind children are merged so the result is canonical."""
    return _sum_node(VEE, parts)


def wedge(*parts: Formula) -> Formula:
    """Concave sum, the downward counterpart of :func:`vee`."""
    return _sum_node(WEDGE, parts)


def vee_all(parts: Iterable[Formula]) -> Formula:
    return _sum_node(VEE, parts)


def wedge_all(parts: Iterable[Formula]) -> Formula:
    return _sum_node(WEDGE, parts)


def flip(f: Formula) -> Formula:
    """The chain reflected across the x-axis.

    Swaps convex and concave sums throughout (``flip(E) = E``); applying it
    twice gives back the identical object.  Works on the shared DAG with a
    memo, so deep repetitive formulas stay cheap.
    """
    memo: dict[Formula, Formula] = {}
    stack = [f]
    while stack:
        node = stack[-1]
        if node in memo:
            stack.pop()
            continue
        if node.kind == PRIM:
            memo[node] = node
            stack.pop()
            continue
        todo = [c for c in node.children if c not in memo]
        if todo:
            stack.extend(todo)
            continue
        kind = WEDGE if node.kind == VEE else VEE
        memo[node] = _node(kind, tuple(memo[c] for c in node.children))
        stack.pop()
    return memo[f]


# ---------------------------------------------------------------------------
# Named constructions
# ---------------------------------------------------------------------------

def vex(n: int) -> Formula:
    """Convex chain: n+1 points in convex position, curving upward."""
    if n < 1:
        raise FormulaError("vex needs n >= 1")
    return _PRIM if n == 1 else _node(VEE, (_PRIM,) * n)


def cave(n: int) -> Formula:
    """Concave chain, the flip of :func:`vex`."""
    if n < 1:
        raise FormulaError("cave needs n >= 1")
    return _PRIM if n == 1 else _node(WEDGE, (_PRIM,) * n)


def double_chain(k: int) -> Formula:
    """Two concave arcs facing each other over a middle edge (n = 2k+1)."""
    if k < 1:
        raise FormulaError("double_chain needs k >= 1")
    return vee(cave(k), _PRIM, cave(k))


def zigzag(k: int) -> Formula:
    """Convex sum of k two-edge concave hats (n = 2k)."""
    if k < 1:
        raise FormulaError("zigzag needs k >= 1")
    return vee_all([cave(2)] * k)


def double_zigzag(k: int) -> Formula:
    """Two flipped zig-zags joined by a middle edge (n = 4k+1)."""
    if k < 1:
        raise FormulaError("double_zigzag needs k >= 1")
    wing = flip(zigzag(k))
    return vee(wing, _PRIM, wing)


def koch(s: int) -> Formula:
    """Koch chain: level s is the convex sum of two flipped copies of
    level s-1 (n = 2**s)."""
    if s < 0:
        raise FormulaError("koch needs s >= 0")
    cur = _PRIM
    for _ in range(s):
        f = flip(cur)
        cur = vee(f, f)
    return cur


def poly(base: Formula, copies: int) -> Formula:
    """Convex sum of ``copies`` flipped copies of ``base`` (n = copies*m)."""
    if copies < 1:
        raise FormulaError("poly needs copies >= 1")
    return vee_all([flip(base)] * copies)


def twin(base: Formula, copies: int) -> Formula:
    """Two flipped poly chains facing each other over a middle edge
    (n = 2*copies*m + 1)."""
    if copies < 1:
        raise FormulaError("twin needs copies >= 1")
    wing = flip(poly(base, copies))
    return vee(wing, _PRIM, wing)


def gdc(*counts: int) -> Formula:
    """Generalized double circle: convex sum of poly-convex chains, where
    ``counts[k-1]`` copies of the k-edge concave chain are used."""
    if not counts:
        raise FormulaError("gdc needs at least one count")
    if any(c < 0 for c in counts) or all(c == 0 for c in counts):
        raise FormulaError("gdc needs nonnegative counts, at least one nonzero")
    parts: list[Formula] = []
    for k, c in enumerate(counts, start=1):
        parts.extend([cave(k)] * c)
    return vee_all(parts)


# ---------------------------------------------------------------------------
# Visibility triangles
# ---------------------------------------------------------------------------

class VisibilityTriangle:
    """Signs of all point-pair edges relative to the chain curve.

    Entry (i, j) for 0 <= i < j <= n is +1 if the edge lies above the
    curve, -1 if below, and 0 exactly on the chain edges (j = i+1).
    Stored densely as one byte per entry.
    """

    __slots__ = ("n", "_data")

    _ENC = {0: 0, 1: 1, -1: 2}
    _DEC = (0, 1, -1)

    def __init__(self, n: int, data: bytearray):
        self.n = n
        self._data = data

    @classmethod
    def blank(cls, n: int) -> "VisibilityTriangle":
        return cls(n, bytearray(n * (n + 1) // 2))

    def _pos(self, i: int, j: int) -> int:
        # Row i holds entries j = i+1 .. n.
        n = self.n
        return i * (2 * n - i + 1) // 2 + (j - i - 1)

    def sign(self, i: int, j: int) -> int:
        if not 0 <= i < j <= self.n:
            raise IndexError(f"bad entry ({i}, {j})")
        return self._DEC[self._data[self._pos(i, j)]]

    def _set(self, i: int, j: int, value: int):
        self._data[self._pos(i, j)] = self._ENC[value]

    def __eq__(self, other):
        if not isinstance(other, VisibilityTriangle):
            return NotImplemented
        return self.n == other.n and self._data == other._data

    def __hash__(self):
        return hash((self.n, bytes(self._data)))

    def rows(self) -> list[list[int]]:
        """Row i as the list of signs for j = i+1 .. n."""
        return [[self.sign(i, j) for j in range(i + 1, self.n + 1)]
                for i in range(self.n)]

    def negate(self) -> "VisibilityTriangle":
        flipped = bytearray(self._data)
        for idx, b in enumerate(flipped):
            if b:
                flipped[idx] = 3 - b
        return VisibilityTriangle(self.n, flipped)

    def __repr__(self):
        return f"<visibility n={self.n}>"


def visibility(f: Formula, cap: int = VISIBILITY_CAP) -> VisibilityTriangle:
    """Assemble the visibility triangle of a chain.

    Entries inside a child block are recursively the child's entries; an
    entry spanning two different children of a convex (concave) sum is
    +1 (-1).  Every entry is written exactly once, so the cost is O(n^2).
    """
    if f.n > cap:
        raise CapExceededError(f"visibility needs n <= {cap}, got {f.n}")
    n = f.n
    tri = VisibilityTriangle.blank(n)
    data = tri._data
    stack: list[tuple[Formula, int]] = [(f, 0)]
    while stack:
        node, lo = stack.pop()
        if node.kind == PRIM:
            continue
        byte = 1 if node.kind == VEE else 2
        hi = lo + node.n
        off = lo
        for child in node.children:
            right = off + child.n
            # Pairs (i, j) with i inside this child's half-open span and j
            # beyond its right endpoint straddle a summand boundary.  Row
            # entries are contiguous, so fill them with slices.
            if right < hi:
                run = bytes([byte]) * (hi - right)
                for i in range(off, right):
                    start = i * (2 * n - i + 1) // 2 + (right - i)
                    data[start:start + hi - right] = run
            if child.kind != PRIM:
                stack.append((child, off))
            off = right
    return tri


def formula_from_visibility(tri: VisibilityTriangle) -> Formula:
    """Reconstruct the unique canonical formula with this visibility triangle.

    An upward span splits at exactly the indices below every spanning edge
    (its lower convex hull); downward spans split dually.  Raises
    FormulaError if no chain has this triangle.
    """
    n = tri.n
    if n < 1:
        raise FormulaError("empty triangle")
    for i in range(n):
        if tri.sign(i, i + 1) != 0:
            raise FormulaError(f"chain-edge entry ({i},{i + 1}) must be 0")
        for j in range(i + 2, n + 1):
            if tri.sign(i, j) == 0:
                raise FormulaError(f"off-chain entry ({i},{j}) must be nonzero")

    def build(a: int, b: int) -> Formula:
        if b - a == 1:
            return _PRIM
        sign = tri.sign(a, b)
        # forbid[m] > 0 when some entry (x, y) with x < m < y disagrees.
        forbid = [0] * (b - a + 1)
        for x in range(a, b):
            for y in range(x + 2, b + 1):
                if tri.sign(x, y) != sign:
                    forbid[x - a + 1] += 1
                    forbid[y - a] -= 1
        splits = [a]
        acc = 0
        for m in range(a + 1, b):
            acc += forbid[m - a]
            if acc == 0:
                splits.append(m)
        splits.append(b)
        if len(splits) < 3:
            raise FormulaError(
                f"span ({a},{b}) admits no decomposition; not a chain triangle")
        parts = [build(x, y) for x, y in zip(splits, splits[1:])]
        return vee_all(parts) if sign == 1 else wedge_all(parts)

    with _deep_recursion(4 * n + 200):
        result = build(0, n)
    if visibility(result) != tri:
        raise FormulaError("triangle is not realizable by any chain")
    return result


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

_upward_lists: dict[int, list[Formula]] = {}
_downward_lists: dict[int, list[Formula]] = {}


def _compositions(n: int, min_parts: int) -> Iterator[tuple[int, ...]]:
    # Lexicographic by first part; parts >= 1.
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first, 1):
            if first == n and min_parts > 1:
                continue
            yield (first,) + rest


def _sum_rooted(kind: int, n: int) -> Iterator[Formula]:
    child_lists = _downward_chains if kind == VEE else _upward_chains
    for comp in _compositions(n, 2):
        parts = [child_lists(p) for p in comp]
        idx = [0] * len(parts)
        while True:
            yield _node(kind, tuple(parts[i][idx[i]] for i in range(len(parts))))
            pos = len(parts) - 1
            while pos >= 0:
                idx[pos] += 1
                if idx[pos] < len(parts[pos]):
                    break
                idx[pos] = 0
                pos -= 1
            if pos < 0:
                break


def _upward_chains(n: int) -> list[Formula]:
    """Chains usable as concave-sum children: E or convex-rooted."""
    cached = _upward_lists.get(n)
    if cached is None:
        cached = [_PRIM] if n == 1 else list(_sum_rooted(VEE, n))
        _upward_lists[n] = cached
    return cached


def _downward_chains(n: int) -> list[Formula]:
    """Chains usable as convex-sum children: E or concave-rooted."""
    cached = _downward_lists.get(n)
    if cached is None:
        cached = [_PRIM] if n == 1 else list(_sum_rooted(WEDGE, n))
        _downward_lists[n] = cached
    return cached


def enumerate_chains(n: int, cap: int = ENUMERATE_CAP) -> Iterator[Formula]:
    """All canonical chains with n chain edges, each exactly once.

    Deterministic order: convex-rooted chains first (by composition of n,
    lexicographic), then concave-rooted.  Counts follow the large Schroeder
    numbers; the upward half follows the little Schroeder numbers.
    """
    if n < 1:
        raise FormulaError("enumeration needs n >= 1")
    if n > cap:
        raise CapExceededError(f"enumeration capped at n <= {cap}")
    if n == 1:
        yield _PRIM
        return
    yield from _sum_rooted(VEE, n)
    yield from _sum_rooted(WEDGE, n)


def schroeder_large(k: int) -> int:
    """Number of chains with k+1 chain edges (large Schroeder numbers)."""
    if k < 0:
        raise ValueError("index must be nonnegative")
    vals = [1, 2]
    if k < 2:
        return vals[k]
    for i in range(1, k):
        nxt = (3 * (2 * i + 1) * vals[i] - (i - 1) * vals[i - 1]) // (i + 2)
        vals.append(nxt)
    return vals[k]


def schroeder_little(k: int) -> int:
    """Number of upward chains with k+1 chain edges."""
    s = schroeder_large(k)
    return s if k == 0 else s // 2


# ---------------------------------------------------------------------------
# Text grammar
# ---------------------------------------------------------------------------

class ParseError(ValueError):
    """Formula text rejected; ``position`` is the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_FUNCTIONS = {
    "flip": ("formula",),
    "vex": ("int",),
    "cave": ("int",),
    "koch": ("int",),
    "dc": ("int",),
    "zz": ("int",),
    "dzz": ("int",),
    "poly": ("formula", "int"),
    "twin": ("formula", "int"),
    "gdc": ("ints",),
}

_BUILDERS = {
    "flip": flip,
    "vex": vex,
    "cave": cave,
    "koch": koch,
    "dc": double_chain,
    "zz": zigzag,
    "dzz": double_zigzag,
    "poly": poly,
    "twin": twin,
    "gdc": gdc,
}


def _tokenize(text: str):
    tokens = []
    i, size = 0, len(text)
    while i < size:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()^,":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < size and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < size and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, size))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> Formula:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return result

    def expr(self) -> Formula:
        parts = [self.atom()]
        op = None
        while True:
            tok = self.peek()
            if tok[0] == "^" or (tok[0] == "name" and tok[1] == "v"):
                this_op = "^" if tok[0] == "^" else "v"
                if op is None:
                    op = this_op
                elif op != this_op:
                    raise ParseError(
                        "mixed 'v' and '^' need parentheses", tok[2])
                self.take()
                parts.append(self.atom())
            else:
                break
        if op is None:
            return parts[0]
        return vee_all(parts) if op == "v" else wedge_all(parts)

    def atom(self) -> Formula:
        tok = self.take()
        if tok[0] == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if tok[0] == "name":
            name = tok[1]
            if name == "E":
                return _PRIM
            if name == "v":
                raise ParseError("'v' is an operator, not an operand", tok[2])
            if name not in _FUNCTIONS:
                raise ParseError(f"unknown function {name!r}", tok[2])
            return self.call(name, tok[2])
        raise ParseError(f"expected a formula, found {tok[1]!r}", tok[2])

    def call(self, name: str, at: int) -> Formula:
        sig = _FUNCTIONS[name]
        self.expect("(")
        args = []
        if sig == ("ints",):
            args.append(self.expect("int")[1])
            while self.peek()[0] == ",":
                self.take()
                args.append(self.expect("int")[1])
        else:
            for pos, want in enumerate(sig):
                if pos:
                    self.expect(",")
                if want == "int":
                    args.append(self.expect("int")[1])
                else:
                    args.append(self.expr())
        self.expect(")")
        try:
            if sig == ("ints",):
                return _BUILDERS[name](*args)
            return _BUILDERS[name](*args)
        except FormulaError as exc:
            raise ParseError(f"{name}: {exc}", at) from None


def parse_formula(text: str) -> Formula:
    """Parse the chain grammar; the result is canonical, and printing then
    re-parsing is a fixed point."""
    parser = _Parser(text)
    with _deep_recursion(4 * len(parser.tokens) + 200):
        return parser.parse()


def formula_to_text(f: Formula) -> str:
    """Canonical textual form using only E, 'v', '^' and parentheses."""
    out: list[str] = []

    def emit(node: Formula, parenthesize: bool):
        if node.kind == PRIM:
            out.append("E")
            return
        if parenthesize:
            out.append("(")
        op = " v " if node.kind == VEE else " ^ "
        for i, child in enumerate(node.children):
            if i:
                out.append(op)
            emit(child, child.kind != PRIM)
        if parenthesize:
            out.append(")")

    emit(f, False)
    return "".join(out)
