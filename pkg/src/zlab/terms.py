"""Terms over the signature (->, 0): parsing, printing and associative-type identities.

Terms are immutable trees of :class:`Var`, :class:`Zero` and :class:`Arrow`.
The surface syntax also accepts ``x'`` (meaning ``x -> 0``) and ``x & y``
(meaning ``(x -> y')'``); both are expanded while parsing, so nothing
downstream has to know about them.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Arrow:
    left: "Term"
    right: "Term"


Term = Union[Var, Zero, Arrow]

ZERO = Zero()


def prime(t: Term) -> Term:
    return Arrow(t, ZERO)


def meet(a: Term, b: Term) -> Term:
    return prime(Arrow(a, prime(b)))


class Identity:
    """An equation ``lhs = rhs``.

    Equality and hashing ignore the orientation, so ``Identity(p, q) ==
    Identity(q, p)``.  The sides are still kept in the order given for printing.
    """

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs: Term, rhs: Term):
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)

    def __setattr__(self, key, value):
        raise AttributeError("Identity is immutable")

    def __eq__(self, other):
        if not isinstance(other, Identity):
            return NotImplemented
        return (self.lhs == other.lhs and self.rhs == other.rhs) or (
            self.lhs == other.rhs and self.rhs == other.lhs
        )

    def __hash__(self):
        return hash(frozenset((self.lhs, self.rhs)))

    def __repr__(self):
        return f"Identity({render_term(self.lhs, pretty=True)!r} = {render_term(self.rhs, pretty=True)!r})"

    def __getstate__(self):
        return (self.lhs, self.rhs)

    def __setstate__(self, state):
        object.__setattr__(self, "lhs", state[0])
        object.__setattr__(self, "rhs", state[1])

    def swapped(self) -> "Identity":
        return Identity(self.rhs, self.lhs)

    @property
    def variables(self) -> list[str]:
        return sorted(term_variables(self.lhs) | term_variables(self.rhs))


def term_variables(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.name)
        elif isinstance(node, Arrow):
            stack.append(node.left)
            stack.append(node.right)
    return out


# --------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    """Syntax error; ``offset`` is the byte offset into the UTF-8 input."""

    def __init__(self, message: str, text: str, pos: int):
        self.offset = len(text[:pos].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset}")


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<arrow>->)
  | (?P<eq>=|≈)
  | (?P<var>[a-z][a-z0-9]*)
  | (?P<zero>0)
  | (?P<sym>[()&'])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unknown token {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            tokens.append((value if kind == "sym" else kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            found = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {found!r}", self.text, tok[2])
        self.i += 1
        return tok

    def term(self) -> Term:
        left = self.meet()
        if self.peek() == "arrow":
            self.i += 1
            return Arrow(left, self.term())
        return left

    def meet(self) -> Term:
        t = self.post()
        while self.peek() == "&":
            self.i += 1
            t = meet(t, self.post())
        return t

    def post(self) -> Term:
        t = self.atom()
        while self.peek() == "'":
            self.i += 1
            t = prime(t)
        return t

    def atom(self) -> Term:
        kind, value, pos = self.tokens[self.i]
        if kind == "var":
            self.i += 1
            return Var(value)
        if kind == "zero":
            self.i += 1
            return ZERO
        if kind == "(":
            self.i += 1
            t = self.term()
            self.take(")")
            return t
        raise ParseError(f"unexpected {value or 'end of input'!r}", self.text, pos)

    def end(self):
        self.take("eof")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.end()
    return t


def parse_identity(text: str) -> Identity:
    p = _Parser(text)
    lhs = p.term()
    p.take("eq")
    rhs = p.term()
    p.end()
    return Identity(lhs, rhs)


# --------------------------------------------------------------------------
# printing

def render_term(t: Term, pretty: bool = False) -> str:
    """Print a term.

    The default form is fully parenthesised (``(x -> 0)``) and is what machine
    reports use.  ``pretty=True`` gives the compact human form with primes and
    right-associated arrows (``x' -> y -> z``).  Both re-parse to ``t``.
    """
    if not pretty:
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Zero):
            return "0"
        return f"({render_term(t.left)} -> {render_term(t.right)})"
    return _pretty(t)


def _pretty_post(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t.right, Zero):
        return _pretty_post(t.left) + "'"
    return f"({_pretty(t)})"


def _pretty(t: Term) -> str:
    if isinstance(t, Arrow) and not isinstance(t.right, Zero):
        return f"{_pretty_post(t.left)} -> {_pretty(t.right)}"
    return _pretty_post(t)


def render_identity(ident: Identity, pretty: bool = False) -> str:
    return f"{render_term(ident.lhs, pretty)} = {render_term(ident.rhs, pretty)}"


# --------------------------------------------------------------------------
# canonical ordering, renaming, classification

XYZ = ("x", "y", "z")


def term_key(t: Term) -> tuple:
    """Preorder token sequence; tokens order as 0 < variables (by name) < ->."""
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Zero):
            out.append((0, ""))
        elif isinstance(node, Var):
            out.append((1, node.name))
        else:
            out.append((2, ""))
            stack.append(node.right)
            stack.append(node.left)
    return tuple(out)


def rename(t: Term, mapping: dict[str, str]) -> Term:
    if isinstance(t, Var):
        return Var(mapping.get(t.name, t.name))
    if isinstance(t, Zero):
        return t
    return Arrow(rename(t.left, mapping), rename(t.right, mapping))


def rename_identity(ident: Identity, mapping: dict[str, str]) -> Identity:
    return Identity(rename(ident.lhs, mapping), rename(ident.rhs, mapping))


def renamings(names: Iterable[str] = XYZ) -> list[dict[str, str]]:
    names = tuple(names)
    return [dict(zip(names, perm)) for perm in itertools.permutations(names)]


def _identity_key(ident: Identity) -> tuple:
    a, b = term_key(ident.lhs), term_key(ident.rhs)
    return (a, b) if a <= b else (b, a)


def canonical_identity(ident: Identity) -> Identity:
    """Least orientation and renaming of ``ident`` over the alphabet {x, y, z}."""
    extra = set(ident.variables) - set(XYZ)
    if extra:
        raise ValueError(f"variables outside {{x, y, z}}: {sorted(extra)}")
    best = None
    best_key = None
    for sigma in renamings():
        cand = rename_identity(ident, sigma)
        key = _identity_key(cand)
        if best_key is None or key < best_key:
            best_key = key
            best = cand
    assert best is not None
    if term_key(best.lhs) > term_key(best.rhs):
        best = best.swapped()
    return best


def identity_sort_key(ident: Identity) -> tuple:
    return _identity_key(ident)


def generate_associative_terms(variables: Iterable[str] = XYZ) -> list[Term]:
    """The 12 terms a -> (b -> c) and (a -> b) -> c, for (a, b, c) ranging over
    the permutations of ``variables`` in lexicographic position order."""
    variables = tuple(variables)
    if len(variables) != 3 or len(set(variables)) != 3:
        raise ValueError("exactly three distinct variables are required")
    out: list[Term] = []
    for a, b, c in itertools.permutations(variables):
        va, vb, vc = Var(a), Var(b), Var(c)
        out.append(Arrow(va, Arrow(vb, vc)))
        out.append(Arrow(Arrow(va, vb), vc))
    return out


def generate_associative_identities() -> list[Identity]:
    terms = generate_associative_terms()
    return [Identity(p, q) for p, q in itertools.combinations(terms, 2)]


SIGMA_TEXT = {
    "A1": "x -> (y -> z) = (x -> y) -> z",
    "A2": "x -> (y -> z) = x -> (z -> y)",
    "A3": "x -> (y -> z) = (x -> z) -> y",
    "A4": "x -> (y -> z) = y -> (x -> z)",
    "A5": "x -> (y -> z) = (y -> x) -> z",
    "A6": "x -> (y -> z) = y -> (z -> x)",
    "A7": "x -> (y -> z) = (y -> z) -> x",
    "A8": "x -> (y -> z) = (z -> x) -> y",
    "A9": "x -> (y -> z) = z -> (y -> x)",
    "A10": "x -> (y -> z) = (z -> y) -> x",
    "A11": "(x -> y) -> z = (x -> z) -> y",
    "A12": "(x -> y) -> z = (y -> x) -> z",
    "A13": "(x -> y) -> z = (y -> z) -> x",
    "A14": "(x -> y) -> z = (z -> y) -> x",
}

SIGMA: dict[str, Identity] = {k: parse_identity(v) for k, v in SIGMA_TEXT.items()}


@dataclass
class IdentityClass:
    canonical: Identity
    members: list[Identity]
    sigma_label: str | None = None


def classify_identities(identities: Iterable[Identity]) -> list[IdentityClass]:
    groups: dict[Identity, list[Identity]] = {}
    for ident in identities:
        groups.setdefault(canonical_identity(ident), []).append(ident)
    labels = {canonical_identity(v): k for k, v in SIGMA.items()}
    classes = [IdentityClass(c, members, labels.get(c)) for c, members in groups.items()]

    def order(cls: IdentityClass):
        if cls.sigma_label is not None:
            return (0, int(cls.sigma_label[1:]), ())
        return (1, 0, identity_sort_key(cls.canonical))

    classes.sort(key=order)
    return classes
