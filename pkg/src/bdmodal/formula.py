"""Formula syntax for the Belnap-Dunn modal languages.

Formulas are immutable trees built from variables, ``~``, ``&``, ``|`` and the
three modal constructors ``[]`` (Box), ``[*]`` (BBox, knowledge/belief) and
``I`` (ignorance).  ``Tri`` (knowing-whether) is a fourth unary node that the
evaluator understands natively; it is never rewritten into ``[*]``.

The concrete grammar, precedence low to high::

    sequent  := formula "|-" formula
    formula  := conj ("|" conj)*
    conj     := unary ("&" unary)*
    unary    := op unary | atom | "(" formula ")"
    op       := "~" | "[]" | "[*]" | "<>" | "<*>" | "I" | "Tri" | "NTri" | "Acc"

``<>``, ``<*>``, ``Acc`` and ``NTri`` are shorthands and are expanded while
parsing.  Unicode aliases (``¬ ∧ ∨ □ ■ ◇ ♦ ▲ ▼ • ⊢``) are accepted on input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union


class Formula:
    """Base class of all formula nodes.

    Equality is structural; hashes are computed once at construction since
    formulas are used heavily as dictionary keys by the prover and evaluator.
    """

    __slots__ = ()

    def _args(self) -> tuple:
        return tuple(getattr(self, name) for name in self.__match_args__)

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._args() == other._args()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return self._hash

    def __str__(self):
        return to_text(self)

    @property
    def children(self) -> tuple[Formula, ...]:
        return ()


@dataclass(frozen=True, slots=True, eq=False)
class Var(Formula):
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("Var", self.name)))


@dataclass(frozen=True, slots=True, eq=False)
class _Unary(Formula):
    sub: Formula
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.sub._hash)))

    @property
    def children(self):
        return (self.sub,)


@dataclass(frozen=True, slots=True, eq=False)
class _Binary(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash((type(self).__name__, self.left._hash, self.right._hash))
        )

    @property
    def children(self):
        return (self.left, self.right)


class Neg(_Unary):
    __slots__ = ()


class Box(_Unary):
    """Standard necessity: truth everywhere accessible, falsity somewhere."""

    __slots__ = ()


class BBox(_Unary):
    """Knowledge/belief: like Box plus a uniform Belnapian value across successors."""

    __slots__ = ()


class Ign(_Unary):
    """Factive ignorance, evaluated over strict successors."""

    __slots__ = ()


class Tri(_Unary):
    """Knowing-whether (non-contingency)."""

    __slots__ = ()


class And(_Binary):
    __slots__ = ()


class Or(_Binary):
    __slots__ = ()


MODAL_CONSTRUCTORS = (Box, BBox, Ign, Tri)


@dataclass(frozen=True)
class Sequent:
    """Single-premise, single-conclusion consequence ``lhs |- rhs``."""

    lhs: Formula
    rhs: Formula

    def __str__(self):
        return f"{to_text(self.lhs)} |- {to_text(self.rhs)}"


# -- signatures ----------------------------------------------------------------

Signature = frozenset

PROP = Signature()
L_BOX = Signature({Box})
L_BBOX = Signature({BBox})
L_IGN = Signature({Ign})
L_BBOX_IGN = Signature({BBox, Ign})
L_ALL = Signature({Box, BBox, Ign})

_SIG_NAMES = {"Box": Box, "BBox": BBox, "Ign": Ign, "Tri": Tri}


def signature(*names: str) -> frozenset:
    """Build a signature from constructor names, e.g. ``signature("BBox", "Ign")``."""
    try:
        return Signature(_SIG_NAMES[n] for n in names)
    except KeyError as exc:
        raise ValueError(f"unknown modal constructor {exc.args[0]!r}") from None


def signature_names(sig) -> list[str]:
    return [n for n, cls in _SIG_NAMES.items() if cls in sig]


# -- derived operators -----------------------------------------------------------

def diamond(phi: Formula) -> Formula:
    return Neg(Box(Neg(phi)))


def bdiamond(phi: Formula) -> Formula:
    return Neg(BBox(Neg(phi)))


def accident(phi: Formula) -> Formula:
    """Unknown truth: ``phi & ~[*]phi``."""
    return And(phi, Neg(BBox(phi)))


def ntri(phi: Formula) -> Formula:
    return Neg(Tri(phi))


_DERIVED = {
    "<>": diamond, "◇": diamond, "Dia": diamond,
    "<*>": bdiamond, "♦": bdiamond, "BDia": bdiamond,
    "Acc": accident, "•": accident,
    "NTri": ntri, "▼": ntri,
}


def expand_derived(op: str, phi: Formula) -> Formula:
    """Rewrite a shorthand operator applied to ``phi`` into core syntax."""
    try:
        return _DERIVED[op](phi)
    except KeyError:
        raise ValueError(f"{op!r} is not a derived operator") from None


# -- structural utilities ------------------------------------------------------------

def subformulas(phi: Formula) -> tuple[Formula, ...]:
    """All subformulas of ``phi`` (itself included), deduplicated, in post-order."""
    seen: dict[Formula, None] = {}

    def walk(f):
        if f in seen:
            return
        for c in f.children:
            walk(c)
        seen[f] = None

    walk(phi)
    return tuple(seen)


def size(phi: Formula) -> int:
    """Node count."""
    return 1 + sum(size(c) for c in phi.children)


def modal_depth(phi: Formula) -> int:
    inner = max((modal_depth(c) for c in phi.children), default=0)
    return inner + 1 if isinstance(phi, MODAL_CONSTRUCTORS) else inner


def atoms(phi: Formula | Sequent) -> list[str]:
    """Variable names occurring in ``phi``, sorted."""
    if isinstance(phi, Sequent):
        return sorted(set(atoms(phi.lhs)) | set(atoms(phi.rhs)))
    return sorted({f.name for f in subformulas(phi) if isinstance(f, Var)})


def constructors(phi: Formula) -> set[type]:
    return {type(f) for f in subformulas(phi) if isinstance(f, MODAL_CONSTRUCTORS)}


def in_fragment(phi: Formula | Sequent, sig) -> bool:
    """True iff every modal constructor used in ``phi`` belongs to ``sig``."""
    if isinstance(phi, Sequent):
        return in_fragment(phi.lhs, sig) and in_fragment(phi.rhs, sig)
    return constructors(phi) <= set(sig)


# -- printing ------------------------------------------------------------------

_ASCII = {Neg: "~", Box: "[]", BBox: "[*]", Ign: "I", Tri: "Tri "}
_UNICODE = {Neg: "¬", Box: "□", BBox: "■", Ign: "I", Tri: "▲"}
_PREC = {Or: 1, And: 2}


def _render(phi: Formula, ops: dict, and_sym: str, or_sym: str) -> str:
    def go(f, ctx):
        if isinstance(f, Var):
            return f.name
        if isinstance(f, _Unary):
            return ops[type(f)] + go(f.sub, 3)
        prec = _PREC[type(f)]
        sym = and_sym if isinstance(f, And) else or_sym
        text = f"{go(f.left, prec)} {sym} {go(f.right, prec + 1)}"
        return f"({text})" if prec < ctx else text

    return go(phi, 0)


def to_text(phi: Formula | Sequent) -> str:
    """ASCII rendering with minimal parentheses; ``parse`` reads it back."""
    if isinstance(phi, Sequent):
        return str(phi)
    return _render(phi, _ASCII, "&", "|")


def to_unicode(phi: Formula | Sequent) -> str:
    if isinstance(phi, Sequent):
        return f"{to_unicode(phi.lhs)} ⊢ {to_unicode(phi.rhs)}"
    return _render(phi, _UNICODE, "∧", "∨")


# -- parsing -------------------------------------------------------------------

class ParseError(ValueError):
    """Syntax error; ``offset`` is a byte offset into the UTF-8 encoded input."""

    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"; expected one of {', '.join(sorted(self.expected))}" if self.expected else ""
        super().__init__(f"syntax error at offset {offset}: {message}{detail}")


@dataclass(frozen=True)
class Token:
    kind: str  # ATOM, OP, AND, OR, LPAREN, RPAREN, TURNSTILE, EOF
    text: str
    offset: int


# Longest symbols first so that "|-" wins over "|" and "[*]" over "[".
_SYMBOLS = [
    ("|-", "TURNSTILE"), ("[*]", "OP"), ("<*>", "OP"), ("[]", "OP"), ("<>", "OP"),
    ("~", "OP"), ("&", "AND"), ("|", "OR"), ("(", "LPAREN"), (")", "RPAREN"),
    ("⊢", "TURNSTILE"), ("¬", "OP"), ("∧", "AND"), ("∨", "OR"), ("□", "OP"),
    ("■", "OP"), ("◇", "OP"), ("♦", "OP"), ("▲", "OP"), ("▼", "OP"), ("•", "OP"),
]
_KEYWORDS = ["NTri", "Tri", "Acc", "I"]
_ATOM = re.compile(r"[a-z][A-Za-z0-9_]*")

_CORE_OPS = {
    "~": Neg, "¬": Neg, "[]": Box, "□": Box, "[*]": BBox, "■": BBox,
    "I": Ign, "Tri": Tri, "▲": Tri,
}

_UNARY_START = {"~", "[]", "[*]", "<>", "<*>", "I", "Tri", "NTri", "Acc", "atom", "("}


def tokenize(text: str) -> Iterator[Token]:
    i, n = 0, len(text)
    byte = 0

    def advance(k):
        nonlocal i, byte
        byte += len(text[i:i + k].encode("utf-8"))
        i += k

    while i < n:
        ch = text[i]
        if ch.isspace():
            advance(1)
            continue
        for sym, kind in _SYMBOLS:
            if text.startswith(sym, i):
                yield Token(kind, sym, byte)
                advance(len(sym))
                break
        else:
            kw = next((k for k in _KEYWORDS if text.startswith(k, i)), None)
            if kw is not None:
                yield Token("OP", kw, byte)
                advance(len(kw))
                continue
            m = _ATOM.match(text, i)
            if m is None:
                raise ParseError(f"unexpected character {ch!r}", byte)
            yield Token("ATOM", m.group(), byte)
            advance(len(m.group()))
    yield Token("EOF", "", byte)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected):
        t = self.tok
        got = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ParseError(f"unexpected {got}", t.offset, expected)

    def top(self):
        lhs = self.formula()
        if self.tok.kind == "TURNSTILE":
            self.pos += 1
            rhs = self.formula()
            result = Sequent(lhs, rhs)
            if self.tok.kind != "EOF":
                self.fail({"&", "|", "end of input"})
            return result
        if self.tok.kind != "EOF":
            self.fail({"&", "|", "|-", "end of input"})
        return lhs

    def formula(self):
        left = self.conj()
        while self.tok.kind == "OR":
            self.pos += 1
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.tok.kind == "AND":
            self.pos += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        t = self.tok
        if t.kind == "OP":
            self.pos += 1
            sub = self.unary()
            if t.text in _CORE_OPS:
                return _CORE_OPS[t.text](sub)
            return expand_derived(t.text, sub)
        if t.kind == "ATOM":
            self.pos += 1
            return Var(t.text)
        if t.kind == "LPAREN":
            self.pos += 1
            inner = self.formula()
            if self.tok.kind != "RPAREN":
                self.fail({")", "&", "|"})
            self.pos += 1
            return inner
        self.fail(_UNARY_START)


def parse(text: str) -> Union[Formula, Sequent]:
    """Parse a formula or a sequent ``phi |- chi``."""
    return _Parser(text).top()


def parse_formula(text: str) -> Formula:
    result = parse(text)
    if isinstance(result, Sequent):
        raise ParseError("expected a formula, found a sequent", 0)
    return result


def parse_sequent(text: str) -> Sequent:
    result = parse(text)
    if not isinstance(result, Sequent):
        raise ParseError("expected a sequent 'phi |- chi'", len(text.encode("utf-8")), {"|-"})
    return result
