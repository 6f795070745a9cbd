"""Labelled analytic-cut tableaux for the ■/I fragment, with countermodel extraction.

A branch holds signed formulas ``w:φ;v`` and relational atoms ``wRu``.  The
four signs read: ``t`` the formula is truth-supported at ``w``, ``f`` it is
falsity-supported, ``tbar`` it is not truth-supported, ``fbar`` it is not
falsity-supported.  A branch closes on ``t``/``tbar`` or ``f``/``fbar``;
``t`` together with ``f`` is a consistent glut.

Search strategy, per branch:

1. exhaust the non-branching rules;
2. apply a cut, but only where a two-premise rule or a realisation step
   needs the side formula decided;
3. fire a fresh-world rule whose completeness condition is still unmet;
4. otherwise the branch is complete: read off a model and re-check every
   signed formula on it.

Branches are explored depth first, columns left to right, and the search
stops at the first complete open branch.  World labels are integers printed
as ``w0, w1, ...``; fresh labels are allocated in creation order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .formula import (
    And, BBox, Box, Formula, Ign, Neg, Or, Sequent, Tri, Var,
    atoms as formula_atoms, constructors, parse_formula, parse_sequent, to_text,
)
from .semantics import Frame, Model, PointedModel, eval_formula


class Sign(enum.Enum):
    T = "t"
    F = "f"
    TBAR = "tbar"
    FBAR = "fbar"

    @property
    def complement(self) -> Sign:
        return _COMPLEMENT[self]

    @property
    def negated(self) -> Sign:
        """Sign carried over to the operand of a negation."""
        return _NEGATED[self]

    @property
    def axis(self) -> Sign:
        """T for the truth signs, F for the falsity signs."""
        return Sign.T if self in (Sign.T, Sign.TBAR) else Sign.F

    def __str__(self):
        return self.value


_COMPLEMENT = {Sign.T: Sign.TBAR, Sign.TBAR: Sign.T, Sign.F: Sign.FBAR, Sign.FBAR: Sign.F}
_NEGATED = {Sign.T: Sign.F, Sign.F: Sign.T, Sign.TBAR: Sign.FBAR, Sign.FBAR: Sign.TBAR}
T, F, TBAR, FBAR = Sign.T, Sign.F, Sign.TBAR, Sign.FBAR


def label(w: int) -> str:
    return f"w{w}"


@dataclass(frozen=True, slots=True)
class SignedFormula:
    world: int
    formula: Formula
    sign: Sign

    def __str__(self):
        return f"{label(self.world)}: {to_text(self.formula)} ; {self.sign}"


@dataclass(frozen=True, slots=True)
class RelAtom:
    source: int
    target: int

    def __str__(self):
        return f"{label(self.source)} R {label(self.target)}"


Entry = Union[SignedFormula, RelAtom]


class UnsupportedFormula(ValueError):
    """The calculus has no rules for □ or ▲; use the oracle for those."""


class ResourceLimitExceeded(RuntimeError):
    def __init__(self, message: str, partial: ProofNode | None = None):
        super().__init__(message)
        self.partial = partial


class RealizationError(AssertionError):
    """A complete open branch did not verify on its own model (an engine bug)."""


# -- branches ----------------------------------------------------------------------

class Branch:
    """One tableau branch.  Mutated only by the engine; ``copy`` snapshots it."""

    __slots__ = ("signs", "items_at", "succ", "pred", "entries", "ledger", "closure", "dirty")

    def __init__(self):
        self.signs: dict[tuple[int, Formula], frozenset] = {}
        self.items_at: list[list[tuple[Formula, Sign]]] = []
        self.succ: list[list[int]] = []
        self.pred: list[list[int]] = []
        self.entries: list[Entry] = []
        self.ledger: set = set()
        self.closure: SignedFormula | None = None
        self.dirty: set[int] = set()

    @classmethod
    def root(cls, seq: Sequent) -> Branch:
        b = cls()
        b.new_world()
        b.add(SignedFormula(0, seq.lhs, T))
        b.add(SignedFormula(0, seq.rhs, TBAR))
        return b

    @classmethod
    def of(cls, entries) -> Branch:
        b = cls()
        for e in entries:
            top = max(e.source, e.target) if isinstance(e, RelAtom) else e.world
            while len(b.succ) <= top:
                b.new_world()
            b.add(e)
        return b

    def copy(self) -> Branch:
        b = Branch.__new__(Branch)
        b.signs = dict(self.signs)
        b.items_at = [list(x) for x in self.items_at]
        b.succ = [list(x) for x in self.succ]
        b.pred = [list(x) for x in self.pred]
        b.entries = list(self.entries)
        b.ledger = set(self.ledger)
        b.closure = self.closure
        b.dirty = set(self.dirty)
        return b

    @property
    def size(self) -> int:
        return len(self.succ)

    @property
    def closed(self) -> bool:
        return self.closure is not None

    def new_world(self) -> int:
        self.succ.append([])
        self.pred.append([])
        self.items_at.append([])
        return len(self.succ) - 1

    def has(self, w: int, phi: Formula, sign: Sign) -> bool:
        return sign in self.signs.get((w, phi), ())

    def decided(self, w: int, phi: Formula, axis: Sign) -> bool:
        got = self.signs.get((w, phi), ())
        return axis in got or axis.complement in got

    def add(self, entry: Entry) -> bool:
        """Add an entry; return False if it was already present."""
        if isinstance(entry, RelAtom):
            s, t = entry.source, entry.target
            if t in self.succ[s]:
                return False
            self.succ[s].append(t)
            self.pred[t].append(s)
            self.entries.append(entry)
            self.dirty.add(s)
            return True
        key = (entry.world, entry.formula)
        got = self.signs.get(key, frozenset())
        if entry.sign in got:
            return False
        self.signs[key] = got | {entry.sign}
        self.items_at[entry.world].append((entry.formula, entry.sign))
        self.entries.append(entry)
        if self.closure is None and entry.sign.complement in got:
            self.closure = SignedFormula(entry.world, entry.formula, entry.sign.axis)
        self.dirty.add(entry.world)
        self.dirty.update(self.pred[entry.world])
        return True

    def signed(self) -> Iterator[SignedFormula]:
        return (e for e in self.entries if isinstance(e, SignedFormula))

    def relations(self) -> Iterator[RelAtom]:
        return (e for e in self.entries if isinstance(e, RelAtom))


def is_closed(b: Branch) -> SignedFormula | None:
    """Closure witness ``(w, φ, t)`` or ``(w, φ, f)``, or None for an open branch."""
    for (w, phi), signs in b.signs.items():
        for axis in (T, F):
            if axis in signs and axis.complement in signs:
                return SignedFormula(w, phi, axis)
    return None


# -- rules as data ------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class RuleInstance:
    """A rule with its premises bound: fire by adding one column per successor branch."""

    name: str
    premises: tuple[Entry, ...]
    columns: tuple[tuple[Entry, ...], ...]
    fresh: tuple[int, ...] = ()

    @property
    def branching(self) -> bool:
        return len(self.columns) > 1

    def key(self):
        return (self.name, self.premises)


def _sf(w, phi, s):
    return SignedFormula(w, phi, s)


def local_instances(b: Branch, w: int, phi: Formula, sign: Sign) -> Iterator[RuleInstance]:
    """Non-branching rule instances whose main premise is ``w:phi;sign``."""
    main = _sf(w, phi, sign)
    if isinstance(phi, Neg):
        yield RuleInstance(f"~_{sign}", (main,), ((_sf(w, phi.sub, sign.negated),),))
    elif isinstance(phi, (And, Or)):
        l, r = phi.left, phi.right
        op = "&" if isinstance(phi, And) else "|"
        # the sign that splits into both parts, and the two-premise ones
        split = T if op == "&" else F
        split_bar = FBAR if op == "&" else TBAR
        if sign is split or sign is split_bar:
            yield RuleInstance(f"{op}_{sign}", (main,), ((_sf(w, l, sign), _sf(w, r, sign)),))
            return
        # f of a conjunction, t of a disjunction, and their barred partners
        side = sign.complement
        for a, c in ((l, r), (r, l)):
            if b.has(w, a, side):
                yield RuleInstance(f"{op}_{sign}", (main, _sf(w, a, side)), ((_sf(w, c, sign),),))
    elif isinstance(phi, BBox):
        if sign not in (T, FBAR):
            return
        a = phi.sub
        succ = b.succ[w]
        for u in succ:
            yield RuleInstance(f"[*]_{sign}", (main, RelAtom(w, u)), ((_sf(u, a, sign),),))
        # uniformity: falsity under t, truth under fbar
        spread = F if sign is T else T
        name = "[*]-_t" if sign is T else "[*]+_fbar"
        for u in succ:
            if b.has(u, a, spread):
                for v in succ:
                    yield RuleInstance(name, (main, _sf(u, a, spread), RelAtom(w, u), RelAtom(w, v)),
                                       ((_sf(v, a, spread),),))
    elif isinstance(phi, Ign):
        if sign not in (T, FBAR):
            return
        a = phi.sub
        strict = [s for s in b.succ[w] if s != w]
        yield RuleInstance(f"I_{sign}", (main,), ((_sf(w, a, sign),),))
        across = F if sign is T else TBAR
        for s in strict:
            yield RuleInstance(f"I^R_{sign}", (main, RelAtom(w, s)), ((_sf(s, a, across),),))
        for s in strict:
            if b.has(s, a, sign):
                for s2 in strict:
                    yield RuleInstance(f"I+_{sign}", (main, _sf(s, a, sign), RelAtom(w, s), RelAtom(w, s2)),
                                       ((_sf(s2, a, sign),),))
    elif isinstance(phi, (Box, Tri)):
        raise UnsupportedFormula(f"no tableau rules for {to_text(phi)}")


def _exists_pair(b, worlds, a, s1, s2):
    return any(b.has(u, a, s1) for u in worlds) and any(b.has(u, a, s2) for u in worlds)


def fresh_instance(b: Branch, w: int, phi: Formula, sign: Sign,
                   fresh_only: bool = False) -> RuleInstance | None:
    """The fresh-world rule for ``w:phi;sign`` if its completeness condition is unmet.

    Unless ``fresh_only``, the ■ rules get extra columns in which the witness
    is ``w`` itself (adding ``wRw``).  Without them a witness that a model
    finds at a reflexive point is always given a new label, and the I-rules
    then treat it as a strict successor: the rule set is then sound only on
    irreflexive frames (it proves ``Ip |- [*]~p``, which fails at a single
    reflexive world).
    """
    if isinstance(phi, BBox) and sign in (F, TBAR):
        a = phi.sub
        succ = b.succ[w]
        single, pair = (F, (T, TBAR)) if sign is F else (TBAR, (F, FBAR))
        if any(b.has(u, a, single) for u in succ) or _exists_pair(b, succ, a, *pair):
            return None
        u, u2 = b.size, b.size + 1
        cols = (
            (RelAtom(w, u), _sf(u, a, single)),
            (RelAtom(w, u), RelAtom(w, u2), _sf(u, a, pair[0]), _sf(u2, a, pair[1])),
        )
        if not fresh_only and w not in succ:
            loop = RelAtom(w, w)
            cols += (
                (loop, _sf(w, a, single)),
                (loop, RelAtom(w, u), _sf(w, a, pair[0]), _sf(u, a, pair[1])),
                (RelAtom(w, u), loop, _sf(u, a, pair[0]), _sf(w, a, pair[1])),
            )
    elif isinstance(phi, Ign) and sign in (F, TBAR):
        a = phi.sub
        strict = [s for s in b.succ[w] if s != w]
        single, pair, here = (T, (F, FBAR), F) if sign is F else (FBAR, (T, TBAR), TBAR)
        if (b.has(w, a, here) or any(b.has(s, a, single) for s in strict)
                or _exists_pair(b, strict, a, *pair)):
            return None
        u, u2 = b.size, b.size + 1
        cols = (
            (RelAtom(w, u), _sf(u, a, single)),
            (RelAtom(w, u), RelAtom(w, u2), _sf(u, a, pair[0]), _sf(u2, a, pair[1])),
            (_sf(w, a, here),),
        )
    else:
        return None
    name = ("[*]_" if isinstance(phi, BBox) else "I_") + str(sign)
    return RuleInstance(name, (_sf(w, phi, sign),), cols, fresh=(u, u2))


def cut_instance(w: int, phi: Formula, axis: Sign) -> RuleInstance:
    return RuleInstance(f"cut_{axis}", (), ((_sf(w, phi, axis),), (_sf(w, phi, axis.complement),)))


def needed_cut(b: Branch, w: int, phi: Formula, sign: Sign) -> RuleInstance | None:
    """A cut that some rule or realisation step needs before ``w:phi;sign`` is settled."""
    if isinstance(phi, (And, Or)):
        l, r = phi.left, phi.right
        conj = isinstance(phi, And)
        # the signs whose rules need a side premise
        if (conj and sign in (F, TBAR)) or (not conj and sign in (T, FBAR)):
            if not b.has(w, l, sign) and not b.has(w, r, sign):
                return cut_instance(w, l, sign.axis)
        return None
    if isinstance(phi, BBox) and sign in (T, FBAR):
        axis = F if sign is T else T
        for u in b.succ[w]:
            if not b.decided(u, phi.sub, axis):
                return cut_instance(u, phi.sub, axis)
    elif isinstance(phi, Ign) and sign in (T, FBAR):
        axis = sign.axis
        for s in b.succ[w]:
            if s != w and not b.decided(s, phi.sub, axis):
                return cut_instance(s, phi.sub, axis)
    return None


def apply_rule(b: Branch, inst: RuleInstance) -> list[Branch]:
    """One successor branch per conclusion column; the parent is left untouched."""
    out = []
    for col in inst.columns:
        nb = b.copy()
        nb.ledger.add(inst.key())
        for fresh in inst.fresh:
            if fresh >= nb.size and any(_mentions(e, fresh) for e in col):
                while nb.size <= fresh:
                    nb.new_world()
        for e in col:
            nb.add(e)
        out.append(nb)
    return out


def _mentions(e: Entry, w: int) -> bool:
    if isinstance(e, RelAtom):
        return w in (e.source, e.target)
    return e.world == w


# -- saturation ---------------------------------------------------------------------

@dataclass
class _Search:
    limit: int
    fresh_only: bool = False
    steps: int = 0

    def tick(self, n: int = 1):
        self.steps += n
        if self.steps > self.limit:
            raise ResourceLimitExceeded(f"tableau exceeded {self.limit} steps")


def _propagate(b: Branch, counter: _Search) -> None:
    while b.dirty and b.closure is None:
        w = min(b.dirty)
        b.dirty.discard(w)
        for phi, sign in list(b.items_at[w]):
            for inst in local_instances(b, w, phi, sign):
                for e in inst.columns[0]:
                    if b.add(e):
                        counter.tick()
                if b.closure is not None:
                    return


def _next_branching(b: Branch, fresh_only: bool = False) -> RuleInstance | None:
    for e in list(b.signed()):
        cut = needed_cut(b, e.world, e.formula, e.sign)
        if cut is not None:
            return cut
    for e in list(b.signed()):
        inst = fresh_instance(b, e.world, e.formula, e.sign, fresh_only)
        if inst is not None and inst.key() not in b.ledger:
            return inst
    return None


def _check_supported(formulas) -> None:
    for phi in formulas:
        bad = constructors(phi) & {Box, Tri}
        if bad:
            names = ", ".join(sorted(c.__name__ for c in bad))
            raise UnsupportedFormula(
                f"the tableau covers the [*]/I fragment only ({names} found); "
                "use the countermodel search instead"
            )


def saturate(b: Branch, max_steps: int = 200_000, fresh_only: bool = False) -> list[Branch]:
    """Expand ``b`` completely: every returned branch is closed or complete."""
    _check_supported(e.formula for e in b.signed())
    counter = _Search(max_steps, fresh_only)
    b = b.copy()
    b.dirty.update(range(b.size))
    done, stack = [], [b]
    while stack:
        cur = stack.pop()
        _propagate(cur, counter)
        inst = None if cur.closed else _next_branching(cur, fresh_only)
        if inst is None:
            done.append(cur)
            continue
        counter.tick()
        stack.extend(reversed(apply_rule(cur, inst)))
    return done


def realize(b: Branch, atoms_: list[str] | None = None, point: int = 0) -> PointedModel:
    """Read a model off an open branch and check every signed formula on it."""
    if b.closed:
        raise ValueError("cannot realise a closed branch")
    names = [label(i) for i in range(b.size)]
    frame = Frame(b.size, frozenset((r.source, r.target) for r in b.relations()), tuple(names))
    vplus: dict[str, set] = {}
    vminus: dict[str, set] = {}
    atom_names = set(atoms_ or ())
    for e in b.signed():
        atom_names.update(formula_atoms(e.formula))
        if isinstance(e.formula, Var):
            if e.sign is T:
                vplus.setdefault(e.formula.name, set()).add(e.world)
            elif e.sign is F:
                vminus.setdefault(e.formula.name, set()).add(e.world)
    for a in atom_names:
        vplus.setdefault(a, set())
        vminus.setdefault(a, set())
    model = Model(frame, vplus, vminus)
    for e in b.signed():
        got = eval_formula(model, e.world, e.formula)
        ok = {T: got.sup_t, F: got.sup_f, TBAR: not got.sup_t, FBAR: not got.sup_f}[e.sign]
        if not ok:
            raise RealizationError(f"{e} fails on the extracted model (value {got})")
    return PointedModel(model, point)


# -- proof search ---------------------------------------------------------------------

@dataclass
class ProofNode:
    """A stretch of one branch between two branching points."""

    entries: list[Entry] = field(default_factory=list)
    children: list[ProofNode] = field(default_factory=list)
    rule: str | None = None
    closure: SignedFormula | None = None
    is_open: bool = False
    unexplored: bool = False

    def leaves(self) -> Iterator[ProofNode]:
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()

    def count(self) -> int:
        return 1 + sum(c.count() for c in self.children)


@dataclass
class ProofTree:
    sequent: Sequent
    root: ProofNode
    steps: int

    closed = True

    def __str__(self):
        return serialize_tree(self.root)


@dataclass
class Countermodel:
    sequent: Sequent
    pointed: PointedModel
    branch: Branch
    root: ProofNode
    steps: int

    closed = False

    def __str__(self):
        from .semantics import dump_model
        return dump_model(self.pointed.model)


Verdict = Union[ProofTree, Countermodel]


def prove(seq: Sequent, max_steps: int = 200_000, fresh_only: bool = False) -> Verdict:
    """Search for a closed tableau for ``seq``; return a proof tree or a verified countermodel.

    ``fresh_only`` restricts the ■ witness rules to new labels (see
    :func:`fresh_instance`); that rule set is unsound on frames with loops.
    """
    _check_supported((seq.lhs, seq.rhs))
    counter = _Search(max_steps, fresh_only)
    start = Branch.root(seq)
    root = ProofNode()
    try:
        found = _explore(start, root, 0, counter)
    except ResourceLimitExceeded as exc:
        exc.partial = root
        raise
    if found is None:
        return ProofTree(seq, root, counter.steps)
    pm = realize(found, formula_atoms(seq))
    return Countermodel(seq, pm, found, root, counter.steps)


def _explore(b: Branch, node: ProofNode, mark: int, counter: _Search) -> Branch | None:
    _propagate(b, counter)
    if b.closed:
        node.entries = b.entries[mark:]
        node.closure = b.closure
        return None
    inst = _next_branching(b, counter.fresh_only)
    node.entries = b.entries[mark:]
    if inst is None:
        node.is_open = True
        return b
    counter.tick()
    node.rule = inst.name
    here = len(b.entries)
    kids = apply_rule(b, inst)
    node.children = [ProofNode() for _ in kids]
    for i, (kid, child) in enumerate(zip(kids, node.children)):
        found = _explore(kid, child, here, counter)
        if found is not None:
            for rest in node.children[i + 1:]:
                rest.unexplored = True
            return found
    return None


# -- text format ----------------------------------------------------------------------

CLOSED_MARK = "×"
OPEN_MARK = "○"
UNEXPLORED_MARK = "…"
_INDENT = "  "


def serialize_tree(root: ProofNode) -> str:
    """One line per entry, indented by branching depth; every leaf ends in a marker."""
    lines: list[str] = []

    def go(node, depth):
        pad = _INDENT * depth
        lines.extend(pad + str(e) for e in node.entries)
        if node.children:
            for c in node.children:
                go(c, depth + 1)
        elif node.closure is not None:
            c = node.closure
            lines.append(f"{pad}{CLOSED_MARK} ({label(c.world)}, {to_text(c.formula)}, {c.sign})")
        elif node.is_open:
            lines.append(pad + OPEN_MARK)
        else:
            lines.append(pad + UNEXPLORED_MARK)

    go(root, 0)
    return "\n".join(lines) + "\n"


class TreeFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_LABEL = re.compile(r"^w(\d+)$")
_REL = re.compile(r"^w(\d+) R w(\d+)$")


def _world(text, lineno):
    m = _LABEL.match(text.strip())
    if not m:
        raise TreeFormatError(f"bad world label {text!r}", lineno)
    return int(m.group(1))


def parse_entry(text: str, lineno: int = 0) -> Entry:
    m = _REL.match(text)
    if m:
        return RelAtom(int(m.group(1)), int(m.group(2)))
    head, sep, rest = text.partition(":")
    body, sep2, sign = rest.rpartition(";")
    if not sep or not sep2:
        raise TreeFormatError(f"not an entry: {text!r}", lineno)
    try:
        return SignedFormula(_world(head, lineno), parse_formula(body), Sign(sign.strip()))
    except ValueError as exc:
        raise TreeFormatError(str(exc), lineno) from exc


def parse_tree(text: str) -> ProofNode:
    """Inverse of :func:`serialize_tree`."""
    rows = []
    for i, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        stripped = raw.lstrip(" ")
        indent = len(raw) - len(stripped)
        if indent % len(_INDENT):
            raise TreeFormatError("indentation is not a multiple of two", i)
        rows.append((indent // len(_INDENT), stripped.rstrip(), i))
    pos = 0

    def node(depth):
        nonlocal pos
        n = ProofNode()
        while pos < len(rows):
            d, body, lineno = rows[pos]
            if d < depth:
                raise TreeFormatError("branch ends without a leaf marker", lineno)
            if d > depth:
                if d != depth + 1:
                    raise TreeFormatError("indentation jumps more than one level", lineno)
                while pos < len(rows) and rows[pos][0] == depth + 1:
                    n.children.append(node(depth + 1))
                return n
            pos += 1
            if body.startswith(CLOSED_MARK):
                inner = body[len(CLOSED_MARK):].strip()
                if not (inner.startswith("(") and inner.endswith(")")):
                    raise TreeFormatError("bad closure marker", lineno)
                w, _, rest = inner[1:-1].partition(",")
                phi, _, sign = rest.rpartition(",")
                try:
                    n.closure = SignedFormula(_world(w, lineno), parse_formula(phi), Sign(sign.strip()))
                except ValueError as exc:
                    raise TreeFormatError(str(exc), lineno) from exc
                return n
            if body == OPEN_MARK:
                n.is_open = True
                return n
            if body == UNEXPLORED_MARK:
                n.unexplored = True
                return n
            n.entries.append(parse_entry(body, lineno))
        raise TreeFormatError("input ends inside a branch", rows[-1][2] if rows else 0)

    root = node(0)
    if pos != len(rows):
        raise TreeFormatError("trailing lines after the tree", rows[pos][2])
    return root


def prove_text(text: str, max_steps: int = 200_000, fresh_only: bool = False) -> Verdict:
    return prove(parse_sequent(text), max_steps, fresh_only)
