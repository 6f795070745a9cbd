"""Finite Kripke models with independent truth- and falsity-support.

Worlds are the integers ``0..n-1``; names are kept only for display and for
the text format.  Every formula gets a :class:`TruthState` at every world,
i.e. a pair (supports truth, supports falsity), read as one of the four
Belnapian values T, F, B (glut) and N (gap).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .formula import (
    And, BBox, Box, Formula, Ign, Neg, Or, Sequent, Tri, Var,
)

LETTERS = "NTFB"  # index = sup_t + 2 * sup_f


@dataclass(frozen=True)
class TruthState:
    sup_t: bool
    sup_f: bool

    @property
    def value(self) -> str:
        return LETTERS[self.sup_t + 2 * self.sup_f]

    @classmethod
    def of(cls, letter: str) -> TruthState:
        i = LETTERS.index(letter.upper())
        return cls(bool(i & 1), bool(i & 2))

    def dual(self) -> TruthState:
        """Swap glut and gap; T and F are fixed."""
        if self.sup_t == self.sup_f:
            return TruthState(not self.sup_t, not self.sup_f)
        return self

    def __str__(self):
        return self.value


class UnknownWorld(KeyError):
    pass


@dataclass(frozen=True)
class Frame:
    size: int
    rel: frozenset = frozenset()
    names: tuple = ()
    _succ: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("a frame needs at least one world")
        rel = frozenset((int(a), int(b)) for a, b in self.rel)
        for a, b in rel:
            if not (0 <= a < self.size and 0 <= b < self.size):
                raise ValueError(f"edge ({a}, {b}) leaves the world set")
        object.__setattr__(self, "rel", rel)
        names = tuple(self.names) or tuple(f"w{i}" for i in range(self.size))
        if len(names) != self.size or len(set(names)) != self.size:
            raise ValueError("world names must be distinct and one per world")
        object.__setattr__(self, "names", names)
        succ = tuple(tuple(sorted(b for a, b in rel if a == w)) for w in range(self.size))
        object.__setattr__(self, "_succ", succ)

    @property
    def worlds(self) -> range:
        return range(self.size)

    def successors(self, w: int, strict: bool = False) -> tuple[int, ...]:
        if not 0 <= w < self.size:
            raise UnknownWorld(w)
        if strict:
            return tuple(v for v in self._succ[w] if v != w)
        return self._succ[w]

    def world(self, name: str | int) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.size:
                raise UnknownWorld(name)
            return name
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownWorld(name) from None

    @classmethod
    def from_mask(cls, size: int, mask: int) -> Frame:
        """Bit ``i*size + j`` of ``mask`` set iff ``i R j``."""
        rel = {(i, j) for i in range(size) for j in range(size) if mask >> (i * size + j) & 1}
        return cls(size, frozenset(rel))

    @property
    def mask(self) -> int:
        return sum(1 << (a * self.size + b) for a, b in self.rel)


@dataclass(frozen=True)
class Model:
    """A frame plus truth- and falsity-valuations (atom -> set of worlds).

    Atoms missing from both maps are gaps everywhere.
    """

    frame: Frame
    vplus: Mapping[str, frozenset] = field(default_factory=dict)
    vminus: Mapping[str, frozenset] = field(default_factory=dict)
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        for table in (self.vplus, self.vminus):
            for atom, ws in table.items():
                if any(not 0 <= w < self.frame.size for w in ws):
                    raise ValueError(f"valuation of {atom} mentions an unknown world")
        object.__setattr__(self, "vplus", {a: frozenset(ws) for a, ws in self.vplus.items()})
        object.__setattr__(self, "vminus", {a: frozenset(ws) for a, ws in self.vminus.items()})

    def __hash__(self):
        key = lambda t: tuple(sorted((a, tuple(sorted(ws))) for a, ws in t.items() if ws))
        return hash((self.frame, key(self.vplus), key(self.vminus)))

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        strip = lambda t: {a: ws for a, ws in t.items() if ws}
        return (self.frame == other.frame and strip(self.vplus) == strip(other.vplus)
                and strip(self.vminus) == strip(other.vminus))

    @classmethod
    def from_values(cls, frame: Frame, values: Mapping[str, Iterable[str]]) -> Model:
        """Build from per-atom Belnapian letters, one per world (``"TBN"``...)."""
        vp, vm = {}, {}
        for atom, letters in values.items():
            letters = list(letters)
            if len(letters) != frame.size:
                raise ValueError(f"{atom}: expected {frame.size} values, got {len(letters)}")
            states = [TruthState.of(x) for x in letters]
            vp[atom] = frozenset(w for w, s in enumerate(states) if s.sup_t)
            vm[atom] = frozenset(w for w, s in enumerate(states) if s.sup_f)
        return cls(frame, vp, vm)

    @property
    def atoms(self) -> list[str]:
        return sorted(set(self.vplus) | set(self.vminus))

    def value(self, atom: str, w: int) -> TruthState:
        return TruthState(w in self.vplus.get(atom, ()), w in self.vminus.get(atom, ()))

    def extension(self, phi: Formula, strict: bool = False) -> tuple[frozenset, frozenset]:
        """Worlds supporting the truth, and the falsity, of ``phi``."""
        key = (phi, strict)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = _extension(self, phi, strict)
        return hit


@dataclass(frozen=True)
class PointedModel:
    model: Model
    point: int

    def __post_init__(self):
        if not 0 <= self.point < self.model.frame.size:
            raise UnknownWorld(self.point)

    def eval(self, phi: Formula) -> TruthState:
        return eval_formula(self.model, self.point, phi)


def successors(model: Model, w: int, strict: bool = False) -> frozenset:
    """``R(w)``, or ``R(w) \\ {w}`` when ``strict``."""
    return frozenset(model.frame.successors(w, strict))


def _uniform(flags: list[bool]) -> bool:
    return all(flags) or not any(flags)


def _extension(model: Model, phi: Formula, strict: bool) -> tuple[frozenset, frozenset]:
    frame = model.frame
    W = frame.worlds
    if isinstance(phi, Var):
        return model.vplus.get(phi.name, frozenset()), model.vminus.get(phi.name, frozenset())
    if isinstance(phi, Neg):
        t, f = model.extension(phi.sub, strict)
        return f, t
    if isinstance(phi, (And, Or)):
        t1, f1 = model.extension(phi.left, strict)
        t2, f2 = model.extension(phi.right, strict)
        if isinstance(phi, And):
            return t1 & t2, f1 | f2
        return t1 | t2, f1 & f2

    t, f = model.extension(phi.sub, strict)
    truth, falsity = set(), set()
    for w in W:
        if isinstance(phi, Box):
            succ = frame.successors(w)
            pos = all(v in t for v in succ)
            neg = any(v in f for v in succ)
        elif isinstance(phi, BBox):
            succ = frame.successors(w, strict)
            ts = [v in t for v in succ]
            fs = [v in f for v in succ]
            pos = all(ts) and _uniform(fs)
            neg = any(fs) or not _uniform(ts)
        elif isinstance(phi, Ign):
            succ = frame.successors(w, strict=True)
            ts = [v in t for v in succ]
            fs = [v in f for v in succ]
            pos = w in t and all(fs) and _uniform(ts)
            neg = w in f or any(ts) or not _uniform(fs)
        elif isinstance(phi, Tri):
            succ = frame.successors(w)
            ts = [v in t for v in succ]
            fs = [v in f for v in succ]
            pos = _uniform(ts) and _uniform(fs) and all(a or b for a, b in zip(ts, fs))
            neg = not _uniform(ts) or not _uniform(fs) or (any(ts) and any(fs))
        else:
            raise TypeError(f"not a formula: {phi!r}")
        if pos:
            truth.add(w)
        if neg:
            falsity.add(w)
    return frozenset(truth), frozenset(falsity)


def eval_formula(model: Model, w: int | str, phi: Formula, strict: bool = False) -> TruthState:
    """Truth- and falsity-support of ``phi`` at ``w``.

    With ``strict`` every ``[*]`` quantifies over ``R(w) \\ {w}`` instead of
    ``R(w)``; this exists only to compare ``I p`` with ``p & [*]~p``.
    """
    w = model.frame.world(w)
    t, f = model.extension(phi, strict)
    return TruthState(w in t, w in f)


def holds_sequent_at(model: Model, w: int | str, seq: Sequent) -> bool:
    w = model.frame.world(w)
    return not (eval_formula(model, w, seq.lhs).sup_t and not eval_formula(model, w, seq.rhs).sup_t)


def dual_model(model: Model) -> Model:
    """Same frame; every atom's B becomes N and N becomes B at every world."""
    vp, vm = {}, {}
    for atom in model.atoms:
        p, m = model.vplus.get(atom, frozenset()), model.vminus.get(atom, frozenset())
        glut, gap = p & m, frozenset(model.frame.worlds) - (p | m)
        vp[atom] = (p - glut) | gap
        vm[atom] = (m - glut) | gap
    return Model(model.frame, vp, vm)


# -- frame classes ---------------------------------------------------------------

def _serial(F):
    return all(F.successors(x) for x in F.worlds)


def _reflexive(F):
    return all((x, x) in F.rel for x in F.worlds)


def _symmetric(F):
    return all((y, x) in F.rel for x, y in F.rel)


def _transitive(F):
    return all((x, z) in F.rel for x, y in F.rel for z in F.successors(y))


def _euclidean(F):
    return all((y, z) in F.rel for x in F.worlds for y in F.successors(x) for z in F.successors(x))


def _dense(F):
    return all(any((z, y) in F.rel for z in F.successors(x)) for x, y in F.rel)


def _partial_functional(F):
    return all(len(F.successors(x)) <= 1 for x in F.worlds)


class FrameClass(enum.Enum):
    SERIAL = "D"
    DENSE = "dn"
    REFLEXIVE = "T"
    EUCLIDEAN = "5"
    TRANSITIVE = "4"
    SYMMETRIC = "B"
    PARTIAL_FUNCTIONAL = "PF"
    D5 = "D5"
    S5 = "S5"
    DDN = "Ddn"
    F45 = "45"
    D4 = "D4"
    S4 = "S4"
    D45 = "D45"

    @property
    def conjuncts(self) -> tuple[FrameClass, ...]:
        return _CONJUNCTS.get(self, (self,))


_BASIC = {
    FrameClass.SERIAL: _serial,
    FrameClass.DENSE: _dense,
    FrameClass.REFLEXIVE: _reflexive,
    FrameClass.EUCLIDEAN: _euclidean,
    FrameClass.TRANSITIVE: _transitive,
    FrameClass.SYMMETRIC: _symmetric,
    FrameClass.PARTIAL_FUNCTIONAL: _partial_functional,
}

_CONJUNCTS = {
    FrameClass.D5: (FrameClass.SERIAL, FrameClass.EUCLIDEAN),
    FrameClass.S5: (FrameClass.REFLEXIVE, FrameClass.EUCLIDEAN),
    FrameClass.DDN: (FrameClass.SERIAL, FrameClass.DENSE),
    FrameClass.F45: (FrameClass.TRANSITIVE, FrameClass.EUCLIDEAN),
    FrameClass.D4: (FrameClass.SERIAL, FrameClass.TRANSITIVE),
    FrameClass.S4: (FrameClass.REFLEXIVE, FrameClass.TRANSITIVE),
    FrameClass.D45: (FrameClass.SERIAL, FrameClass.TRANSITIVE, FrameClass.EUCLIDEAN),
}


def frame_has(frame: Frame, cls: FrameClass) -> bool:
    return all(_BASIC[c](frame) for c in cls.conjuncts)


# -- text format -------------------------------------------------------------------

class ModelFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


_NAME = re.compile(r"^[A-Za-z0-9_']+$")


def parse_model(text: str) -> Model:
    """Read the line-based model format::

        worlds: w0 w1
        edges: w0->w0 w0->w1
        val p: w0=T w1=B

    Omitted worlds in a ``val`` line are gaps (N).  ``#`` starts a comment.
    """
    names: list[str] | None = None
    edges: list[tuple[str, str, int]] = []
    vals: dict[str, tuple[list[tuple[str, str]], int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise ModelFormatError(f"expected 'key: ...', got {line!r}", lineno)
        head = head.strip()
        items = body.split()
        if head == "worlds":
            if names is not None:
                raise ModelFormatError("duplicate 'worlds' line", lineno)
            if not items:
                raise ModelFormatError("a model needs at least one world", lineno)
            for n in items:
                if not _NAME.match(n):
                    raise ModelFormatError(f"bad world name {n!r}", lineno)
            if len(set(items)) != len(items):
                raise ModelFormatError("duplicate world name", lineno)
            names = items
        elif head == "edges":
            for item in items:
                a, arrow, b = item.partition("->")
                if not arrow:
                    raise ModelFormatError(f"bad edge {item!r}", lineno)
                edges.append((a, b, lineno))
        elif head.startswith("val "):
            atom = head[4:].strip()
            if not re.match(r"^[a-z][A-Za-z0-9_]*$", atom):
                raise ModelFormatError(f"bad atom name {atom!r}", lineno)
            if atom in vals:
                raise ModelFormatError(f"duplicate valuation line for {atom}", lineno)
            pairs = []
            for item in items:
                w, eq, letter = item.partition("=")
                if not eq or letter.upper() not in ("T", "F", "B", "N") or len(letter) != 1:
                    raise ModelFormatError(f"bad assignment {item!r}", lineno)
                pairs.append((w, letter.upper()))
            vals[atom] = (pairs, lineno)
        else:
            raise ModelFormatError(f"unknown key {head!r}", lineno)
    if names is None:
        raise ModelFormatError("missing 'worlds' line")
    index = {n: i for i, n in enumerate(names)}

    def lookup(n, lineno):
        if n not in index:
            raise ModelFormatError(f"unknown world {n!r}", lineno)
        return index[n]

    rel = frozenset((lookup(a, ln), lookup(b, ln)) for a, b, ln in edges)
    frame = Frame(len(names), rel, tuple(names))
    values = {}
    for atom, (pairs, lineno) in vals.items():
        letters = ["N"] * len(names)
        seen = set()
        for w, letter in pairs:
            i = lookup(w, lineno)
            if i in seen:
                raise ModelFormatError(f"world {w!r} assigned twice for {atom}", lineno)
            seen.add(i)
            letters[i] = letter
        values[atom] = letters
    return Model.from_values(frame, values)


def dump_model(model: Model, atoms_: Iterable[str] | None = None) -> str:
    F = model.frame
    lines = ["worlds: " + " ".join(F.names)]
    edges = " ".join(f"{F.names[a]}->{F.names[b]}" for a, b in sorted(F.rel))
    lines.append(("edges: " + edges).rstrip())
    for atom in (model.atoms if atoms_ is None else atoms_):
        assigns = " ".join(f"{F.names[w]}={model.value(atom, w).value}" for w in F.worlds)
        lines.append(f"val {atom}: {assigns}")
    return "\n".join(lines) + "\n"

