"""Brute-force enumeration: valuations, frames, formulas, and the searches built on them.

This is the trusted ground truth that the tableau prover is checked against.
Evaluation over a whole frame is vectorised with numpy: for a fixed frame and
atom list every valuation is one row of a ``(valuations, worlds)`` boolean
array, so one pass over a formula decides it at every pointed model on the
frame at once.  The per-world set evaluator in :mod:`bdmodal.semantics` is kept
independent and the two are cross-checked in the tests.

Enumeration orders are fixed so witnesses are reproducible:

* frames by size, then by relation bitmask ascending (bit ``i*n+j`` is ``iRj``);
* valuations by a base-4 counter whose digit ``a*n + w`` (least significant
  first) holds the value of atom ``a`` at world ``w`` as ``sup_t + 2*sup_f``,
  so digit 0 = N, 1 = T, 2 = F, 3 = B;
* within a valuation, worlds ascending.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .formula import (
    And, BBox, Box, Formula, Ign, Neg, Or, Sequent, Tri, Var, atoms as formula_atoms,
)
from .semantics import Frame, Model, PointedModel, TruthState, LETTERS, eval_formula


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured cap; nothing was truncated."""


@dataclass(frozen=True)
class EnumerationBudget:
    max_worlds: int = 3
    max_formula_size: int = 4
    atoms: tuple[str, ...] = ("p",)
    modulo_iso: bool = True
    max_valuations: int = 4 ** 9

    def __post_init__(self):
        if self.max_worlds < 1:
            raise ValueError("max_worlds must be at least 1")


# -- valuations ------------------------------------------------------------------

def valuation_count(frame: Frame, atoms: Sequence[str]) -> int:
    return 4 ** (len(atoms) * frame.size)


def _check_cap(frame, atoms, cap):
    count = valuation_count(frame, atoms)
    if cap is not None and count > cap:
        raise BudgetExceeded(
            f"{count} valuations on a {frame.size}-world frame with {len(atoms)} atoms (cap {cap})"
        )
    return count


def model_from_index(frame: Frame, atoms: Sequence[str], index: int) -> Model:
    n = frame.size
    values = {}
    for a, atom in enumerate(atoms):
        values[atom] = [LETTERS[(index >> (2 * (a * n + w))) & 3] for w in range(n)]
    return Model.from_values(frame, values)


def valuations_on(frame: Frame, atoms: Sequence[str], cap: int | None = 4 ** 9) -> Iterator[Model]:
    """Every model on ``frame`` over ``atoms``: exactly ``4**(len(atoms)*size)`` of them."""
    count = _check_cap(frame, atoms, cap)
    for index in range(count):
        yield model_from_index(frame, atoms, index)


class FrameEvaluator:
    """Evaluates formulas at every pointed model on one frame simultaneously."""

    def __init__(self, frame: Frame, atoms: Sequence[str], cap: int | None = 4 ** 9):
        self.frame = frame
        self.atoms = tuple(atoms)
        self.count = _check_cap(frame, self.atoms, cap)
        idx = np.arange(self.count, dtype=np.int64)
        n = frame.size
        self._base = {}
        for a, atom in enumerate(self.atoms):
            t = np.empty((self.count, n), dtype=bool)
            f = np.empty((self.count, n), dtype=bool)
            for w in range(n):
                digit = (idx >> (2 * (a * n + w))) & 3
                t[:, w] = (digit & 1).astype(bool)
                f[:, w] = (digit & 2).astype(bool)
            self._base[atom] = (t, f)
        self._memo: dict[Formula, tuple[np.ndarray, np.ndarray]] = {}
        self._succ = [list(frame.successors(w)) for w in frame.worlds]

    def ext(self, phi: Formula) -> tuple[np.ndarray, np.ndarray]:
        hit = self._memo.get(phi)
        if hit is None:
            hit = self._memo[phi] = self._compute(phi)
        return hit

    def truth(self, phi: Formula) -> np.ndarray:
        return self.ext(phi)[0]

    def _compute(self, phi):
        if isinstance(phi, Var):
            if phi.name not in self._base:
                gap = np.zeros((self.count, self.frame.size), dtype=bool)
                return gap, gap
            return self._base[phi.name]
        if isinstance(phi, Neg):
            t, f = self.ext(phi.sub)
            return f, t
        if isinstance(phi, And):
            t1, f1 = self.ext(phi.left)
            t2, f2 = self.ext(phi.right)
            return t1 & t2, f1 | f2
        if isinstance(phi, Or):
            t1, f1 = self.ext(phi.left)
            t2, f2 = self.ext(phi.right)
            return t1 | t2, f1 & f2
        t, f = self.ext(phi.sub)
        out_t = np.empty_like(t)
        out_f = np.empty_like(f)
        for w in self.frame.worlds:
            succ = self._succ[w]
            if isinstance(phi, Ign):
                succ = [v for v in succ if v != w]
            ts, fs = t[:, succ], f[:, succ]
            all_t, any_t = ts.all(axis=1), ts.any(axis=1)
            all_f, any_f = fs.all(axis=1), fs.any(axis=1)
            if isinstance(phi, Box):
                out_t[:, w], out_f[:, w] = all_t, any_f
            elif isinstance(phi, BBox):
                out_t[:, w] = all_t & (all_f | ~any_f)
                out_f[:, w] = any_f | (any_t & ~all_t)
            elif isinstance(phi, Ign):
                out_t[:, w] = t[:, w] & all_f & (all_t | ~any_t)
                out_f[:, w] = f[:, w] | any_t | (any_f & ~all_f)
            elif isinstance(phi, Tri):
                covered = (ts | fs).all(axis=1)
                uni_t = all_t | ~any_t
                uni_f = all_f | ~any_f
                out_t[:, w] = uni_t & uni_f & covered
                out_f[:, w] = ~uni_t | ~uni_f | (any_t & any_f)
            else:
                raise TypeError(f"not a formula: {phi!r}")
        return out_t, out_f

    def refutations(self, seq: Sequent) -> np.ndarray:
        """Boolean ``(valuations, worlds)`` array: lhs truth-supported, rhs not."""
        return self.truth(seq.lhs) & ~self.truth(seq.rhs)

    def first_refutation(self, seq: Sequent) -> PointedModel | None:
        bad = self.refutations(seq).ravel()
        if not bad.any():
            return None
        flat = int(np.argmax(bad))
        index, world = divmod(flat, self.frame.size)
        return PointedModel(model_from_index(self.frame, self.atoms, index), world)


def _sequent_atoms(seq: Sequent, extra: Iterable[str] = ()) -> tuple[str, ...]:
    names = set(formula_atoms(seq)) | set(extra)
    return tuple(sorted(names)) or ("p",)


def valid_on_frame(frame: Frame, seq: Sequent, cap: int | None = 4 ** 9,
                   atoms: Sequence[str] | None = None) -> tuple[bool, PointedModel | None]:
    """Decide ``seq`` on ``frame`` by enumerating every model; return a witness on failure."""
    ev = FrameEvaluator(frame, atoms or _sequent_atoms(seq), cap)
    witness = ev.first_refutation(seq)
    return witness is None, witness


# -- frames ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _canonical_masks(size: int) -> tuple[int, ...]:
    """Smallest relation bitmask of each isomorphism class of ``size``-world frames."""
    bits = size * size
    masks = np.arange(1 << bits, dtype=np.int64)
    best = masks.copy()
    for perm in itertools.permutations(range(size)):
        image = np.zeros_like(masks)
        for i in range(size):
            for j in range(size):
                src = i * size + j
                dst = perm[i] * size + perm[j]
                image |= ((masks >> src) & 1) << dst
        np.minimum(best, image, out=best)
    return tuple(int(m) for m in masks[masks == best])


def frames_of_size(size: int, modulo_iso: bool = False, cap: int = 1 << 16) -> Iterator[Frame]:
    total = 1 << (size * size)
    if total > cap:
        raise BudgetExceeded(f"{total} relations on {size} worlds (cap {cap})")
    masks = _canonical_masks(size) if modulo_iso else range(total)
    for mask in masks:
        yield Frame.from_mask(size, mask)


def frames_up_to(n: int, modulo_iso: bool = False, cap: int = 1 << 16) -> Iterator[Frame]:
    """All frames with 1..n worlds, by size then relation bitmask."""
    if n < 1:
        raise ValueError("n must be at least 1")
    for size in range(1, n + 1):
        yield from frames_of_size(size, modulo_iso, cap)


def random_frame(rng, size: int, density: float | None = None) -> Frame:
    p = rng.random() if density is None else density
    rel = {(i, j) for i in range(size) for j in range(size) if rng.random() < p}
    return Frame(size, frozenset(rel))


# -- countermodel search -------------------------------------------------------------

def find_countermodel(seq: Sequent, budget: EnumerationBudget = EnumerationBudget()) -> PointedModel | None:
    """First pointed model, in enumeration order, where lhs holds and rhs does not.

    ``None`` only means no countermodel exists within the budget.
    """
    atoms = _sequent_atoms(seq)
    for frame in frames_up_to(budget.max_worlds, budget.modulo_iso):
        witness = FrameEvaluator(frame, atoms, budget.max_valuations).first_refutation(seq)
        if witness is not None:
            return witness
    return None


def refutation_matrix(formulas: Sequence[Formula], budget: EnumerationBudget,
                      atoms: Sequence[str] | None = None) -> np.ndarray:
    """``R[i, j]`` is True iff ``formulas[i] |- formulas[j]`` has a countermodel within budget.

    Same search space as :func:`find_countermodel`, batched over all pairs.
    """
    if atoms is None:
        names = set()
        for phi in formulas:
            names.update(formula_atoms(phi))
        atoms = tuple(sorted(names)) or ("p",)
    m = len(formulas)
    result = np.zeros((m, m), dtype=bool)
    for frame in frames_up_to(budget.max_worlds, budget.modulo_iso):
        ev = FrameEvaluator(frame, atoms, budget.max_valuations)
        truth = np.stack([ev.truth(phi).ravel() for phi in formulas]).astype(np.float32)
        result |= (truth @ (1.0 - truth).T) > 0.5
    return result


# -- formulas ----------------------------------------------------------------------

_UNARY_ORDER = (Neg, Box, BBox, Ign, Tri)


def formulas_by_size(sig, atoms: Sequence[str], max_size: int) -> list[list[Formula]]:
    """``levels[s]`` lists the fragment's formulas with exactly ``s`` nodes."""
    unary = [op for op in _UNARY_ORDER if op is Neg or op in sig]
    levels: list[list[Formula]] = [[], [Var(a) for a in atoms]]
    for s in range(2, max_size + 1):
        level = [op(f) for op in unary for f in levels[s - 1]]
        for op in (And, Or):
            for i in range(1, s - 1):
                level.extend(op(l, r) for l in levels[i] for r in levels[s - 1 - i])
        levels.append(level)
    return levels


def formulas_up_to(sig, atoms: Sequence[str], max_size: int) -> Iterator[Formula]:
    """Every formula of the fragment with at most ``max_size`` nodes, smallest first."""
    if not atoms:
        raise ValueError("formula enumeration needs at least one atom")
    seen = set()
    for level in formulas_by_size(sig, atoms, max_size):
        for phi in level:
            if phi not in seen:
                seen.add(phi)
                yield phi


# -- separation and definability ----------------------------------------------------

SEPARATED = "separated"
INDISTINGUISHABLE = "indistinguishable-up-to-bound"
UNDEFINABLE = "undefinable-up-to-bound"
DEFINABLE = "candidate-found"


@dataclass(frozen=True)
class SeparationReport:
    separating_formula: Formula | None
    sizes_searched: int
    verdict: str
    formulas_checked: int = 0
    values: tuple[TruthState, TruthState] | None = None

    @property
    def separated(self) -> bool:
        return self.verdict == SEPARATED


def _point_atoms(points: Iterable[PointedModel]) -> list[str]:
    names = set()
    for pm in points:
        names.update(pm.model.atoms)
    return sorted(names) or ["p"]


def separation_check(a: PointedModel, b: PointedModel, sig, max_size: int,
                     atoms: Sequence[str] | None = None) -> SeparationReport:
    """Search the fragment for a formula with different values at ``a`` and ``b``."""
    atoms = list(atoms) if atoms else _point_atoms((a, b))
    checked = 0
    for phi in formulas_up_to(sig, atoms, max_size):
        checked += 1
        va, vb = a.eval(phi), b.eval(phi)
        if va != vb:
            return SeparationReport(phi, max_size, SEPARATED, checked, (va, vb))
    return SeparationReport(None, max_size, INDISTINGUISHABLE, checked)


@dataclass(frozen=True)
class DefinabilityReport:
    target: Formula
    target_values: tuple[TruthState, ...]
    candidate: Formula | None
    sizes_searched: int
    verdict: str
    formulas_checked: int = 0

    @property
    def undefinable(self) -> bool:
        return self.verdict == UNDEFINABLE


def definability_check(points: Sequence[PointedModel], target: Formula, sig, max_size: int,
                       atoms: Sequence[str] | None = None) -> DefinabilityReport:
    """Look for a fragment formula taking the same value as ``target`` at every point.

    A definition of ``target`` would have to match it at all pointed models,
    so finding none up to the bound is bounded evidence of undefinability.
    """
    atoms = list(atoms) if atoms else _point_atoms(points)
    profile = tuple(pm.eval(target) for pm in points)
    checked = 0
    for phi in formulas_up_to(sig, atoms, max_size):
        checked += 1
        if all(pm.eval(phi) == v for pm, v in zip(points, profile)):
            return DefinabilityReport(target, profile, phi, max_size, DEFINABLE, checked)
    return DefinabilityReport(target, profile, None, max_size, UNDEFINABLE, checked)


def eval_at(pm: PointedModel, phi: Formula) -> TruthState:
    return eval_formula(pm.model, pm.point, phi)
