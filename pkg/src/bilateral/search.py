"""Depth-bounded brute-force derivation search over a finite formula universe.

The universe holds the atoms, the library's 0-ary constants, and every other
library connective applied to atoms.  Rule instances are enumerated by brute
force over that universe; co-ordination may discharge any universe formula.
Derivable sets are computed bottom-up as bitmasks, memoised on
``(context, height)``, where the height of a tree counts its nodes along the
longest branch (a lone assumption has height 1).

Used to produce fixture derivations and to confirm that none exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .kernel import Assumption, CoordApp, Derivation, RuleApp
from .syntax import (
    ANY,
    Apply,
    ConnectiveSpec,
    Constant,
    Formula,
    Plain,
    Role,
    Sign,
    SignedFormula,
)


def formula_universe(lib: Sequence[ConnectiveSpec], atoms: Sequence[str] = ("p", "q")) -> list[Formula]:
    base = [Constant(a) for a in atoms]
    consts = [Constant(s.name) for s in lib if s.arity == 0]
    compounds = [Apply(s.name, args) for s in lib if s.arity > 0
                 for args in itertools.product(base, repeat=s.arity)]
    return base + consts + compounds


@dataclass(frozen=True)
class _Instance:
    connective: str
    rule: str
    subst: tuple[tuple[str, Formula], ...]
    needs: int                 # major and plain premises
    children: tuple            # ("plain", idx) or ("side", hyp_mask, hyp_idxs, end_idx|None)
    conclusion: int | None     # None: arbitrary


class Searcher:
    def __init__(self, lib: Sequence[ConnectiveSpec], atoms: Sequence[str] = ("p", "q")):
        self.lib = list(lib)
        self.formulas = formula_universe(self.lib, atoms)
        self.signed: list[SignedFormula] = []
        for f in self.formulas:
            self.signed += [SignedFormula(Sign.PLUS, f), SignedFormula(Sign.MINUS, f)]
        self.index = {sf: i for i, sf in enumerate(self.signed)}
        self.n = len(self.signed)
        self.full = (1 << self.n) - 1
        self.even = sum(1 << i for i in range(0, self.n, 2))
        self.instances = list(self._instances())
        self.axioms = 0
        for inst in self.instances:
            if not inst.children and inst.conclusion is not None:
                self.axioms |= 1 << inst.conclusion
        self._derivable = lru_cache(maxsize=None)(self._derivable_uncached)

    def _idx(self, sf: SignedFormula) -> int | None:
        return self.index.get(sf)

    def _instances(self):
        for spec in self.lib:
            for rule in spec.rules():
                for values in itertools.product(self.formulas, repeat=spec.arity):
                    subst = dict(zip(spec.arg_vars, values))
                    inst = self._instance(spec, rule, subst)
                    if inst is not None:
                        yield inst

    def _instance(self, spec, rule, subst):
        r = rule.substitute(subst)
        needs = 0
        children = []
        if r.role is Role.ELIM:
            i = self._idx(r.major)
            if i is None:
                return None
            needs |= 1 << i
            children.append(("plain", i))
        for p in r.premises:
            if isinstance(p, Plain):
                i = self._idx(p.sf)
                if i is None:
                    return None
                needs |= 1 << i
                children.append(("plain", i))
            else:
                hyps = [self._idx(h) for h in p.discharged]
                end = None if p.end is ANY else self._idx(p.end)
                if None in hyps or (p.end is not ANY and end is None):
                    return None
                mask = sum(1 << h for h in hyps)
                children.append(("side", mask, tuple(hyps), end))
        concl = None
        if r.conclusion is not ANY:
            concl = self._idx(r.conclusion)
            if concl is None:
                return None
        return _Instance(spec.name, rule.name, tuple(sorted(subst.items())), needs,
                         tuple(children), concl)

    # -- derivable sets --

    def conj_mask(self, m: int) -> int:
        return ((m & self.even) << 1) | ((m >> 1) & self.even)

    def has_pair(self, m: int) -> bool:
        return bool(m & self.conj_mask(m))

    def derivable(self, ctx: int, height: int) -> int:
        return self._derivable(ctx, height)

    def _derivable_uncached(self, ctx: int, height: int) -> int:
        if height <= 1:
            return ctx | self.axioms
        prev = self._derivable(ctx, height - 1)
        if self.has_pair(prev):
            return self.full
        out = prev
        for inst in self.instances:
            if not inst.children or inst.needs & ~prev:
                continue
            reach = self.full
            for ch in inst.children:
                if ch[0] == "side":
                    sub = self._derivable(ctx | ch[1], height - 1)
                    reach &= sub if ch[3] is None else (self.full if sub >> ch[3] & 1 else 0)
            if inst.conclusion is None:
                out |= reach
            elif reach:
                out |= 1 << inst.conclusion
        for b in range(self.n):
            c = b ^ 1
            if out >> c & 1 or ctx >> b & 1:
                continue
            if self.has_pair(self._derivable(ctx | (1 << b), height - 1)):
                out |= 1 << c
        return out

    # -- witnesses --

    def find(self, assumptions: Iterable[SignedFormula], goal: SignedFormula,
             max_height: int = 6) -> Derivation | None:
        ctx = 0
        for sf in assumptions:
            i = self._idx(sf)
            if i is None:
                raise ValueError(f"{sf} is outside the search universe")
            ctx |= 1 << i
        g = self._idx(goal)
        if g is None:
            raise ValueError(f"{goal} is outside the search universe")
        if not self.derivable(ctx, max_height) >> g & 1:
            return None
        self._next_label = 1
        return self._build(ctx, g, max_height, {})

    def _fresh(self) -> int:
        lab = self._next_label
        self._next_label += 1
        return lab

    def _build(self, ctx: int, goal: int, height: int, labels: dict[int, int]) -> Derivation:
        h = next(k for k in range(1, height + 1) if self.derivable(ctx, k) >> goal & 1)
        sf = self.signed[goal]
        if ctx >> goal & 1:
            return Assumption(sf, labels.get(goal))
        if h == 1:
            inst = next(i for i in self.instances if not i.children and i.conclusion == goal)
            return RuleApp(inst.connective, inst.rule, dict(inst.subst))
        prev = self.derivable(ctx, h - 1)
        for inst in self.instances:
            if not inst.children or inst.needs & ~prev:
                continue
            if inst.conclusion is not None and inst.conclusion != goal:
                continue
            ok = True
            for ch in inst.children:
                if ch[0] == "side":
                    end = goal if ch[3] is None else ch[3]
                    if not self.derivable(ctx | ch[1], h - 1) >> end & 1:
                        ok = False
                        break
            if not ok:
                continue
            children = []
            discharged = {}
            for ch in inst.children:
                if ch[0] == "plain":
                    children.append(self._build(ctx, ch[1], h - 1, labels))
                else:
                    lab = self._fresh()
                    discharged[lab] = tuple(self.signed[i] for i in ch[2])
                    inner = dict(labels)
                    inner.update({i: lab for i in ch[2]})
                    end = goal if ch[3] is None else ch[3]
                    children.append(self._build(ctx | ch[1], end, h - 1, inner))
            has_side = any(ch[0] == "side" for ch in inst.children)
            concl = sf if inst.conclusion is None and not has_side else None
            return RuleApp(inst.connective, inst.rule, dict(inst.subst), tuple(children),
                           discharged, concl)
        beta = goal ^ 1
        sub_ctx = ctx | (1 << beta)
        sub = self.derivable(sub_ctx, h - 1)
        alpha = next(a for a in range(0, self.n, 2) if sub >> a & 1 and sub >> (a + 1) & 1)
        lab = self._fresh()
        inner = dict(labels)
        inner[beta] = lab
        left = self._build(sub_ctx, alpha, h - 1, inner)
        right = self._build(sub_ctx, alpha + 1, h - 1, inner)
        return CoordApp((left, right), lab, self.signed[beta])


def find_derivation(lib: Sequence[ConnectiveSpec], assumptions: Iterable[SignedFormula],
                    goal: SignedFormula, max_height: int = 6,
                    atoms: Sequence[str] = ("p", "q")) -> Derivation | None:
    """Search for a derivation of ``goal`` from ``assumptions`` of height <= ``max_height``."""
    return Searcher(lib, atoms).find(assumptions, goal, max_height)
