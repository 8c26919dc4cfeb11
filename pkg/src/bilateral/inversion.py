"""Rule types and inversion between a polarity's introduction and elimination rules.

Type 1 is the conjunction pattern: one introduction rule whose conclusion is
built from all and only its premises and discharged hypotheses, with one
elimination rule read off per premise.  Type 2 is the disjunction pattern: one
elimination rule whose side deductions conclude an arbitrary signed formula,
with one introduction rule read off per side deduction.

Elimination rules of type 1 and introduction rules of type 2 are recognised
through the inverse images of the two inversion maps, so their classification
looks at the rule's whole family, not only at the rule itself.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MismatchedConclusions, MismatchedMajors, WrongShape, WrongType
from .syntax import (
    ANY,
    Apply,
    ConnectiveSpec,
    Metavar,
    Plain,
    Role,
    RuleSchema,
    RuleType,
    Side,
    SignedFormula,
    canonicalize,
)


@dataclass(frozen=True)
class Classification:
    kind: str  # "definite", "ambiguous" or "ill-formed"
    type: RuleType | None = None
    reason: str = ""

    @classmethod
    def definitely(cls, t: RuleType) -> Classification:
        return cls("definite", t)

    @classmethod
    def ambiguous(cls, reason: str = "fits both types") -> Classification:
        return cls("ambiguous", None, reason)

    @classmethod
    def ill_formed(cls, reason: str) -> Classification:
        return cls("ill-formed", None, reason)

    @property
    def is_definite(self) -> bool:
        return self.kind == "definite"

    def __str__(self) -> str:
        if self.kind == "definite":
            return f"type {int(self.type)}"
        return f"{self.kind} ({self.reason})"


# -- shape conditions -------------------------------------------------------


def _arg_vars(rule: RuleSchema) -> tuple[str, ...]:
    f = rule.governed.formula
    if isinstance(f, Apply):
        return tuple(a.name for a in f.args if isinstance(a, Metavar))
    return ()


def _var(sf) -> str | None:
    if isinstance(sf, SignedFormula) and isinstance(sf.formula, Metavar):
        return sf.formula.name
    return None


def _all_and_only(used: Sequence[str], args: Sequence[str], what: str) -> str | None:
    counts = Counter(used)
    for v in args:
        if counts[v] == 0:
            return f"metavariable {v} unhoused by {what}"
    for v, n in counts.items():
        if n > 1:
            return f"metavariable {v} occurs {n} times among the {what}"
    return None


def type1_intro_problem(rule: RuleSchema) -> str | None:
    """Why ``rule`` is not a type-1 introduction rule, or None if it is."""
    if rule.role is not Role.INTRO:
        return "not an introduction rule"
    used: list[str] = []
    for p in rule.premises:
        if isinstance(p, Plain):
            v = _var(p.sf)
            if v is None:
                return "premise is not a signed metavariable"
            used.append(v)
        else:
            if p.end is ANY:
                return "side deduction ends in _ANY"
            if not p.discharged:
                return "side deduction discharges nothing"
            for sf in (*p.discharged, p.end):
                v = _var(sf)
                if v is None:
                    return "hypothesis is not a signed metavariable"
                used.append(v)
    return _all_and_only(used, _arg_vars(rule), "premises")


def type2_elim_problem(rule: RuleSchema) -> str | None:
    """Why ``rule`` is not a type-2 elimination rule, or None if it is."""
    if rule.role is not Role.ELIM:
        return "not an elimination rule"
    if rule.conclusion is not ANY:
        return "conclusion is not _ANY"
    used: list[str] = []
    for p in rule.premises:
        if not isinstance(p, Side) or p.end is not ANY:
            return "minor premise is not a side deduction of _ANY"
        if not p.discharged:
            return "side deduction discharges nothing"
        for h in p.discharged:
            v = _var(h)
            if v is None:
                return "hypothesis is not a signed metavariable"
            used.append(v)
    return _all_and_only(used, _arg_vars(rule), "discharged hypotheses")


def _local_type1_elim_problem(rule: RuleSchema) -> str | None:
    if rule.role is not Role.ELIM:
        return "not an elimination rule"
    if rule.conclusion is ANY:
        return "conclusion is _ANY"
    used = [_var(rule.conclusion)]
    for p in rule.premises:
        if not isinstance(p, Plain):
            return "minor premise is a side deduction"
        used.append(_var(p.sf))
    if None in used:
        return "minor premise is not a signed metavariable"
    args = _arg_vars(rule)
    for v in used:
        if v not in args:
            return f"metavariable {v} is not an argument of the major premise"
    dup = [v for v, n in Counter(used).items() if n > 1]
    if dup:
        return f"metavariable {dup[0]} occurs more than once"
    return None


def _local_type2_intro_problem(rule: RuleSchema) -> str | None:
    if rule.role is not Role.INTRO:
        return "not an introduction rule"
    if not rule.premises:
        return "no premises"
    used = []
    for p in rule.premises:
        if not isinstance(p, Plain):
            return "premise is a side deduction"
        used.append(_var(p.sf))
    if None in used:
        return "premise is not a signed metavariable"
    dup = [v for v, n in Counter(used).items() if n > 1]
    if dup:
        return f"metavariable {dup[0]} occurs more than once"
    if len(rule.premises) > 1:
        same = [p for p in rule.premises if p.sf.sign is rule.conclusion.sign]
        if len(same) != 1:
            return (f"{len(same)} premises share the conclusion's sign "
                    "(restriction 2.i needs exactly one)")
    return None


def type1_elim_problem(rule: RuleSchema, family: Sequence[RuleSchema]) -> str | None:
    """``rule`` is a type-1 elimination rule if its family inverts to a type-1 intro."""
    problem = _local_type1_elim_problem(rule)
    if problem:
        return problem
    try:
        intro = invert_elims1(rule.major, family)
    except WrongShape as exc:
        return str(exc)
    return type1_intro_problem(intro)


def type2_intro_problem(rule: RuleSchema, family: Sequence[RuleSchema]) -> str | None:
    """``rule`` is a type-2 introduction rule if its family inverts to a type-2 elim."""
    for r in family:
        problem = _local_type2_intro_problem(r)
        if problem:
            return problem
    try:
        elim = invert_intros2(rule.conclusion, family)
    except WrongShape as exc:
        return str(exc)
    return type2_elim_problem(elim)


def _family_for(rule: RuleSchema, spec: ConnectiveSpec | None,
                family: Iterable[RuleSchema] | None) -> list[RuleSchema]:
    if family is not None:
        fam = [canonicalize(r, spec) if spec else r for r in family]
    elif spec is not None:
        fam = [canonicalize(r, spec) for r in spec.family(rule.polarity, rule.role)]
    else:
        fam = []
    if rule not in fam:
        fam = [rule]
    return fam


def classify(rule: RuleSchema, spec: ConnectiveSpec | None = None,
             family: Iterable[RuleSchema] | None = None) -> Classification:
    """Classify ``rule`` as type 1, type 2, ambiguous or ill-formed.

    ``family`` defaults to the rule's family in ``spec``; a rule not found
    there is judged as a family of its own.
    """
    r = canonicalize(rule, spec) if spec else rule
    fam = _family_for(r, spec, family)
    if r.role is Role.INTRO:
        p1 = type1_intro_problem(r)
        if p1 is None and len(fam) > 1:
            p1 = f"a type-1 family has exactly one introduction rule, found {len(fam)}"
        p2 = type2_intro_problem(r, fam)
    else:
        p1 = type1_elim_problem(r, fam)
        p2 = type2_elim_problem(r)
        if p2 is None and len(fam) > 1:
            p2 = f"a type-2 family has exactly one elimination rule, found {len(fam)}"

    declared = rule.declared_type
    if p1 is None and p2 is None:
        if declared is None:
            return Classification.ambiguous("fits both types; declare (type 1) or (type 2)")
        return Classification.definitely(declared)
    if p1 is None or p2 is None:
        fits = RuleType.TYPE1 if p1 is None else RuleType.TYPE2
        if declared is not None and declared is not fits:
            why = p2 if declared is RuleType.TYPE2 else p1
            return Classification.ill_formed(f"declared type {int(declared)} but {why}")
        return Classification.definitely(fits)
    if p1 == p2:
        return Classification.ill_formed(p1)
    return Classification.ill_formed(f"{p1}; as type 2: {p2}")


# -- inversion maps ---------------------------------------------------------


def invert_intro1(intro: RuleSchema) -> list[RuleSchema]:
    """Read the elimination rules off a type-1 introduction rule."""
    problem = type1_intro_problem(intro)
    if problem:
        raise WrongType(f"not a type-1 introduction rule: {problem}")
    if intro.declared_type is RuleType.TYPE2:
        raise WrongType("rule is declared type 2")
    elims = []
    for p in intro.premises:
        if isinstance(p, Plain):
            elims.append(RuleSchema(Role.ELIM, p.sf, (), intro.conclusion,
                                    declared_type=RuleType.TYPE1))
        else:
            minors = tuple(Plain(h) for h in p.discharged)
            elims.append(RuleSchema(Role.ELIM, p.end, minors, intro.conclusion,
                                    declared_type=RuleType.TYPE1))
    return elims


def invert_elims1(major: SignedFormula, elims: Iterable[RuleSchema]) -> RuleSchema:
    """Rebuild the type-1 introduction rule from its elimination rules."""
    premises = []
    for e in elims:
        if e.role is not Role.ELIM:
            raise WrongShape("expected elimination rules")
        if e.major != major:
            raise MismatchedMajors(f"elimination rule has major {e.major}, expected {major}")
        if e.conclusion is ANY:
            raise WrongShape("a type-1 elimination rule cannot conclude _ANY")
        if not all(isinstance(p, Plain) for p in e.premises):
            raise WrongShape("minor premises must be plain signed formulas")
        if e.premises:
            premises.append(Side(tuple(p.sf for p in e.premises), e.conclusion))
        else:
            premises.append(Plain(e.conclusion))
    return RuleSchema(Role.INTRO, major, tuple(premises), declared_type=RuleType.TYPE1)


def invert_elim2(elim: RuleSchema) -> list[RuleSchema]:
    """Read the introduction rules off a type-2 elimination rule."""
    if elim.role is not Role.ELIM or elim.conclusion is not ANY or not all(
            isinstance(p, Side) and p.end is ANY for p in elim.premises):
        raise WrongType("not a type-2 elimination rule")
    return [RuleSchema(Role.INTRO, elim.major, tuple(Plain(h) for h in p.discharged),
                       declared_type=RuleType.TYPE2)
            for p in elim.premises]


def invert_intros2(major: SignedFormula, intros: Iterable[RuleSchema]) -> RuleSchema:
    """Rebuild the type-2 elimination rule from its introduction rules."""
    sides = []
    for i in intros:
        if i.role is not Role.INTRO:
            raise WrongShape("expected introduction rules")
        if i.conclusion != major:
            raise MismatchedConclusions(f"introduction rule concludes {i.conclusion}, "
                                        f"expected {major}")
        if not all(isinstance(p, Plain) for p in i.premises):
            raise WrongShape("premises must be plain signed formulas")
        if not i.premises:
            raise WrongShape("an introduction rule without premises would need vacuous discharge")
        sides.append(Side(tuple(p.sf for p in i.premises), ANY))
    return RuleSchema(Role.ELIM, ANY, tuple(sides), major, declared_type=RuleType.TYPE2)
