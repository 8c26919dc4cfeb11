"""Conversion between polarities, rule-set completion and harmony checking.

Conversion turns a type-1 elimination rule for a signed formula into a type-2
introduction rule for its conjugate (process 1), and back (process 2).  With
inversion this fixes all four rule families of a connective from any one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import IllFormedFamily, RestrictionViolation, WrongType
from .inversion import (
    Classification,
    _local_type1_elim_problem,
    _local_type2_intro_problem,
    classify,
    invert_elim2,
    invert_elims1,
    invert_intro1,
    invert_intros2,
    type1_intro_problem,
    type2_elim_problem,
)
from .syntax import (
    ANY,
    FAMILY_KEYS,
    ConnectiveSpec,
    Plain,
    Polarity,
    Role,
    RuleSchema,
    RuleType,
    Side,
    canonicalize,
    default_arg_vars,
    family_equal,
    family_label,
    format_rule,
)


@dataclass(frozen=True)
class FamilyDescriptor:
    polarity: Polarity
    role: Role
    type: RuleType

    @property
    def key(self) -> tuple[Polarity, Role]:
        return (self.polarity, self.role)

    @property
    def label(self) -> str:
        return family_label(self.polarity, self.role)

    def __str__(self) -> str:
        return f"{self.label} (type {int(self.type)})"


@dataclass(frozen=True)
class Violation:
    code: str  # "1.i", "2.i", "1.e", "2.e"
    location: str
    message: str

    def __str__(self) -> str:
        return f"restriction {self.code} violated at {self.location}: {self.message}"


# -- restrictions -----------------------------------------------------------


def _exactly_one(signed, sign) -> bool:
    return sum(1 for sf in signed if sf.sign is sign) == 1


def check_restriction(rule: RuleSchema, d: FamilyDescriptor) -> Violation | None:
    """Check the restriction that applies to ``rule`` read as a member of ``d``.

    Returns None when the rule passes (including when the restriction's
    trigger condition does not hold).
    """
    if d.role is Role.INTRO and d.type is RuleType.TYPE1:
        for i, p in enumerate(rule.premises):
            if isinstance(p, Side) and len(p.discharged) > 1 \
                    and not _exactly_one(p.discharged, rule.conclusion.sign):
                return Violation("1.i", f"premise {i}",
                                 "exactly one discharged assumption must have the "
                                 "sign of the conclusion")
    elif d.role is Role.INTRO:
        if len(rule.premises) > 1:
            signed = [p.sf for p in rule.premises if isinstance(p, Plain)]
            if not _exactly_one(signed, rule.conclusion.sign):
                return Violation("2.i", "premises",
                                 "exactly one premise must have the sign of the conclusion")
    elif d.type is RuleType.TYPE1:
        minors = [p.sf for p in rule.premises if isinstance(p, Plain)]
        if len(minors) > 1 and not _exactly_one(minors, rule.major.sign):
            return Violation("1.e", "minor premises",
                             "exactly one minor premise must have the sign of the major")
    else:
        for i, p in enumerate(rule.premises):
            if isinstance(p, Side) and len(p.discharged) > 1 \
                    and not _exactly_one(p.discharged, rule.major.sign):
                return Violation("2.e", f"premise {i}",
                                 "exactly one discharged assumption must have the "
                                 "sign of the major premise")
    return None


# -- the two conversion processes -------------------------------------------


def convert_elim1_to_intro2(rule: RuleSchema) -> RuleSchema:
    """Process 1: type-1 elim for a signed formula -> type-2 intro for its conjugate."""
    problem = _local_type1_elim_problem(rule)
    if problem:
        raise WrongType(f"not a type-1 elimination rule: {problem}")
    v = check_restriction(rule, FamilyDescriptor(rule.polarity, Role.ELIM, RuleType.TYPE1))
    if v:
        raise RestrictionViolation(v)
    designated = rule.conclusion.conjugate()
    out = RuleSchema(Role.INTRO, rule.major.conjugate(),
                     (Plain(designated), *rule.premises),
                     declared_type=RuleType.TYPE2)
    # the result must convert back through the same premise
    v = check_restriction(out, FamilyDescriptor(out.polarity, Role.INTRO, RuleType.TYPE2))
    if v:
        raise RestrictionViolation(Violation(
            "2.i", "converted rule", f"conversion of {format_rule(rule)} gives "
            f"{format_rule(out)}, which {v.message[0].lower()}{v.message[1:]}"))
    if len(out.premises) > 1 and designated.sign is not out.conclusion.sign:
        raise RestrictionViolation(Violation(
            "2.i", "converted rule", f"conversion of {format_rule(rule)} would not "
            "be recovered by the converse process"))
    return out


def convert_intro2_to_elim1(rule: RuleSchema) -> RuleSchema:
    """Process 2: type-2 intro for a signed formula -> type-1 elim for its conjugate."""
    if rule.role is not Role.INTRO or rule.conclusion is ANY or not rule.premises \
            or not all(isinstance(p, Plain) for p in rule.premises):
        raise WrongType("not a type-2 introduction rule")
    v = check_restriction(rule, FamilyDescriptor(rule.polarity, Role.INTRO, RuleType.TYPE2))
    if v:
        raise RestrictionViolation(v)
    if len(rule.premises) > 1:
        idx = next(i for i, p in enumerate(rule.premises)
                   if p.sf.sign is rule.conclusion.sign)
    else:
        idx = 0
    conclusion = rule.premises[idx].sf.conjugate()
    minors = rule.premises[:idx] + rule.premises[idx + 1:]
    out = RuleSchema(Role.ELIM, conclusion, minors, rule.conclusion.conjugate(),
                     declared_type=RuleType.TYPE1)
    v = check_restriction(out, FamilyDescriptor(out.polarity, Role.ELIM, RuleType.TYPE1))
    if v:
        raise RestrictionViolation(Violation(
            "1.e", "converted rule", f"conversion of {format_rule(rule)} gives "
            f"{format_rule(out)}, which violates 1.e"))
    return out


# -- completion -------------------------------------------------------------


def _rule_name(spec_name: str, polarity: Polarity, role: Role, i: int, n: int) -> str:
    suffix = str(i + 1) if n > 1 else ""
    return f"{polarity.sign}{spec_name}{'I' if role is Role.INTRO else 'E'}{suffix}"


def complete(spec_name: str, arity: int, d: FamilyDescriptor, rules: Sequence[RuleSchema],
             arg_vars: Sequence[str] | None = None) -> ConnectiveSpec:
    """Derive all four rule families of a connective from the family ``d``.

    From a type-1 family: invert to its partner, convert every elimination
    rule (process 1) into an opposite-polarity type-2 introduction rule, and
    invert those to the type-2 elimination rule.  From a type-2 family the
    dual path uses process 2.
    """
    args = tuple(arg_vars) if arg_vars is not None else default_arg_vars(arity)
    skeleton = ConnectiveSpec(spec_name, arity, args, {d.key: tuple(rules)})
    given = [canonicalize(r, skeleton) for r in rules]
    for r in given:
        if r.role is not d.role or r.polarity is not d.polarity:
            raise IllFormedFamily(f"{format_rule(r)} does not belong to {d.label}")
        c = classify(r, skeleton, given)
        if c.kind == "ill-formed" or (c.is_definite and c.type is not d.type):
            raise IllFormedFamily(f"{format_rule(r)} is not a type-{int(d.type)} "
                                  f"{d.role.value} rule: {c}")
        v = check_restriction(r, d)
        if v:
            raise RestrictionViolation(v)
    if len(given) != 1 and ((d.type is RuleType.TYPE1 and d.role is Role.INTRO)
                            or (d.type is RuleType.TYPE2 and d.role is Role.ELIM)):
        raise IllFormedFamily(f"a type-{int(d.type)} family has exactly one "
                              f"{d.role.value} rule, got {len(given)}")

    pol = d.polarity
    opp = pol.opposite()
    same_gov = skeleton.governed(pol)
    opp_gov = skeleton.governed(opp)
    fams: dict = {}
    if d.type is RuleType.TYPE1:
        if d.role is Role.INTRO:
            intro = given[0]
            elims = [canonicalize(e, skeleton) for e in invert_intro1(intro)]
        else:
            elims = given
            intro = canonicalize(invert_elims1(same_gov, elims), skeleton)
        opp_intros = [canonicalize(convert_elim1_to_intro2(e), skeleton) for e in elims]
        opp_elim = canonicalize(invert_intros2(opp_gov, opp_intros), skeleton)
        fams[(pol, Role.INTRO)] = [intro]
        fams[(pol, Role.ELIM)] = elims
        fams[(opp, Role.INTRO)] = opp_intros
        fams[(opp, Role.ELIM)] = [opp_elim]
        types = {pol: RuleType.TYPE1, opp: RuleType.TYPE2}
    else:
        if d.role is Role.ELIM:
            elim = given[0]
            intros = [canonicalize(i, skeleton) for i in invert_elim2(elim)]
        else:
            intros = given
            elim = canonicalize(invert_intros2(same_gov, intros), skeleton)
        opp_elims = [canonicalize(convert_intro2_to_elim1(i), skeleton) for i in intros]
        opp_intro = canonicalize(invert_elims1(opp_gov, opp_elims), skeleton)
        fams[(pol, Role.INTRO)] = intros
        fams[(pol, Role.ELIM)] = [elim]
        fams[(opp, Role.INTRO)] = [opp_intro]
        fams[(opp, Role.ELIM)] = opp_elims
        types = {pol: RuleType.TYPE2, opp: RuleType.TYPE1}

    named = {}
    for key in FAMILY_KEYS:
        fam = fams[key]
        named[key] = tuple(
            replace(r, name=_rule_name(spec_name, key[0], key[1], i, len(fam)),
                    declared_type=types[key[0]])
            for i, r in enumerate(fam))
    return ConnectiveSpec(spec_name, arity, args, named)


def complete_spec(spec: ConnectiveSpec, polarity: Polarity, role: Role,
                  type: RuleType | None = None) -> ConnectiveSpec:
    """Complete ``spec`` from one of its own families, inferring the type if needed."""
    rules = spec.family(polarity, role)
    if type is None:
        type = family_type(spec, polarity, role)
        if not isinstance(type, RuleType):
            raise IllFormedFamily(f"{family_label(polarity, role)} of {spec.name}: {type}")
    return complete(spec.name, spec.arity, FamilyDescriptor(polarity, role, type), rules,
                    spec.arg_vars)


# -- harmony ----------------------------------------------------------------


def family_classification(spec: ConnectiveSpec, polarity: Polarity,
                          role: Role) -> Classification | None:
    """Common classification of a family's rules; None for an empty family."""
    rules = spec.family(polarity, role)
    if not rules:
        return None
    results = [classify(r, spec) for r in rules]
    for r, c in zip(rules, results):
        if c.kind != "definite":
            label = r.name or format_rule(r)
            return replace(c, reason=f"{label}: {c.reason}")
    types = {c.type for c in results}
    if len(types) > 1:
        return Classification.ill_formed("rules of mixed type")
    return results[0]


def family_type(spec: ConnectiveSpec, polarity: Polarity, role: Role):
    """The family's type, borrowing its partner's for an empty family.

    Returns a :class:`RuleType`, or a string explaining why there is none.
    """
    own = family_classification(spec, polarity, role)
    other_role = Role.ELIM if role is Role.INTRO else Role.INTRO
    if own is None:
        own = family_classification(spec, polarity, other_role)
        if own is None:
            return "no rules for this polarity"
    if not own.is_definite:
        return str(own)
    return own.type


class Verdict(enum.Enum):
    HARMONIOUS = "Harmonious"
    INVERSION_VIOLATION = "InversionViolation"
    CONVERSION_VIOLATION = "ConversionViolation"
    ILL_FORMED = "IllFormed"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Check:
    kind: str  # classification | inversion | pairing | restriction | conversion
    family: str
    passed: bool
    expected: str = ""
    found: str = ""
    source: str = ""

    def as_dict(self) -> dict:
        return {"kind": self.kind, "family": self.family, "source": self.source,
                "passed": self.passed, "expected": self.expected, "found": self.found}


@dataclass
class HarmonyReport:
    connective: str
    family_classifications: dict[str, Classification | None] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    verdict: Verdict = Verdict.HARMONIOUS

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "connective": self.connective,
            "verdict": self.verdict.value,
            "families": {
                k: (None if c is None else {"kind": c.kind,
                                            "type": None if c.type is None else int(c.type),
                                            "reason": c.reason})
                for k, c in self.family_classifications.items()
            },
            "checks": [c.as_dict() for c in self.checks],
        }


def _show(rules: Iterable[RuleSchema], spec: ConnectiveSpec) -> str:
    shown = sorted(format_rule(canonicalize(r, spec)) for r in rules)
    return "; ".join(shown) if shown else "(none)"


_VERDICT_OF = {
    "classification": Verdict.ILL_FORMED,
    "inversion": Verdict.INVERSION_VIOLATION,
    "pairing": Verdict.CONVERSION_VIOLATION,
    "restriction": Verdict.CONVERSION_VIOLATION,
    "conversion": Verdict.CONVERSION_VIOLATION,
}
_PRECEDENCE = [Verdict.ILL_FORMED, Verdict.INVERSION_VIOLATION, Verdict.CONVERSION_VIOLATION]


def _other_role(role: Role) -> Role:
    return Role.ELIM if role is Role.INTRO else Role.INTRO


def _fits_locally(rules: Sequence[RuleSchema], role: Role, partner_type: RuleType) -> bool:
    """Whether each rule has the shape its partner's type calls for."""
    if role is Role.ELIM:
        problem = _local_type1_elim_problem if partner_type is RuleType.TYPE1 \
            else type2_elim_problem
    else:
        problem = type1_intro_problem if partner_type is RuleType.TYPE1 \
            else _local_type2_intro_problem
    return all(problem(r) is None for r in rules)


def check_harmony(spec: ConnectiveSpec) -> HarmonyReport:
    report = HarmonyReport(spec.name)
    checks = report.checks

    for key in FAMILY_KEYS:
        report.family_classifications[family_label(*key)] = family_classification(spec, *key)
    # families that only fail to invert against a well-typed partner
    mismatched: dict[str, RuleType] = {}
    for key in FAMILY_KEYS:
        label = family_label(*key)
        c = report.family_classifications[label]
        if c is None:
            continue
        partner = report.family_classifications[family_label(key[0], _other_role(key[1]))]
        if not c.is_definite and partner is not None and partner.is_definite \
                and _fits_locally(spec.family(*key), key[1], partner.type):
            mismatched[label] = partner.type
            checks.append(Check("inversion", label, False,
                                expected=f"the inverse of the type-{int(partner.type)} "
                                         f"{_other_role(key[1]).value} rules",
                                found=str(c)))
            continue
        checks.append(Check("classification", label, c.is_definite,
                            expected="type 1 or type 2", found=str(c)))

    if all(c.passed for c in checks if c.kind == "classification"):
        types: dict[Polarity, RuleType] = {}
        for pol in Polarity:
            ci = report.family_classifications[family_label(pol, Role.INTRO)]
            ce = report.family_classifications[family_label(pol, Role.ELIM)]
            if family_label(pol, Role.INTRO) in mismatched:
                ci = None
            if family_label(pol, Role.ELIM) in mismatched:
                ce = None
            if ci is None and ce is None:
                checks.append(Check("classification", pol.value, False,
                                    expected="at least one rule", found="(none)"))
                continue
            if ci is not None and ce is not None and ci.type is not ce.type:
                checks.append(Check("inversion", pol.value, False,
                                    expected="intro and elim rules of one type",
                                    found=f"intro {ci}, elim {ce}"))
                continue
            types[pol] = (ci or ce).type
        if len(types) == 2:
            a, r = types[Polarity.ASSERTIVE], types[Polarity.REJECTIVE]
            checks.append(Check("pairing", "assertive/rejective", a is not r,
                                expected="one type-1 and one type-2 polarity",
                                found=f"assertive type {int(a)}, rejective type {int(r)}"))

        for key in FAMILY_KEYS:
            pol, role = key
            if not spec.family(*key) or pol not in types or family_label(*key) in mismatched:
                continue
            d = FamilyDescriptor(pol, role, types[pol])
            for rule in spec.family(*key):
                v = check_restriction(canonicalize(rule, spec), d)
                if v:
                    checks.append(Check("restriction", d.label, False,
                                        expected=f"restriction {v.code}",
                                        found=f"{rule.name or format_rule(rule)}: {v.message}"))
            try:
                done = complete(spec.name, spec.arity, d, spec.family(*key), spec.arg_vars)
            except (RestrictionViolation, IllFormedFamily, WrongType) as exc:
                checks.append(Check("conversion", d.label, False,
                                    expected="a completion", found=str(exc), source=d.label))
                continue
            for other in FAMILY_KEYS:
                if other == key:
                    continue
                kind = "inversion" if other[0] is pol else "conversion"
                ok = family_equal(done.families[other], spec.families[other], spec)
                checks.append(Check(kind, family_label(*other), ok,
                                    expected=_show(done.families[other], spec),
                                    found=_show(spec.families[other], spec),
                                    source=d.label))

    failed = {_VERDICT_OF[c.kind] for c in checks if not c.passed}
    report.verdict = next((v for v in _PRECEDENCE if v in failed), Verdict.HARMONIOUS)
    return report
