"""Signs, formulas, signed formulas and rule schemas.

Every value here is an immutable dataclass, so rules can be put in sets and
counted as multisets.  A rule's ``name`` and ``declared_type`` are metadata and
take no part in equality.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping, Union


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def conjugate(self) -> Sign:
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    def __str__(self) -> str:
        return self.value


class Role(enum.Enum):
    INTRO = "intro"
    ELIM = "elim"


class Polarity(enum.Enum):
    ASSERTIVE = "assertive"
    REJECTIVE = "rejective"

    @property
    def sign(self) -> Sign:
        return Sign.PLUS if self is Polarity.ASSERTIVE else Sign.MINUS

    @classmethod
    def of(cls, sign: Sign) -> Polarity:
        return cls.ASSERTIVE if sign is Sign.PLUS else cls.REJECTIVE

    def opposite(self) -> Polarity:
        return Polarity.REJECTIVE if self is Polarity.ASSERTIVE else Polarity.ASSERTIVE


class RuleType(enum.IntEnum):
    TYPE1 = 1
    TYPE2 = 2

    def other(self) -> RuleType:
        return RuleType.TYPE2 if self is RuleType.TYPE1 else RuleType.TYPE1


# -- formulas ---------------------------------------------------------------


@dataclass(frozen=True)
class Metavar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Constant:
    """A 0-ary connective such as ``bot``, or a propositional atom."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Apply:
    connective: str
    args: tuple[Formula, ...]

    def __str__(self) -> str:
        return "(" + " ".join([self.connective, *map(str, self.args)]) + ")"


Formula = Union[Metavar, Constant, Apply]


@dataclass(frozen=True)
class SignedFormula:
    sign: Sign
    formula: Formula

    def conjugate(self) -> SignedFormula:
        return SignedFormula(self.sign.conjugate(), self.formula)

    def __str__(self) -> str:
        return f"({self.sign} {self.formula})"


class ArbitraryMark:
    """Placeholder for "any signed formula" in type-2 elimination rules."""

    _instance: ArbitraryMark | None = None

    def __new__(cls) -> ArbitraryMark:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ANY"

    def __str__(self) -> str:
        return "_ANY"

    def __reduce__(self):
        return (ArbitraryMark, ())


ANY = ArbitraryMark()

Target = Union[SignedFormula, ArbitraryMark]


def plus(formula: Formula) -> SignedFormula:
    return SignedFormula(Sign.PLUS, formula)


def minus(formula: Formula) -> SignedFormula:
    return SignedFormula(Sign.MINUS, formula)


def conjugate(x):
    """Flip the sign of a :class:`Sign` or :class:`SignedFormula`."""
    if isinstance(x, (Sign, SignedFormula)):
        return x.conjugate()
    raise TypeError(f"cannot conjugate {x!r}")


def metavars(formula: Formula) -> Iterator[str]:
    """Metavariable names in ``formula``, left to right, with repeats."""
    if isinstance(formula, Metavar):
        yield formula.name
    elif isinstance(formula, Apply):
        for arg in formula.args:
            yield from metavars(arg)


def is_closed(formula: Formula) -> bool:
    return next(metavars(formula), None) is None


def substitute(formula: Formula, subst: Mapping[str, Formula]) -> Formula:
    if isinstance(formula, Metavar):
        return subst.get(formula.name, formula)
    if isinstance(formula, Apply):
        return Apply(formula.connective, tuple(substitute(a, subst) for a in formula.args))
    return formula


def substitute_signed(sf: Target, subst: Mapping[str, Formula]) -> Target:
    if isinstance(sf, ArbitraryMark):
        return sf
    return SignedFormula(sf.sign, substitute(sf.formula, subst))


# -- premises and rules -----------------------------------------------------


@dataclass(frozen=True)
class Plain:
    sf: SignedFormula


@dataclass(frozen=True)
class Side:
    """A side deduction: ``end`` derived from the ``discharged`` hypotheses."""

    discharged: tuple[SignedFormula, ...]
    end: Target


Premise = Union[Plain, Side]


@dataclass(frozen=True)
class RuleSchema:
    role: Role
    conclusion: Target
    premises: tuple[Premise, ...] = ()
    major: SignedFormula | None = None
    name: str = field(default="", compare=False)
    declared_type: RuleType | None = field(default=None, compare=False)

    @property
    def governed(self) -> SignedFormula:
        """The signed formula whose main operator the rule is about."""
        if self.role is Role.ELIM:
            assert self.major is not None
            return self.major
        assert isinstance(self.conclusion, SignedFormula)
        return self.conclusion

    @property
    def polarity(self) -> Polarity:
        return Polarity.of(self.governed.sign)

    def signed_formulas(self) -> Iterator[SignedFormula]:
        """Every signed formula written in the rule (the mark excluded)."""
        if self.major is not None:
            yield self.major
        for p in self.premises:
            if isinstance(p, Plain):
                yield p.sf
            else:
                yield from p.discharged
                if isinstance(p.end, SignedFormula):
                    yield p.end
        if isinstance(self.conclusion, SignedFormula):
            yield self.conclusion

    def metavars(self) -> set[str]:
        return {v for sf in self.signed_formulas() for v in metavars(sf.formula)}

    def rename(self, mapping: Mapping[str, str]) -> RuleSchema:
        subst = {k: Metavar(v) for k, v in mapping.items()}
        return self.substitute(subst)

    def substitute(self, subst: Mapping[str, Formula]) -> RuleSchema:
        def prem(p: Premise) -> Premise:
            if isinstance(p, Plain):
                return Plain(substitute_signed(p.sf, subst))
            return Side(
                tuple(substitute_signed(h, subst) for h in p.discharged),
                substitute_signed(p.end, subst),
            )

        return replace(
            self,
            conclusion=substitute_signed(self.conclusion, subst),
            premises=tuple(prem(p) for p in self.premises),
            major=None if self.major is None else substitute_signed(self.major, subst),
        )


FamilyKey = tuple  # (Polarity, Role)

FAMILY_KEYS: tuple[tuple[Polarity, Role], ...] = (
    (Polarity.ASSERTIVE, Role.INTRO),
    (Polarity.ASSERTIVE, Role.ELIM),
    (Polarity.REJECTIVE, Role.INTRO),
    (Polarity.REJECTIVE, Role.ELIM),
)


def family_label(polarity: Polarity, role: Role) -> str:
    return f"{polarity.value}-{role.value}"


def parse_family_label(text: str) -> tuple[Polarity, Role]:
    for key in FAMILY_KEYS:
        if family_label(*key) == text:
            return key
    raise ValueError(f"unknown family {text!r}")


@dataclass(frozen=True)
class ConnectiveSpec:
    name: str
    arity: int
    arg_vars: tuple[str, ...]
    families: Mapping[tuple[Polarity, Role], tuple[RuleSchema, ...]] = field(
        default_factory=dict, hash=False
    )

    def __post_init__(self) -> None:
        fams = {key: tuple(self.families.get(key, ())) for key in FAMILY_KEYS}
        object.__setattr__(self, "families", fams)

    def family(self, polarity: Polarity, role: Role) -> tuple[RuleSchema, ...]:
        return self.families[(polarity, role)]

    def rules(self) -> Iterator[RuleSchema]:
        for key in FAMILY_KEYS:
            yield from self.families[key]

    def rule(self, name: str) -> RuleSchema:
        for r in self.rules():
            if r.name == name:
                return r
        raise KeyError(name)

    def compound(self, vars: Iterable[str] | None = None) -> Formula:
        """The governed compound applied to ``vars`` (default: ``arg_vars``)."""
        if self.arity == 0:
            return Constant(self.name)
        names = self.arg_vars if vars is None else tuple(vars)
        return Apply(self.name, tuple(Metavar(v) for v in names))

    def governed(self, polarity: Polarity) -> SignedFormula:
        return SignedFormula(polarity.sign, self.compound())

    def with_families(self, families) -> ConnectiveSpec:
        return ConnectiveSpec(self.name, self.arity, self.arg_vars, families)


def default_arg_vars(arity: int) -> tuple[str, ...]:
    return tuple("ABCDEFGHIJKLMNOPQRSTUVWXYZ"[:arity])


# -- printing, canonical form, equality -------------------------------------


def format_target(t: Target) -> str:
    return str(t)


def format_premise(p: Premise) -> str:
    if isinstance(p, Plain):
        return str(p.sf)
    hyps = " ".join(map(str, p.discharged))
    return f"(side (discharge {hyps}) {p.end})"


def canonicalize(rule: RuleSchema, spec: ConnectiveSpec) -> RuleSchema:
    """Rename metavariables to ``spec.arg_vars`` and sort the premises.

    The governed compound fixes the renaming: its i-th argument becomes the
    i-th declared argument variable.  The name is cleared.
    """
    gov = rule.governed.formula
    mapping: dict[str, str] = {}
    if isinstance(gov, Apply):
        for arg, target in zip(gov.args, spec.arg_vars):
            if isinstance(arg, Metavar):
                mapping[arg.name] = target
    # two-step rename so that swaps such as A<->B don't collide
    tmp = {k: f"\0{i}" for i, k in enumerate(mapping)}
    back = {f"\0{i}": mapping[k] for i, k in enumerate(mapping)}
    renamed = rule.rename(tmp).rename(back)

    def norm(p: Premise) -> Premise:
        if isinstance(p, Side):
            return Side(tuple(sorted(p.discharged, key=str)), p.end)
        return p

    premises = tuple(sorted((norm(p) for p in renamed.premises), key=format_premise))
    return replace(renamed, premises=premises, name="")


def family_equal(f1: Iterable[RuleSchema], f2: Iterable[RuleSchema], spec: ConnectiveSpec) -> bool:
    c1 = Counter(canonicalize(r, spec) for r in f1)
    c2 = Counter(canonicalize(r, spec) for r in f2)
    return c1 == c2


def specs_equal(a: ConnectiveSpec, b: ConnectiveSpec) -> bool:
    """Same name, arity and families (under :func:`family_equal`)."""
    if (a.name, a.arity) != (b.name, b.arity):
        return False
    return all(family_equal(a.families[k], b.families[k], a) for k in FAMILY_KEYS)


def format_rule(rule: RuleSchema) -> str:
    """One-line sequent-style rendering, e.g. ``(+ A), (+ B) |- (+ (and A B))``."""
    parts = []
    if rule.major is not None:
        parts.append(str(rule.major))
    for p in rule.premises:
        if isinstance(p, Plain):
            parts.append(str(p.sf))
        else:
            parts.append("[" + ", ".join(map(str, p.discharged)) + "] " + str(p.end))
    return ", ".join(parts) + (" |- " if parts else "|- ") + str(rule.conclusion)
