"""Checker for concrete bilateral natural-deduction derivations.

A derivation is a tree of assumptions, rule applications (instances of a
library rule under a substitution) and co-ordination steps: if a signed
formula and its conjugate both follow from Γ together with β, then the
conjugate of β follows from Γ, discharging β.

File format (one derivation per file)::

    (assume (+ p) :label 1)
    (rule "imp" "+impE" (:subst (A p) (B bot)) (:discharge 1 (+ p)) CHILD...)
    (coord :label 1 (+ p) CHILD1 CHILD2)

``(:conclude (SIGN FORMULA))`` may be added to a rule application; it is
required only when the conclusion is an arbitrary formula that no side
deduction fixes (``+botE``, ``-topE``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .dsl import STANDARD_ARITIES, connective_name, read_signed
from .errors import ParseError
from .sexpr import Atom, Node, SList, quote, read_all
from .syntax import (
    ANY,
    Constant,
    ConnectiveSpec,
    Formula,
    Plain,
    Role,
    RuleSchema,
    Side,
    SignedFormula,
    is_closed,
    substitute,
    substitute_signed,
)


@dataclass(frozen=True)
class Assumption:
    sf: SignedFormula
    label: int | None = None


@dataclass(frozen=True)
class RuleApp:
    connective: str
    rule: str
    substitution: Mapping[str, Formula] = field(default_factory=dict, hash=False)
    subderivations: tuple[Derivation, ...] = ()
    discharged: Mapping[int, tuple[SignedFormula, ...]] = field(default_factory=dict, hash=False)
    conclusion: SignedFormula | None = None


@dataclass(frozen=True)
class CoordApp:
    subderivations: tuple[Derivation, Derivation]
    label: int
    assumption: SignedFormula

    @property
    def conclusion(self) -> SignedFormula:
        return self.assumption.conjugate()


Derivation = Union[Assumption, RuleApp, CoordApp]


@dataclass(frozen=True)
class CheckOutcome:
    valid: bool
    open_assumptions: Counter = field(default_factory=Counter, hash=False)
    conclusion: SignedFormula | None = None
    path: tuple[int, ...] = ()
    kind: str = ""
    reason: str = ""

    @property
    def where(self) -> str:
        return "root" + "".join(f".{i}" for i in self.path)

    def __str__(self) -> str:
        if self.valid:
            opens = ", ".join(sorted(map(str, self.open_assumptions.elements())))
            return f"Valid: {{{opens}}} |- {self.conclusion}"
        return f"Invalid at {self.where}: {self.kind}: {self.reason}"


class _Invalid(Exception):
    def __init__(self, path, kind, reason):
        self.path, self.kind, self.reason = tuple(path), kind, reason


# -- open assumptions -------------------------------------------------------


def open_assumptions(d: Derivation) -> Counter:
    """Assumption leaves not closed by a discharge on an ancestor node."""
    out: Counter = Counter()

    def walk(node: Derivation, closing: Mapping[int, frozenset]) -> None:
        if isinstance(node, Assumption):
            if node.label is None or node.sf not in closing.get(node.label, ()):
                out[node.sf] += 1
            return
        inner = dict(closing)
        if isinstance(node, CoordApp):
            inner[node.label] = frozenset([node.assumption])
        else:
            for lab, sfs in node.discharged.items():
                inner[lab] = frozenset(sfs)
        for child in node.subderivations:
            walk(child, inner)

    walk(d, {})
    return out


def discharge_labels(d: Derivation) -> Iterator[int]:
    """Labels introduced by discharging nodes, with repeats."""
    if isinstance(d, CoordApp):
        yield d.label
    elif isinstance(d, RuleApp):
        yield from d.discharged
    if not isinstance(d, Assumption):
        for c in d.subderivations:
            yield from discharge_labels(c)


def relabel(d: Derivation, mapping: Mapping[int, int]) -> Derivation:
    if isinstance(d, Assumption):
        return Assumption(d.sf, None if d.label is None else mapping.get(d.label, d.label))
    subs = tuple(relabel(c, mapping) for c in d.subderivations)
    if isinstance(d, CoordApp):
        return CoordApp(subs, mapping.get(d.label, d.label), d.assumption)
    dis = {mapping.get(k, k): v for k, v in d.discharged.items()}
    return RuleApp(d.connective, d.rule, d.substitution, subs, dis, d.conclusion)


# -- checking ---------------------------------------------------------------


def _library(lib: Iterable[ConnectiveSpec]) -> dict[str, ConnectiveSpec]:
    return {s.name: s for s in lib}


def check_derivation(d: Derivation, lib: Iterable[ConnectiveSpec]) -> CheckOutcome:
    """Check ``d`` against the rules in ``lib`` plus the co-ordination principle."""
    specs = _library(lib)
    labels = list(discharge_labels(d))
    dup = [lab for lab, n in Counter(labels).items() if n > 1]
    try:
        if dup:
            raise _Invalid((), "DischargeError", f"label {dup[0]} is discharged more than once")
        opens, concl = _check(d, specs, [])
    except _Invalid as exc:
        return CheckOutcome(False, path=exc.path, kind=exc.kind, reason=exc.reason)
    return CheckOutcome(True, Counter(sf for _, sf in opens), concl)


def _closed(sf: SignedFormula) -> bool:
    return is_closed(sf.formula)


def _check(node: Derivation, specs, path: list[int]):
    """Return (open leaves as (label, formula) pairs, conclusion)."""
    if isinstance(node, Assumption):
        if not _closed(node.sf):
            raise _Invalid(path, "NotClosed", f"assumption {node.sf} has metavariables")
        return [(node.label, node.sf)], node.sf

    results = [_check(c, specs, path + [i]) for i, c in enumerate(node.subderivations)]

    if isinstance(node, CoordApp):
        (o1, a), (o2, b) = results
        if a.conjugate() != b:
            raise _Invalid(path, "CoordMismatch",
                           f"children conclude {a} and {b}, not a conjugate pair")
        opens = []
        for lab, sf in o1 + o2:
            if lab == node.label:
                if sf != node.assumption:
                    raise _Invalid(path, "DischargeError",
                                   f"label {lab} closes {node.assumption}, found {sf}")
                continue
            opens.append((lab, sf))
        return opens, node.conclusion

    spec = specs.get(node.connective)
    if spec is None:
        raise _Invalid(path, "UnknownRule", f"no connective {node.connective!r} in the library")
    try:
        rule = spec.rule(node.rule)
    except KeyError:
        raise _Invalid(path, "UnknownRule",
                       f"{node.connective} has no rule {node.rule!r}") from None

    wanted = set(spec.arg_vars)
    given = set(node.substitution)
    if given != wanted:
        raise _Invalid(path, "SubstitutionMismatch",
                       f"substitution covers {sorted(given)}, rule needs {sorted(wanted)}")
    bad = [k for k, v in node.substitution.items() if not is_closed(v)]
    if bad:
        raise _Invalid(path, "SubstitutionMismatch", f"{bad[0]} is mapped to an open formula")
    inst = rule.substitute(node.substitution)

    slots: list[tuple[str, object]] = []
    if inst.role is Role.ELIM:
        slots.append(("major", inst.major))
    slots.extend(("premise", p) for p in inst.premises)
    if len(slots) != len(results):
        raise _Invalid(path, "PremiseMismatch",
                       f"{node.rule} takes {len(slots)} subderivation(s), got {len(results)}")

    # the arbitrary conclusion is fixed once and must agree everywhere
    phi = node.conclusion
    if inst.conclusion is not ANY:
        if phi is not None and phi != inst.conclusion:
            raise _Invalid(path, "PremiseMismatch",
                           f"rule concludes {inst.conclusion}, node states {phi}")
        phi = inst.conclusion
    elif phi is None:
        for (kind, p), (_, c) in zip(slots, results):
            if kind == "premise" and isinstance(p, Side) and p.end is ANY:
                phi = c
                break
        if phi is None:
            raise _Invalid(path, "ArbitraryMismatch",
                           f"{node.rule} concludes an arbitrary formula; state it with :conclude")
    if not _closed(phi):
        raise _Invalid(path, "NotClosed", f"conclusion {phi} has metavariables")

    hyps_anywhere = {h for p in inst.premises if isinstance(p, Side) for h in p.discharged}
    for lab, sfs in node.discharged.items():
        for sf in sfs:
            if sf not in hyps_anywhere:
                raise _Invalid(path, "DischargeError",
                               f"{node.rule} cannot discharge {sf} (label {lab})")

    opens = []
    for i, ((kind, p), (child_open, c)) in enumerate(zip(slots, results)):
        if kind == "major":
            if c != p:
                raise _Invalid(path + [i], "MajorMismatch",
                               f"major premise should be {p}, found {c}")
            hyps: frozenset = frozenset()
        elif isinstance(p, Plain):
            if c != p.sf:
                raise _Invalid(path + [i], "PremiseMismatch", f"expected {p.sf}, found {c}")
            hyps = frozenset()
        else:
            end = phi if p.end is ANY else p.end
            if c != end:
                kind_name = "ArbitraryMismatch" if p.end is ANY else "PremiseMismatch"
                raise _Invalid(path + [i], kind_name,
                               f"side deduction should end in {end}, found {c}")
            hyps = frozenset(p.discharged)
        for lab, sf in child_open:
            if lab is not None and lab in node.discharged:
                if sf in hyps and sf in node.discharged[lab]:
                    continue
                raise _Invalid(path + [i], "DischargeError",
                               f"assumption {sf} under label {lab} cannot be discharged here")
            opens.append((lab, sf))
    return opens, phi


def conclusion_of(d: Derivation, lib: Iterable[ConnectiveSpec]) -> SignedFormula | None:
    out = check_derivation(d, lib)
    return out.conclusion if out.valid else None


# -- file format ------------------------------------------------------------


def _fail(node: Node, msg: str, kind: str = "syntax") -> ParseError:
    return ParseError(msg, node.line, node.col, kind)


def _closed_resolve(name: str, atom: Atom) -> Formula:
    return Constant(name)


def _label(node: Node) -> int:
    if isinstance(node, Atom) and not node.quoted:
        try:
            return int(node.text)
        except ValueError:
            pass
    raise _fail(node, "label must be an integer")


class _DerivationReader:
    def __init__(self, arities: Mapping[str, int]):
        self.arities = arities
        self.labels: set[int] = set()

    def formula(self, node: Node) -> Formula:
        from .dsl import read_formula
        return read_formula(node, self.arities, _closed_resolve)

    def signed(self, node: Node) -> SignedFormula:
        return read_signed(node, self.arities, _closed_resolve)

    def claim(self, lab: int, node: Node) -> None:
        if lab in self.labels:
            raise _fail(node, f"label {lab} is used by two discharging nodes", "duplicate label")
        self.labels.add(lab)

    def read(self, node: Node) -> Derivation:
        if not isinstance(node, SList) or node.head() is None:
            raise _fail(node, "expected (assume ...), (rule ...) or (coord ...)", "unknown head")
        head = node.head()
        items = node.items[1:]
        if head == "assume":
            if len(items) not in (1, 3):
                raise _fail(node, "(assume (SIGN FORMULA) [:label N]) expected")
            label = None
            if len(items) == 3:
                if not (isinstance(items[1], Atom) and items[1].text == ":label"):
                    raise _fail(items[1], ":label expected")
                label = _label(items[2])
            return Assumption(self.signed(items[0]), label)
        if head == "coord":
            if len(items) != 5 or not (isinstance(items[0], Atom) and items[0].text == ":label"):
                raise _fail(node, "(coord :label N (SIGN FORMULA) CHILD CHILD) expected")
            lab = _label(items[1])
            self.claim(lab, items[1])
            return CoordApp((self.read(items[3]), self.read(items[4])), lab,
                            self.signed(items[2]))
        if head == "rule":
            if len(items) < 2 or not all(isinstance(i, Atom) for i in items[:2]):
                raise _fail(node, '(rule "CONNECTIVE" "RULE" ...) expected')
            conn = connective_name(items[0].text)
            rule = items[1].text
            subst: dict[str, Formula] = {}
            discharged: dict[int, tuple[SignedFormula, ...]] = {}
            conclusion = None
            children = []
            for item in items[2:]:
                h = item.head() if isinstance(item, SList) else None
                if h == ":subst":
                    for pair in item.items[1:]:
                        if not isinstance(pair, SList) or len(pair.items) != 2 \
                                or not isinstance(pair.items[0], Atom):
                            raise _fail(pair, "(VAR FORMULA) expected")
                        var = pair.items[0].text
                        if var in subst:
                            raise _fail(pair, f"{var} substituted twice")
                        subst[var] = self.formula(pair.items[1])
                elif h == ":discharge":
                    if len(item.items) < 2:
                        raise _fail(item, "(:discharge N (SIGN FORMULA)...) expected")
                    lab = _label(item.items[1])
                    self.claim(lab, item.items[1])
                    discharged[lab] = tuple(self.signed(x) for x in item.items[2:])
                elif h == ":conclude":
                    if len(item.items) != 2:
                        raise _fail(item, "(:conclude (SIGN FORMULA)) expected")
                    conclusion = self.signed(item.items[1])
                else:
                    children.append(self.read(item))
            return RuleApp(conn, rule, subst, tuple(children), discharged, conclusion)
        raise _fail(node, f"unknown form {head!r}", "unknown head")


def parse_derivation(text: str, lib: Iterable[ConnectiveSpec] | None = None) -> Derivation:
    """Parse one derivation.  ``lib`` supplies connective arities beyond the built-ins."""
    from .library import builtin_specs

    arities = dict(STANDARD_ARITIES)
    for s in builtin_specs():
        arities[s.name] = s.arity
    for s in lib or ():
        arities[s.name] = s.arity
    forms = read_all(text)
    if len(forms) != 1:
        raise ParseError(f"expected exactly one derivation, found {len(forms)}", 1, 1)
    return _DerivationReader(arities).read(forms[0])


def dump_derivation(d: Derivation, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(d, Assumption):
        lab = "" if d.label is None else f" :label {d.label}"
        return f"{pad}(assume {d.sf}{lab})"
    if isinstance(d, CoordApp):
        head = f"{pad}(coord :label {d.label} {d.assumption}"
    else:
        parts = [f"{pad}(rule {quote(d.connective)} {quote(d.rule)}"]
        if d.substitution:
            parts.append("(:subst " + " ".join(f"({k} {v})" for k, v in
                                               sorted(d.substitution.items())) + ")")
        for lab, sfs in sorted(d.discharged.items()):
            parts.append(f"(:discharge {lab}" + "".join(f" {sf}" for sf in sfs) + ")")
        if d.conclusion is not None:
            parts.append(f"(:conclude {d.conclusion})")
        head = " ".join(parts)
    if not d.subderivations:
        return head + ")"
    body = "\n".join(dump_derivation(c, indent + 1) for c in d.subderivations)
    return f"{head}\n{body})"


def audit_coordination(d: Derivation, lib: Sequence[ConnectiveSpec]) -> bool:
    """Re-verify every co-ordination node of a checked derivation structurally."""
    if isinstance(d, Assumption):
        return True
    if isinstance(d, CoordApp):
        a = conclusion_of(d.subderivations[0], lib)
        b = conclusion_of(d.subderivations[1], lib)
        if a is None or b is None or a.conjugate() != b:
            return False
        if d.conclusion != d.assumption.conjugate():
            return False
    return all(audit_coordination(c, lib) for c in d.subderivations)


__all__ = [
    "Assumption", "CheckOutcome", "CoordApp", "Derivation", "RuleApp", "audit_coordination",
    "check_derivation", "conclusion_of", "discharge_labels", "dump_derivation",
    "open_assumptions", "parse_derivation", "relabel", "substitute",
]
