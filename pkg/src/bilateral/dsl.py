"""Reader and writer for the connective DSL.

A file holds one ``(connective ...)`` form per connective::

    (connective "and" (arity 2) (args A B)
      (rule "+andI" (polarity +) (role intro) (premises (+ A) (+ B))
            (conclusion (+ (and A B))))
      (rule "-andE" (polarity -) (role elim) (major (- (and A B)))
            (premises (side (discharge (- A)) _ANY) (side (discharge (- B)) _ANY))
            (conclusion _ANY)))

``_ANY`` stands for an arbitrary signed formula.  ``(type 1)`` / ``(type 2)``
may be attached to a rule.  Unicode glyphs (∧ ∨ ⊃ → ¬ ⊥ ⊤, and − for the
minus sign) are accepted on input; output always uses the ASCII names.
"""

from __future__ import annotations

from typing import Callable, Mapping

from .errors import ParseError
from .sexpr import Atom, Node, SList, quote, read_all
from .syntax import (
    ANY,
    Apply,
    ArbitraryMark,
    ConnectiveSpec,
    Constant,
    FAMILY_KEYS,
    Formula,
    Metavar,
    Plain,
    Polarity,
    Premise,
    Role,
    RuleSchema,
    RuleType,
    Side,
    Sign,
    SignedFormula,
    Target,
    default_arg_vars,
    format_premise,
)

GLYPHS = {
    "∧": "and", "&": "and",
    "∨": "or",
    "⊃": "imp", "→": "imp",
    "¬": "neg", "~": "neg",
    "⊥": "bot",
    "⊤": "top",
}

STANDARD_ARITIES = {"and": 2, "or": 2, "imp": 2, "neg": 1, "bot": 0, "top": 0}

SIGNS = {"+": Sign.PLUS, "-": Sign.MINUS, "−": Sign.MINUS}

ARBITRARY_TOKEN = "_ANY"


def connective_name(text: str) -> str:
    return GLYPHS.get(text, text)


def _where(node: Node) -> tuple[int, int]:
    return node.line, node.col


def _fail(node: Node, message: str, kind: str = "syntax") -> ParseError:
    return ParseError(message, *_where(node), kind=kind)


def read_formula(node: Node, arities: Mapping[str, int],
                 resolve: Callable[[str, Atom], Formula]) -> Formula:
    """Read a prefix formula.  ``resolve`` decides what a bare symbol means."""
    if isinstance(node, Atom):
        if node.quoted:
            raise _fail(node, "unexpected string in formula")
        return resolve(connective_name(node.text), node)
    head = node.head()
    if head is None:
        raise _fail(node, "formula must start with a connective name")
    name = connective_name(head)
    if name not in arities:
        raise _fail(node, f"unknown connective {name!r}", "unknown connective")
    args = node.items[1:]
    if len(args) != arities[name]:
        raise _fail(node, f"{name} takes {arities[name]} argument(s), got {len(args)}",
                    "arity mismatch")
    if not args:
        return Constant(name)
    return Apply(name, tuple(read_formula(a, arities, resolve) for a in args))


def read_signed(node: Node, arities: Mapping[str, int],
                resolve: Callable[[str, Atom], Formula]) -> SignedFormula:
    if not isinstance(node, SList) or len(node.items) != 2:
        raise _fail(node, "expected a signed formula (SIGN FORMULA)")
    sign_node = node.items[0]
    if not isinstance(sign_node, Atom) or sign_node.text not in SIGNS:
        raise _fail(sign_node, "sign must be + or -")
    return SignedFormula(SIGNS[sign_node.text], read_formula(node.items[1], arities, resolve))


def _is_any(node: Node) -> bool:
    return isinstance(node, Atom) and not node.quoted and node.text == ARBITRARY_TOKEN


def _name_of(node: Node) -> str:
    if isinstance(node, Atom):
        return node.text
    raise _fail(node, "expected a name")


# -- connective blocks ------------------------------------------------------


class _BlockReader:
    def __init__(self, form: SList, arities: Mapping[str, int]):
        self.form = form
        self.arities = arities

    def read(self) -> ConnectiveSpec:
        items = self.form.items
        if len(items) < 2:
            raise _fail(self.form, "connective needs a name")
        self.name = connective_name(_name_of(items[1]))
        arity = None
        args = None
        rules: list[tuple[RuleSchema, SList]] = []
        for clause in items[2:]:
            if not isinstance(clause, SList) or clause.head() is None:
                raise _fail(clause, "expected a clause")
            head = clause.head()
            if head == "arity":
                if len(clause.items) != 2 or not isinstance(clause.items[1], Atom) \
                        or not clause.items[1].text.isdigit():
                    raise _fail(clause, "arity must be a nonnegative integer")
                arity = int(clause.items[1].text)
            elif head == "args":
                args = tuple(_name_of(a) for a in clause.items[1:])
                for a in clause.items[1:]:
                    if connective_name(_name_of(a)) in self.arities or _name_of(a) == ARBITRARY_TOKEN:
                        raise _fail(a, f"argument variable {_name_of(a)!r} clashes with a reserved name")
                if len(set(args)) != len(args):
                    raise _fail(clause, "argument variables must be distinct")
            elif head == "rule":
                if arity is None:
                    raise _fail(clause, "arity must be declared before rules")
                if args is None:
                    args = default_arg_vars(arity)
                self.arity, self.args = arity, args
                rules.append((self.read_rule(clause), clause))
            else:
                raise _fail(clause, f"unknown clause {head!r}")
        if arity is None:
            raise _fail(self.form, "missing (arity N)")
        if args is None:
            args = default_arg_vars(arity)
        if len(args) != arity:
            raise _fail(self.form, f"{len(args)} argument variables for arity {arity}",
                        "arity mismatch")
        if self.arities.get(self.name, arity) != arity:
            raise _fail(self.form, f"{self.name} already has arity {self.arities[self.name]}",
                        "arity mismatch")
        fams: dict = {k: [] for k in FAMILY_KEYS}
        seen: set[str] = set()
        for rule, clause in rules:
            if rule.name and rule.name in seen:
                raise _fail(clause, f"duplicate rule name {rule.name!r}")
            seen.add(rule.name)
            fams[(rule.polarity, rule.role)].append(rule)
        return ConnectiveSpec(self.name, arity, tuple(args), fams)

    def resolve(self, name: str, atom: Atom) -> Formula:
        if name in self.args:
            return Metavar(name)
        if self.arities.get(name) == 0:
            return Constant(name)
        raise _fail(atom, f"metavariable {name!r} is not among the declared arguments",
                    "undeclared metavariable")

    def signed(self, node: Node) -> SignedFormula:
        return read_signed(node, self.arities, self.resolve)

    def schematic(self, node: Node) -> SignedFormula:
        """A premise or hypothesis: a signed metavariable."""
        sf = self.signed(node)
        if not isinstance(sf.formula, Metavar):
            raise _fail(node, "premises and hypotheses must be signed metavariables",
                        "compound premise")
        return sf

    def target(self, node: Node) -> Target:
        if _is_any(node):
            return ANY
        return self.schematic(node)

    def read_rule(self, clause: SList) -> RuleSchema:
        items = clause.items
        if len(items) < 2 or not isinstance(items[1], Atom):
            raise _fail(clause, "rule needs a name")
        name = items[1].text
        fields: dict[str, SList] = {}
        for sub in items[2:]:
            if not isinstance(sub, SList) or sub.head() is None:
                raise _fail(sub, "expected a rule clause")
            key = sub.head()
            if key not in ("polarity", "role", "type", "major", "premises", "conclusion"):
                raise _fail(sub, f"unknown rule clause {key!r}")
            if key in fields:
                raise _fail(sub, f"repeated clause {key!r}")
            fields[key] = sub
        for key in ("polarity", "role", "premises", "conclusion"):
            if key not in fields:
                raise _fail(clause, f"rule {name!r} is missing ({key} ...)")

        pol_node = fields["polarity"]
        if len(pol_node.items) != 2 or not isinstance(pol_node.items[1], Atom) \
                or pol_node.items[1].text not in SIGNS:
            raise _fail(pol_node, "polarity must be + or -")
        polarity = Polarity.of(SIGNS[pol_node.items[1].text])

        role_node = fields["role"]
        try:
            role = Role(_name_of(role_node.items[1]))
        except (IndexError, ValueError):
            raise _fail(role_node, "role must be intro or elim") from None

        declared = None
        if "type" in fields:
            tnode = fields["type"]
            if len(tnode.items) != 2 or not isinstance(tnode.items[1], Atom) \
                    or tnode.items[1].text not in ("1", "2"):
                raise _fail(tnode, "type must be 1 or 2")
            declared = RuleType(int(tnode.items[1].text))

        major = None
        if "major" in fields:
            if role is Role.INTRO:
                raise _fail(fields["major"], "introduction rules have no major premise")
            if len(fields["major"].items) != 2:
                raise _fail(fields["major"], "(major SIGNED-FORMULA) expected")
            major = self.signed(fields["major"].items[1])
        elif role is Role.ELIM:
            raise _fail(clause, f"elimination rule {name!r} needs (major ...)")

        premises: list[Premise] = []
        for p in fields["premises"].items[1:]:
            if isinstance(p, SList) and p.head() == "side":
                premises.append(self.read_side(p))
            elif _is_any(p):
                raise _fail(p, "_ANY may only end a side deduction or conclude a rule",
                            "misplaced ArbitraryMark")
            else:
                premises.append(Plain(self.schematic(p)))

        cnode = fields["conclusion"]
        if len(cnode.items) != 2:
            raise _fail(cnode, "(conclusion SIGNED-FORMULA|_ANY) expected")
        if _is_any(cnode.items[1]):
            conclusion: Target = ANY
        elif role is Role.INTRO:
            conclusion = self.signed(cnode.items[1])
        else:
            conclusion = self.schematic(cnode.items[1])

        rule = RuleSchema(role, conclusion, tuple(premises), major, name, declared)
        self.validate(rule, polarity, clause)
        return rule

    def read_side(self, node: SList) -> Side:
        if len(node.items) != 3:
            raise _fail(node, "(side (discharge ...) END) expected")
        dis = node.items[1]
        if not isinstance(dis, SList) or dis.head() != "discharge":
            raise _fail(dis, "(discharge ...) expected")
        hyps = tuple(self.schematic(h) for h in dis.items[1:])
        if not hyps:
            raise _fail(dis, "a side deduction must discharge at least one hypothesis")
        for h in dis.items[1:]:
            if isinstance(h, SList) and h.head() == "side":
                raise _fail(h, "nested side deductions are not supported")
        return Side(hyps, self.target(node.items[2]))

    def validate(self, rule: RuleSchema, polarity: Polarity, clause: SList) -> None:
        if rule.conclusion is ANY and rule.role is Role.INTRO:
            raise _fail(clause, "an introduction rule cannot conclude _ANY",
                        "misplaced ArbitraryMark")
        gov = rule.governed
        if polarity is not Polarity.of(gov.sign):
            raise _fail(clause, f"declared polarity {polarity.sign} but the governed formula "
                        f"is signed {gov.sign}", "polarity mismatch")
        expected_head = Constant(self.name) if self.arity == 0 else None
        f = gov.formula
        ok = (f == expected_head) if self.arity == 0 else (
            isinstance(f, Apply) and f.connective == self.name
            and all(isinstance(a, Metavar) for a in f.args)
            and len({a.name for a in f.args}) == len(f.args))
        if not ok:
            what = "conclusion" if rule.role is Role.INTRO else "major premise"
            raise _fail(clause, f"the {what} must be {self.name} applied to distinct "
                        "metavariables", "governed formula")
        ends_any = [isinstance(p, Side) and p.end is ANY for p in rule.premises]
        if any(ends_any) and rule.conclusion is not ANY:
            raise _fail(clause, "a side deduction ending in _ANY requires the rule to "
                        "conclude _ANY", "misplaced ArbitraryMark")
        if rule.conclusion is ANY and not all(ends_any):
            raise _fail(clause, "a rule concluding _ANY must have only side deductions "
                        "ending in _ANY", "misplaced ArbitraryMark")


def _prescan(forms: list[Node]) -> dict[str, int]:
    arities = dict(STANDARD_ARITIES)
    for form in forms:
        if isinstance(form, SList) and form.head() == "connective" and len(form.items) > 1:
            name = connective_name(_name_of(form.items[1]))
            for clause in form.items[2:]:
                if isinstance(clause, SList) and clause.head() == "arity" \
                        and len(clause.items) == 2 and isinstance(clause.items[1], Atom) \
                        and clause.items[1].text.isdigit():
                    arities[name] = int(clause.items[1].text)
    return arities


def parse_spec(text: str) -> list[ConnectiveSpec]:
    """Parse DSL text into connective specs, checking every well-formedness rule."""
    forms = read_all(text)
    arities = _prescan(forms)
    specs = []
    names: set[str] = set()
    for form in forms:
        if not isinstance(form, SList) or form.head() != "connective":
            raise _fail(form, "expected (connective ...)")
        spec = _BlockReader(form, arities).read()
        if spec.name in names:
            raise _fail(form, f"connective {spec.name!r} declared twice")
        names.add(spec.name)
        specs.append(spec)
    return specs


# -- writer -----------------------------------------------------------------


def format_signed(sf: Target) -> str:
    return str(sf)


def format_rule_dsl(rule: RuleSchema) -> str:
    parts = [f"(rule {quote(rule.name)}",
             f"(polarity {rule.polarity.sign})",
             f"(role {rule.role.value})"]
    if rule.declared_type is not None:
        parts.append(f"(type {int(rule.declared_type)})")
    if rule.major is not None:
        parts.append(f"(major {rule.major})")
    prem = " ".join(format_premise(p) for p in rule.premises)
    parts.append(f"(premises{' ' + prem if prem else ''})")
    parts.append(f"(conclusion {rule.conclusion})")
    return " ".join(parts) + ")"


def dump_spec(spec: ConnectiveSpec) -> str:
    lines = [f"(connective {quote(spec.name)} (arity {spec.arity}) "
             f"(args{''.join(' ' + a for a in spec.arg_vars)})"]
    for key in FAMILY_KEYS:
        for rule in spec.families[key]:
            lines.append("  " + format_rule_dsl(rule))
    return "\n".join(lines) + ")\n"


def dump_specs(specs) -> str:
    return "\n".join(dump_spec(s) for s in specs)


__all__ = [
    "ArbitraryMark", "GLYPHS", "STANDARD_ARITIES", "connective_name", "dump_spec",
    "dump_specs", "format_rule_dsl", "parse_spec", "read_formula", "read_signed",
]
