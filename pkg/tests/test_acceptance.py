"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) or under pytest.
"""

from __future__ import annotations

import random
from collections import Counter
from functools import lru_cache

import pytest

from bilateral import cli, fixtures
from bilateral.conversion import (
    FamilyDescriptor,
    Verdict,
    check_harmony,
    check_restriction,
    complete_spec,
    family_type,
    convert_elim1_to_intro2,
    convert_intro2_to_elim1,
)
from bilateral.dsl import parse_spec
from bilateral.inversion import invert_elim2, invert_elims1, invert_intro1, invert_intros2
from bilateral.kernel import check_derivation
from bilateral.library import DEVIANT, STANDARD, builtin, builtin_specs
from bilateral.search import Searcher
from bilateral.syntax import (
    FAMILY_KEYS,
    Constant,
    Polarity,
    Role,
    RuleType,
    canonicalize,
    family_label,
    format_rule,
    minus,
    plus,
)

import gen

# Full rule sets as displayed for each connective, one sequent per rule.
GOLDEN = {
    "and": {
        "assertive-intro": ["(+ A), (+ B) |- (+ (and A B))"],
        "assertive-elim": ["(+ (and A B)) |- (+ A)", "(+ (and A B)) |- (+ B)"],
        "rejective-intro": ["(- A) |- (- (and A B))", "(- B) |- (- (and A B))"],
        "rejective-elim": ["(- (and A B)), [(- A)] _ANY, [(- B)] _ANY |- _ANY"],
    },
    "or": {
        "assertive-intro": ["(+ A) |- (+ (or A B))", "(+ B) |- (+ (or A B))"],
        "assertive-elim": ["(+ (or A B)), [(+ A)] _ANY, [(+ B)] _ANY |- _ANY"],
        "rejective-intro": ["(- A), (- B) |- (- (or A B))"],
        "rejective-elim": ["(- (or A B)) |- (- A)", "(- (or A B)) |- (- B)"],
    },
    "imp": {
        "assertive-intro": ["[(+ A)] (+ B) |- (+ (imp A B))"],
        "assertive-elim": ["(+ (imp A B)), (+ A) |- (+ B)"],
        "rejective-intro": ["(+ A), (- B) |- (- (imp A B))"],
        "rejective-elim": ["(- (imp A B)), [(+ A), (- B)] _ANY |- _ANY"],
    },
    "neg": {
        "assertive-intro": ["(- A) |- (+ (neg A))"],
        "assertive-elim": ["(+ (neg A)) |- (- A)"],
        "rejective-intro": ["(+ A) |- (- (neg A))"],
        "rejective-elim": ["(- (neg A)), [(+ A)] _ANY |- _ANY"],
    },
    "bot": {
        "assertive-intro": [],
        "assertive-elim": ["(+ bot) |- _ANY"],
        "rejective-intro": ["|- (- bot)"],
        "rejective-elim": [],
    },
    "top": {
        "assertive-intro": ["|- (+ top)"],
        "assertive-elim": [],
        "rejective-intro": [],
        "rejective-elim": ["(- top) |- _ANY"],
    },
}

ROUND_TRIPS = 1000  # per identity
SEED = 20240611


def _report(n: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print()
            _report(n, ok, detail)
    return emit


# -- 1 ----------------------------------------------------------------------


def golden_completion():
    runs, mismatches = 0, []
    for name, expected in GOLDEN.items():
        spec = builtin(name)
        for key in FAMILY_KEYS:
            if not spec.family(*key):
                continue
            done = complete_spec(spec, *key)
            runs += 1
            for other in FAMILY_KEYS:
                got = Counter(format_rule(canonicalize(r, spec)) for r in done.family(*other))
                want = Counter(expected[family_label(*other)])
                if got != want:
                    mismatches.append((name, family_label(*key), family_label(*other),
                                       sorted(got), sorted(want)))
    return runs, mismatches


def test_criterion_1_golden_completion(report):
    runs, mismatches = golden_completion()
    ok = runs >= 18 and not mismatches
    report(1, ok, f"golden completion, {runs} runs, {len(mismatches)} mismatches")
    assert runs >= 18
    assert mismatches == []


# -- 2 ----------------------------------------------------------------------

EXPECTED_VERDICTS = {
    **{n: Verdict.HARMONIOUS for n in STANDARD},
    "tonk": Verdict.ILL_FORMED,
    "conk": Verdict.CONVERSION_VIOLATION,
    "honk": Verdict.CONVERSION_VIOLATION,
}


def gatekeeping():
    verdicts = {s.name: check_harmony(s).verdict for s in builtin_specs()}
    codes = {n: cli.main(["--quiet", "check", "--builtin", n]) for n in DEVIANT}
    codes["standard"] = cli.main(["--quiet", "check", "--builtin", *STANDARD])
    return verdicts, codes


def test_criterion_2_gatekeeping(report):
    verdicts, codes = gatekeeping()
    ok = verdicts == EXPECTED_VERDICTS and codes == {
        "tonk": 1, "conk": 1, "honk": 1, "standard": 0}
    shown = ", ".join(f"{k}={v}" for k, v in verdicts.items())
    report(2, ok, f"verdicts {shown}; exit codes tonk/conk/honk/standard = "
                  f"{codes['tonk']}/{codes['conk']}/{codes['honk']}/{codes['standard']}")
    assert verdicts == EXPECTED_VERDICTS
    assert codes == {"tonk": 1, "conk": 1, "honk": 1, "standard": 0}


# -- 3 and 5 ----------------------------------------------------------------


def _canon(rules, arity):
    spec = gen.skeleton(arity)
    return Counter(canonicalize(r, spec) for r in rules)


def _arity(rule):
    f = rule.governed.formula
    return len(getattr(f, "args", ()))


@lru_cache(maxsize=None)
def round_trips(n: int = ROUND_TRIPS, seed: int = SEED):
    """Returns (counts, failures, audit) where audit holds every map application."""
    rng = random.Random(seed)
    failures = []
    counts = Counter()
    audit = []
    for _ in range(n):
        r = gen.type1_intro(rng)
        elims = invert_intro1(r)
        back = invert_elims1(r.conclusion, elims)
        audit.append(("inversion", [r], elims))
        audit.append(("inversion", elims, [back], r.conclusion))
        counts["intro1"] += 1
        if _canon([back], _arity(r)) != _canon([r], _arity(r)):
            failures.append(("invert_elims1 . invert_intro1", format_rule(r)))

        r = gen.type2_elim(rng)
        intros = invert_elim2(r)
        back = invert_intros2(r.major, intros)
        audit.append(("inversion", [r], intros))
        audit.append(("inversion", intros, [back], r.major))
        counts["elim2"] += 1
        if _canon([back], _arity(r)) != _canon([r], _arity(r)):
            failures.append(("invert_intros2 . invert_elim2", format_rule(r)))

        r = gen.convertible_elim1(rng)
        mid = convert_elim1_to_intro2(r)
        back = convert_intro2_to_elim1(mid)
        audit.append(("process1", r, mid))
        audit.append(("process2", mid, back))
        counts["process1"] += 1
        if _canon([back], _arity(r)) != _canon([r], _arity(r)):
            failures.append(("process2 . process1", format_rule(r)))

        r = gen.convertible_intro2(rng)
        mid = convert_intro2_to_elim1(r)
        back = convert_elim1_to_intro2(mid)
        audit.append(("process2", r, mid))
        audit.append(("process1", mid, back))
        counts["process2"] += 1
        if _canon([back], _arity(r)) != _canon([r], _arity(r)):
            failures.append(("process1 . process2", format_rule(r)))
    return counts, failures, audit


def test_criterion_3_round_trips(report):
    counts, failures, _ = round_trips()
    ok = min(counts.values()) >= 1000 and not failures
    report(3, ok, f"round trips {dict(counts)}, {len(failures)} failures")
    assert min(counts.values()) >= 1000
    assert failures == []


def _golden_audit():
    """Inversion and conversion applications behind the golden completions."""
    out = []
    for name in GOLDEN:
        spec = builtin(name)
        for pol in Polarity:
            intros = list(spec.family(pol, Role.INTRO))
            elims = list(spec.family(pol, Role.ELIM))
            t = family_type(spec, pol, Role.INTRO)
            if t is RuleType.TYPE1:
                if intros:
                    out.append(("inversion", intros, invert_intro1(intros[0])))
                out.append(("inversion", elims, [invert_elims1(spec.governed(pol), elims)],
                            spec.governed(pol)))
                out += [("process1", e, convert_elim1_to_intro2(e)) for e in elims]
            else:
                if elims:
                    out.append(("inversion", elims, invert_elim2(elims[0])))
                out.append(("inversion", intros, [invert_intros2(spec.governed(pol), intros)],
                            spec.governed(pol)))
                out += [("process2", i, convert_intro2_to_elim1(i)) for i in intros]
    return out


def sign_audit(applications):
    """Check sign behaviour of each recorded map application; returns problems."""
    problems = []
    for kind, src, out, *given in applications:
        if kind == "inversion":
            # the rebuilding maps also take the major premise as an argument
            allowed = {sf for r in src for sf in r.signed_formulas()} | set(given)
            for r in out:
                for sf in r.signed_formulas():
                    if sf not in allowed:
                        problems.append((kind, format_rule(r), str(sf)))
            continue
        if kind == "process1":
            flipped = {"major": (src.major, out.conclusion),
                       "conclusion": (src.conclusion, out.premises[0].sf)}
            kept_src = [p.sf for p in src.premises]
            kept_out = [p.sf for p in out.premises[1:]]
        else:
            idx = 0
            if len(src.premises) > 1:
                idx = next(i for i, p in enumerate(src.premises)
                           if p.sf.sign is src.conclusion.sign)
            flipped = {"conclusion": (src.conclusion, out.major),
                       "designated": (src.premises[idx].sf, out.conclusion)}
            kept_src = [p.sf for i, p in enumerate(src.premises) if i != idx]
            kept_out = [p.sf for p in out.premises]
        for what, (a, b) in flipped.items():
            if b != a.conjugate():
                problems.append((kind, format_rule(src), f"{what} not flipped"))
        if Counter(kept_src) != Counter(kept_out):
            problems.append((kind, format_rule(src), "other premises changed"))
    return problems


def test_criterion_5_sign_preservation(report):
    _, _, audit = round_trips()
    apps = audit + _golden_audit()
    problems = sign_audit(apps)
    kinds = Counter(app[0] for app in apps)
    report(5, not problems, f"sign audit over {dict(kinds)} map applications, "
                            f"{len(problems)} problems")
    assert problems == []


# -- 4 ----------------------------------------------------------------------

P, Q = Constant("p"), Constant("q")

NEG_FIXTURES = {
    # name: (open assumptions, conclusion); negation read as (imp A bot)
    "neg-i": ([minus(P)], "(+ (imp p bot))"),
    "neg-ii": (["(+ (imp p bot))"], "(- p)"),
    "neg-iii": ([plus(P)], "(- (imp p bot))"),
    "neg-iv": (["(- (imp p bot))"], "(+ p)"),
}
COLLAPSE_FIXTURES = {
    "conk-collapse": ("conk", [plus(P)], plus(Q)),
    "honk-collapse": ("honk", [minus(P)], plus(Q)),
}


def kernel_fixtures():
    problems = []
    lib = builtin_specs(["imp", "bot"])
    for name, (opens, concl) in NEG_FIXTURES.items():
        out = check_derivation(fixtures.load(name), lib)
        want = Counter(str(x) for x in opens)
        got = Counter(str(x) for x in out.open_assumptions.elements())
        if not out.valid or got != want or str(out.conclusion) != concl:
            problems.append((name, str(out)))
    for name, (conn, opens, concl) in COLLAPSE_FIXTURES.items():
        out = check_derivation(fixtures.load(name), [builtin(conn)])
        if not out.valid or out.open_assumptions != Counter(opens) or out.conclusion != concl:
            problems.append((name, str(out)))
    searcher = Searcher(builtin_specs(STANDARD), atoms=("p", "q"))
    control = searcher.find([plus(P)], plus(Q), max_height=6)
    if control is not None:
        problems.append(("negative control", "found a derivation of (+ q) from {(+ p)}"))
    return problems, searcher.n


def test_criterion_4_kernel_fixtures(report):
    problems, n = kernel_fixtures()
    report(4, not problems, f"4 negation + 2 collapse fixtures valid, negative control "
                            f"empty at height 6 over {n} signed formulas; "
                            f"{len(problems)} problems")
    assert problems == []


# -- 6 ----------------------------------------------------------------------

RESTRICTION_DSL = """
(connective "x" (arity 3) (args A B C)
  (rule "1i-ok" (polarity +) (role intro) (premises (side (discharge (+ A) (- B)) (+ C))) (conclusion (+ (x A B C))))
  (rule "1i-bad" (polarity +) (role intro) (premises (side (discharge (+ A) (+ B)) (+ C))) (conclusion (+ (x A B C))))
  (rule "1e-ok" (polarity +) (role elim) (major (+ (x A B C))) (premises (+ A) (- B)) (conclusion (+ C)))
  (rule "1e-bad" (polarity +) (role elim) (major (+ (x A B C))) (premises (+ A) (+ B)) (conclusion (+ C))))
(connective "y" (arity 2) (args A B)
  (rule "2i-ok" (polarity -) (role intro) (premises (+ A) (- B)) (conclusion (- (y A B))))
  (rule "2i-bad" (polarity -) (role intro) (premises (+ A) (+ B)) (conclusion (- (y A B))))
  (rule "2e-ok" (polarity -) (role elim) (major (- (y A B))) (premises (side (discharge (+ A) (- B)) _ANY)) (conclusion _ANY))
  (rule "2e-bad" (polarity -) (role elim) (major (- (y A B))) (premises (side (discharge (- A) (- B)) _ANY)) (conclusion _ANY)))
"""

RESTRICTION_CASES = {
    # rule name: (type, expected violation code or None)
    "1i-ok": (RuleType.TYPE1, None), "1i-bad": (RuleType.TYPE1, "1.i"),
    "2i-ok": (RuleType.TYPE2, None), "2i-bad": (RuleType.TYPE2, "2.i"),
    "1e-ok": (RuleType.TYPE1, None), "1e-bad": (RuleType.TYPE1, "1.e"),
    "2e-ok": (RuleType.TYPE2, None), "2e-bad": (RuleType.TYPE2, "2.e"),
}


def restriction_coverage():
    rules = {r.name: r for s in parse_spec(RESTRICTION_DSL) for r in s.rules()}
    outcomes = {}
    for name, (t, _) in RESTRICTION_CASES.items():
        r = rules[name]
        v = check_restriction(r, FamilyDescriptor(r.polarity, r.role, t))
        outcomes[name] = None if v is None else v.code
    expected = {n: code for n, (_, code) in RESTRICTION_CASES.items()}
    return outcomes, expected


def test_criterion_6_restriction_coverage(report):
    outcomes, expected = restriction_coverage()
    shown = ", ".join(f"{k}={'ok' if v is None else v}" for k, v in outcomes.items())
    report(6, outcomes == expected, f"restriction fixtures: {shown}")
    assert outcomes == expected


if __name__ == "__main__":
    runs, mm = golden_completion()
    _report(1, runs >= 18 and not mm, f"golden completion, {runs} runs, {len(mm)} mismatches")
    v, c = gatekeeping()
    _report(2, v == EXPECTED_VERDICTS and c == {"tonk": 1, "conk": 1, "honk": 1, "standard": 0},
            f"verdicts and exit codes {c}")
    counts, fails, audit = round_trips()
    _report(3, not fails, f"round trips {dict(counts)}, {len(fails)} failures")
    probs, _ = kernel_fixtures()
    _report(4, not probs, f"kernel fixtures, {len(probs)} problems")
    sp = sign_audit(audit + _golden_audit())
    _report(5, not sp, f"sign audit, {len(sp)} problems")
    o, e = restriction_coverage()
    _report(6, o == e, f"restriction fixtures {o}")
