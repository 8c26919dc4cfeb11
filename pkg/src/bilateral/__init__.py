"""Bilateral harmony: rule schemas over signed formulas, their inversion and
conversion, harmony checking, and a small derivation checker."""

from .conversion import (
    Check,
    FamilyDescriptor,
    HarmonyReport,
    Verdict,
    Violation,
    check_harmony,
    check_restriction,
    complete,
    complete_spec,
    convert_elim1_to_intro2,
    convert_intro2_to_elim1,
)
from .dsl import dump_spec, dump_specs, parse_spec
from .errors import (
    BilateralError,
    IllFormedFamily,
    MismatchedConclusions,
    MismatchedMajors,
    ParseError,
    RestrictionViolation,
    WrongShape,
    WrongType,
)
from .inversion import Classification, classify, invert_elim2, invert_elims1, invert_intro1, invert_intros2
from .kernel import (
    Assumption,
    CheckOutcome,
    CoordApp,
    RuleApp,
    check_derivation,
    dump_derivation,
    open_assumptions,
    parse_derivation,
)
from .library import builtin, builtin_specs
from .search import find_derivation
from .syntax import (
    ANY,
    Apply,
    ConnectiveSpec,
    Constant,
    Metavar,
    Plain,
    Polarity,
    Role,
    RuleSchema,
    RuleType,
    Side,
    Sign,
    SignedFormula,
    canonicalize,
    family_equal,
    format_rule,
    minus,
    plus,
    specs_equal,
)

__version__ = "0.1.0"
