"""Bundled derivation files.

``neg-i`` .. ``neg-iv`` are the four negation derivations over the imp/bot
rules.  ``conk-collapse`` and ``honk-collapse`` are produced by
:func:`collapse_derivation` and frozen here.
"""

from __future__ import annotations

from importlib import resources

from ..kernel import Derivation, dump_derivation, parse_derivation
from ..library import builtin
from ..search import find_derivation
from ..syntax import Constant, minus, plus

NAMES = ("neg-i", "neg-ii", "neg-iii", "neg-iv", "conk-collapse", "honk-collapse")

# fixture -> (premise, conclusion) of the collapse it witnesses
COLLAPSES = {
    "conk-collapse": ("conk", plus(Constant("p")), plus(Constant("q"))),
    "honk-collapse": ("honk", minus(Constant("p")), plus(Constant("q"))),
}


def text(name: str) -> str:
    name = name.removesuffix(".deriv")
    if name not in NAMES:
        raise KeyError(name)
    return resources.files(__name__).joinpath(f"{name}.deriv").read_text(encoding="utf-8")


def load(name: str) -> Derivation:
    return parse_derivation(text(name))


def collapse_derivation(name: str, max_height: int = 6) -> Derivation | None:
    conn, premise, goal = COLLAPSES[name]
    return find_derivation([builtin(conn)], [premise], goal, max_height)


def render_collapse(name: str) -> str:
    conn, premise, goal = COLLAPSES[name]
    d = collapse_derivation(name)
    header = (f"; {goal} from {{{premise}}} with the {conn} rules and co-ordination.\n"
              "; Found by bounded search (height <= 6, atoms p q).\n")
    return header + dump_derivation(d) + "\n"
