"""Built-in connectives: the six standard ones plus tonk, conk and honk.

Rules whose shape fits both types carry an explicit ``(type N)``.
tonk is written with every sign ``+`` (a unilateral connective).
"""

from __future__ import annotations

from functools import lru_cache

from .dsl import dump_specs, parse_spec
from .syntax import ConnectiveSpec

BUILTIN_DSL = r"""
; conjunction: assertive rules type 1, rejective rules type 2
(connective "and" (arity 2) (args A B)
  (rule "+andI" (polarity +) (role intro) (premises (+ A) (+ B)) (conclusion (+ (and A B))))
  (rule "+andE1" (polarity +) (role elim) (major (+ (and A B))) (premises) (conclusion (+ A)))
  (rule "+andE2" (polarity +) (role elim) (major (+ (and A B))) (premises) (conclusion (+ B)))
  (rule "-andI1" (polarity -) (role intro) (premises (- A)) (conclusion (- (and A B))))
  (rule "-andI2" (polarity -) (role intro) (premises (- B)) (conclusion (- (and A B))))
  (rule "-andE" (polarity -) (role elim) (major (- (and A B)))
        (premises (side (discharge (- A)) _ANY) (side (discharge (- B)) _ANY))
        (conclusion _ANY)))

; disjunction: rejective rules type 1, assertive rules type 2
(connective "or" (arity 2) (args A B)
  (rule "+orI1" (polarity +) (role intro) (premises (+ A)) (conclusion (+ (or A B))))
  (rule "+orI2" (polarity +) (role intro) (premises (+ B)) (conclusion (+ (or A B))))
  (rule "+orE" (polarity +) (role elim) (major (+ (or A B)))
        (premises (side (discharge (+ A)) _ANY) (side (discharge (+ B)) _ANY))
        (conclusion _ANY))
  (rule "-orI" (polarity -) (role intro) (premises (- A) (- B)) (conclusion (- (or A B))))
  (rule "-orE1" (polarity -) (role elim) (major (- (or A B))) (premises) (conclusion (- A)))
  (rule "-orE2" (polarity -) (role elim) (major (- (or A B))) (premises) (conclusion (- B))))

; implication: assertive rules type 1, rejective rules type 2
(connective "imp" (arity 2) (args A B)
  (rule "+impI" (polarity +) (role intro) (premises (side (discharge (+ A)) (+ B)))
        (conclusion (+ (imp A B))))
  (rule "+impE" (polarity +) (role elim) (major (+ (imp A B))) (premises (+ A)) (conclusion (+ B)))
  (rule "-impI" (polarity -) (role intro) (type 2) (premises (+ A) (- B))
        (conclusion (- (imp A B))))
  (rule "-impE" (polarity -) (role elim) (major (- (imp A B)))
        (premises (side (discharge (+ A) (- B)) _ANY)) (conclusion _ANY)))

; primitive negation: assertive rules type 1, rejective rules type 2
(connective "neg" (arity 1) (args A)
  (rule "+negI" (polarity +) (role intro) (type 1) (premises (- A)) (conclusion (+ (neg A))))
  (rule "+negE" (polarity +) (role elim) (major (+ (neg A))) (premises) (conclusion (- A)))
  (rule "-negI" (polarity -) (role intro) (type 2) (premises (+ A)) (conclusion (- (neg A))))
  (rule "-negE" (polarity -) (role elim) (major (- (neg A)))
        (premises (side (discharge (+ A)) _ANY)) (conclusion _ANY)))

; falsum: assertive elimination of type 2, rejective introduction of type 1
(connective "bot" (arity 0) (args)
  (rule "+botE" (polarity +) (role elim) (major (+ bot)) (premises) (conclusion _ANY))
  (rule "-botI" (polarity -) (role intro) (premises) (conclusion (- bot))))

; verum: assertive introduction of type 1, rejective elimination of type 2
(connective "top" (arity 0) (args)
  (rule "+topI" (polarity +) (role intro) (premises) (conclusion (+ top)))
  (rule "-topE" (polarity -) (role elim) (major (- top)) (premises) (conclusion _ANY)))

; Prior's tonk, unilateral (all signs +)
(connective "tonk" (arity 2) (args A B)
  (rule "+tonkI" (polarity +) (role intro) (premises (+ A)) (conclusion (+ (tonk A B))))
  (rule "+tonkE" (polarity +) (role elim) (major (+ (tonk A B))) (premises) (conclusion (+ B))))

; conk: both polarities of conjunction's type-1 form
(connective "conk" (arity 2) (args A B)
  (rule "+conkI" (polarity +) (role intro) (premises (+ A) (+ B)) (conclusion (+ (conk A B))))
  (rule "+conkE1" (polarity +) (role elim) (major (+ (conk A B))) (premises) (conclusion (+ A)))
  (rule "+conkE2" (polarity +) (role elim) (major (+ (conk A B))) (premises) (conclusion (+ B)))
  (rule "-conkI" (polarity -) (role intro) (premises (- A) (- B)) (conclusion (- (conk A B))))
  (rule "-conkE1" (polarity -) (role elim) (major (- (conk A B))) (premises) (conclusion (- A)))
  (rule "-conkE2" (polarity -) (role elim) (major (- (conk A B))) (premises) (conclusion (- B))))

; honk: mixed-sign type-1 rules on both sides
(connective "honk" (arity 2) (args A B)
  (rule "+honkI" (polarity +) (role intro) (type 1) (premises (- A) (+ B))
        (conclusion (+ (honk A B))))
  (rule "+honkE1" (polarity +) (role elim) (major (+ (honk A B))) (premises) (conclusion (- A)))
  (rule "+honkE2" (polarity +) (role elim) (major (+ (honk A B))) (premises) (conclusion (+ B)))
  (rule "-honkI" (polarity -) (role intro) (type 1) (premises (+ A) (- B))
        (conclusion (- (honk A B))))
  (rule "-honkE1" (polarity -) (role elim) (major (- (honk A B))) (premises) (conclusion (+ A)))
  (rule "-honkE2" (polarity -) (role elim) (major (- (honk A B))) (premises) (conclusion (- B))))
"""

STANDARD = ("and", "or", "imp", "neg", "bot", "top")
DEVIANT = ("tonk", "conk", "honk")
NAMES = STANDARD + DEVIANT


@lru_cache(maxsize=None)
def _parsed() -> tuple[ConnectiveSpec, ...]:
    return tuple(parse_spec(BUILTIN_DSL))


def builtin_specs(names=None) -> list[ConnectiveSpec]:
    specs = {s.name: s for s in _parsed()}
    if names is None:
        return [specs[n] for n in NAMES]
    out = []
    for n in names:
        from .dsl import connective_name
        key = connective_name(n)
        if key not in specs:
            raise KeyError(n)
        out.append(specs[key])
    return out


def builtin(name: str) -> ConnectiveSpec:
    return builtin_specs([name])[0]


def dump_builtins(names=None) -> str:
    return dump_specs(builtin_specs(names))
