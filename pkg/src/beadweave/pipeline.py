"""End-to-end check of the grope computation for a given ``n``.

The chain: grope data -> clasper T' and linking matrix -> complete
contraction <T'> (the Euler degree 2n-2 value of the rational lift) ->
shape check -> hair map up to Vassiliev degree n+1 -> leading term ->
sl2 weight of the joined generator.

No knot invariant is computed; the contraction value stands in for the
leading term, which universality identifies with it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .contraction import GropeSpec, build_grope_clasper, check_theorem1_shape, complete_contraction
from .diagram import DiagramError, DiagramSum, join_hairs
from .families import ellipse_generator
from .hairmap import hair_expand, leading_term
from .sl2weight import sl2_eval, sl2_eval_sum

__all__ = ["DEFAULT_MAX_N", "StageError", "Verdict", "VerificationReport", "verify_paper"]

DEFAULT_MAX_N = 6


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class Verdict:
    name: str
    passed: bool
    detail: str = ""
    values: dict[str, Any] = field(default_factory=dict)


@dataclass
class VerificationReport:
    n: int
    verdicts: list[Verdict]

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def verdict(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "verdicts": [
                {
                    "name": v.name,
                    "passed": v.passed,
                    "detail": v.detail,
                    "values": {k: _jsonable(x) for k, x in v.values.items()},
                }
                for v in self.verdicts
            ],
        }


def _jsonable(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    return x


def _stage(name, fn, *args):
    try:
        return fn(*args)
    except (DiagramError, ValueError) as exc:
        raise StageError(name, exc) from exc


def verify_paper(n: int, max_n: int = DEFAULT_MAX_N) -> VerificationReport:
    if not 1 <= n <= max_n:
        raise ValueError(f"n must satisfy 1 <= n <= {max_n} (grope class 2n >= 2)")
    verdicts = []

    clasper, lk = _stage("clasper", build_grope_clasper, GropeSpec(n))
    ok = clasper.diagram.n_tri == 2 * n - 2 and clasper.n_leaves % 2 == 0
    verdicts.append(Verdict(
        "clasper", ok,
        f"T' has {clasper.diagram.n_tri} trivalent vertices and {clasper.n_leaves} leaves",
        {"trivalent": clasper.diagram.n_tri, "leaves": clasper.n_leaves},
    ))

    contraction = _stage("contraction", complete_contraction, clasper, lk)
    shape = check_theorem1_shape(contraction, n)
    problems = [v for t in shape.terms for v in t.violations]
    verdicts.append(Verdict(
        "theorem1_shape", shape.passed and bool(shape.terms),
        "; ".join(problems + shape.warnings) or f"{len(shape.terms)} term(s), Euler degree {2 * n - 2}",
        {"terms": len(shape.terms), "coefficients": [t.coefficient for t in shape.terms]},
    ))

    hairy = _stage("hair_map", hair_expand, contraction, n + 1)
    lt = leading_term(hairy, n)
    verdicts.append(Verdict(
        "low_degree_vanishing", not lt.low_degree,
        f"Vassiliev degree <= {n} part has {len(lt.low_degree)} term(s)",
        {"terms": len(lt.low_degree)},
    ))
    halves = all((2 * c).denominator == 1 for _, c in lt.part.items())
    verdicts.append(Verdict(
        "two_hair_leading_term", bool(lt.part) and not lt.violations and halves,
        "; ".join(lt.violations) or f"degree {n + 1} part: {len(lt.part)} term(s)",
        {"coefficients": [c for _, c in lt.part.items()]},
    ))

    gen = ellipse_generator(n)
    half_gen = DiagramSum.from_diagram(gen, Fraction(1, 2))
    realized = lt.part == half_gen or lt.part == -half_gen
    verdicts.append(Verdict(
        "realization", realized,
        "degree n+1 part equals +-(1/2) * generator" if realized else "leading term differs from generator",
    ))

    memo: dict = {}
    value = _stage("sl2", lambda d: sl2_eval(d, memo=memo), join_hairs(gen))
    expected = 3 * 2**n
    joined_leading = _stage("sl2", lambda s: sl2_eval_sum(_join_sum(s), memo=memo), lt.part)
    verdicts.append(Verdict(
        "sl2_certificate", abs(value) == expected,
        f"sl2(joined generator) = {value}, expected +-{expected}",
        {"value": value, "expected_abs": expected, "joined_leading_term": joined_leading},
    ))
    return VerificationReport(n, verdicts)


def _join_sum(s: DiagramSum) -> DiagramSum:
    return DiagramSum.from_terms((c, join_hairs(d)) for d, c in s.items())
