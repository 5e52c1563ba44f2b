"""The truncated LMO invariant of a manifold with ``H_1 = Z`` from its
Alexander polynomial, ``clos(exp_disjoint(alpha))``, and the inverse map.

An :class:`LMOElement` holds one combination of leg-free trivalent diagrams
per degree ``0..max_degree``; degree ``m`` has ``2m`` trivalent vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .closure import close_combination, iota_combination, wheel_series_to_combination
from .diagrams import DiagramCombination
from .exactnum import SymmetricLaurent, as_fraction, b_coefficients, format_fraction
from .relspace import MAX_DEGREE, DegreeError, quotient_space
from .wheels import (
    AlphaSeries,
    WheelSeries,
    a_prime_from_alpha,
    alexander_from_a_prime,
    alpha_from_alexander,
    exp_disjoint,
)


class NotInImageError(ValueError):
    """The element is not ``clos(exp_disjoint(alpha))`` for any wheel series."""


@dataclass
class LMOElement:
    parts: Dict[int, DiagramCombination]
    max_degree: int
    alpha: Optional[AlphaSeries] = field(default=None, compare=False)

    def part(self, m: int) -> DiagramCombination:
        return self.parts.get(m, DiagramCombination())

    def coordinates(self, m: int) -> List[Fraction]:
        return quotient_space(m).coordinates(self.part(m))

    def equal_mod_relations(self, other: "LMOElement") -> bool:
        top = min(self.max_degree, other.max_degree)
        return all(
            quotient_space(m).equal_mod_relations(self.part(m), other.part(m)) for m in range(top + 1)
        )

    def to_json(self) -> dict:
        out = {"max_degree": self.max_degree, "degrees": {}}
        for m in range(self.max_degree + 1):
            out["degrees"][str(m)] = {
                "coords": [format_fraction(c) for c in self.coordinates(m)],
                "terms": self.part(m).to_json(),
            }
        if self.alpha is not None:
            out["alpha"] = self.alpha.to_json()
        return out

    @classmethod
    def from_json(cls, data) -> "LMOElement":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            top = int(data["max_degree"])
            parts = {}
            for key, entry in data["degrees"].items():
                m = int(key)
                if "terms" in entry:
                    parts[m] = DiagramCombination.from_json(entry["terms"])
                else:
                    coords = [as_fraction(c) for c in entry["coords"]]
                    parts[m] = quotient_space(m).from_coordinates(coords)
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed LMO element JSON: {exc}") from exc
        return cls(parts, top)


def _check_degree(max_degree: int):
    if not 0 <= max_degree <= MAX_DEGREE:
        raise DegreeError(f"degree {max_degree} outside supported range 0..{MAX_DEGREE}")


def closure_of_wheels(w: WheelSeries, m: int) -> DiagramCombination:
    """``clos`` of the total-degree-``2m`` part of a wheel series."""
    return close_combination(wheel_series_to_combination(w.grade(2 * m)))


def lmo_from_alpha(alpha: AlphaSeries, max_degree: int) -> LMOElement:
    _check_degree(max_degree)
    w = exp_disjoint(alpha, 2 * max_degree)
    parts = {m: closure_of_wheels(w, m) for m in range(max_degree + 1)}
    return LMOElement(parts, max_degree, alpha)


def lmo_forward(A: SymmetricLaurent, max_degree: int) -> LMOElement:
    """Degree-``m`` part = closure of the degree-``2m`` part of ``exp_disjoint(alpha(A))``."""
    _check_degree(max_degree)
    return lmo_from_alpha(alpha_from_alexander(A, 2 * max_degree), max_degree)


def _proportion(rem: List[Fraction], target: List[Fraction]) -> Optional[Fraction]:
    lead = next(i for i, x in enumerate(target) if x)
    c = rem[lead] / target[lead]
    if any(r != c * t for r, t in zip(rem, target)):
        return None
    return c


def recover_alpha(z: LMOElement, max_degree: int) -> AlphaSeries:
    """Wheel coefficients ``c_{2m}``, solved one degree at a time in quotient coordinates."""
    _check_degree(max_degree)
    if max_degree > z.max_degree:
        raise DegreeError(f"element only known through degree {z.max_degree}")
    if not quotient_space(0).equal_mod_relations(z.part(0), DiagramCombination.one()):
        raise NotInImageError("degree-0 part must be the empty diagram with coefficient 1")
    known: Dict[int, Fraction] = {}
    for m in range(1, max_degree + 1):
        space = quotient_space(m)
        lower = exp_disjoint(AlphaSeries(known, 2 * m), 2 * m)
        rem = space.coordinates(z.part(m) - closure_of_wheels(lower, m))
        target = space.coordinates(closure_of_wheels(WheelSeries({(2 * m,): 1}, 2 * m), m))
        if not any(target):
            raise ArithmeticError(f"closure of the {2 * m}-wheel vanishes in degree {m}")
        c = _proportion(rem, target)
        if c is None:
            raise NotInImageError(
                f"degree-{m} part is not a closure of wheels: remainder {[str(x) for x in rem]} "
                f"is not proportional to the closed {2 * m}-wheel {[str(x) for x in target]}"
            )
        known[2 * m] = c
    return AlphaSeries(known, 2 * max_degree)


def lmo_invert(z: LMOElement, max_degree: int, span_bound: int) -> SymmetricLaurent:
    alpha = recover_alpha(z, max_degree)
    return alexander_from_a_prime(a_prime_from_alpha(alpha), span_bound)


def verify_iota_chain(A: SymmetricLaurent, max_degree: int) -> bool:
    """``{iota_m(exp_disjoint alpha)}_m`` equals the degree-``m`` part of ``lmo_forward(A)``."""
    z = lmo_forward(A, max_degree)
    expo = wheel_series_to_combination(exp_disjoint(z.alpha, 2 * max_degree))
    for m in range(max_degree + 1):
        lhs = iota_combination(expo, m).grade(m)
        if not quotient_space(m).equal_mod_relations(lhs, z.part(m)):
            return False
    return True


def alpha_of_product(A: SymmetricLaurent, B: SymmetricLaurent, max_degree: int) -> AlphaSeries:
    """``alpha(A) + alpha(B) - sum 2 b_{2m} w_{2m}``, the wheel series predicted for ``A*B``."""
    n = 2 * max_degree
    b = b_coefficients(n)
    twob = AlphaSeries({k: 2 * v for k, v in b.items()}, n)
    return alpha_from_alexander(A, n) + alpha_from_alexander(B, n) - twob
