"""Weight systems: the Conway weight system on interval-free Chinese
characters and the multiplicative map ``W`` from closed trivalent graphs to
polynomials in ``c`` (``W(H) = W(=) - W(X)``, circles evaluate to ``c``).

The two-term edge rule is the epsilon-tensor identity in dimension 3, so the
value is independent of the order in which edges are resolved only after
setting ``c = 3``.  As a polynomial in ``c`` the result depends on the order;
``w_eval`` fixes one (lowest live vertex first, on the canonical
representative), which makes it a well-defined function of AS-classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Union

from . import _kernels_py, kernels
from .closure import UnsupportedInput, _wheel_key, wheel_sizes
from .diagrams import (
    CanonicalDiagram,
    DiagramCombination,
    UniTrivalentDiagram,
    component_classification,
)
from .exactnum import TruncatedSeries, as_fraction


@dataclass(frozen=True)
class CPolynomial:
    """Polynomial in ``c`` with exact coefficients; ``coeffs[k]`` multiplies ``c^k``."""

    coeffs: tuple = ()

    def __post_init__(self):
        cs = [as_fraction(x) for x in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def c_power(cls, k: int, scale=1) -> "CPolynomial":
        return cls((0,) * k + (scale,))

    @classmethod
    def linear(cls, const) -> "CPolynomial":
        """``c + const``."""
        return cls((const, 1))

    def __getitem__(self, k):
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        if not isinstance(other, CPolynomial):
            other = CPolynomial((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        return CPolynomial(tuple(self[k] + other[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return CPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, CPolynomial):
            other = CPolynomial((other,))
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, CPolynomial):
            q = as_fraction(other)
            return CPolynomial(tuple(q * x for x in self.coeffs))
        out = [Fraction(0)] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return CPolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, c):
        c = as_fraction(c)
        acc = Fraction(0)
        for x in reversed(self.coeffs):
            acc = acc * c + x
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            x = self.coeffs[k]
            if x == 0:
                continue
            mag = abs(x)
            mono = "" if k == 0 else ("c" if k == 1 else f"c^{k}")
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if x < 0 else "") + body)
            else:
                parts.append((" - " if x < 0 else " + ") + body)
        return "".join(parts)


def _arrays(d: UniTrivalentDiagram):
    d = d.compact()
    partner = [0] * sum(len(c) for c in d.vertices)
    for a, b in d.edges:
        partner[a] = b
        partner[b] = a
    return partner, [tuple(c) for c in d.vertices]


CONSISTENT_C = 3


def w_diagram(d: UniTrivalentDiagram, pick=None) -> CPolynomial:
    """``W`` of a single leg-free diagram, by direct edge resolution.

    ``pick(n)`` chooses among the ``n`` resolvable slots at each step (see
    ``_kernels_py.w_poly``); by default the lowest live vertex goes first.
    """
    if d.legs:
        raise UnsupportedInput("W is defined on diagrams without legs")
    if not d.vertices:
        return CPolynomial.c_power(d.circles)
    partner, cells = _arrays(d)
    if pick is None:
        poly = kernels.w_poly(partner, cells)
    else:
        poly = _kernels_py.w_poly(partner, cells, pick)
    return CPolynomial((0,) * d.circles + tuple(poly))


@lru_cache(maxsize=100_000)
def _w_canonical(cd: CanonicalDiagram) -> CPolynomial:
    return w_diagram(cd.rep)


def w_eval(x: Union[DiagramCombination, UniTrivalentDiagram]) -> CPolynomial:
    """Linear extension of ``W`` to a combination of leg-free diagrams."""
    if isinstance(x, UniTrivalentDiagram):
        return w_diagram(x)
    total = CPolynomial()
    for cd, c in x:
        if cd.legs:
            raise UnsupportedInput("W is defined on diagrams without legs")
        total = total + _w_canonical(cd) * c
    return total


def _conway_value(cd: CanonicalDiagram) -> Fraction:
    if cd.circles:
        raise UnsupportedInput("bare circles are not Chinese characters")
    reports = component_classification(cd.rep)
    if any(r.is_interval for r in reports):
        raise UnsupportedInput("the Conway weight system is only given on interval-free characters")
    mono = wheel_sizes(cd)
    if mono is None:
        return Fraction(0)
    _, s = _wheel_key(mono)
    return Fraction(s * (-2) ** len(mono))


def w_conway(x: Union[DiagramCombination, UniTrivalentDiagram]) -> Fraction:
    """Conway weight system: ``(-2)^p`` on a union of ``p`` even wheels, 0 on other characters."""
    if isinstance(x, UniTrivalentDiagram):
        x = DiagramCombination.from_diagram(x)
    return sum((c * _conway_value(cd) for cd, c in x), Fraction(0))


def w_conway_graded(x: DiagramCombination) -> Dict[int, Fraction]:
    return {n: w_conway(x.grade(n)) for n in x.degrees()}


def w_hbar_grade(
    x: DiagramCombination,
    value_op: Callable[[DiagramCombination], Fraction] = w_conway,
    order: int = None,
) -> TruncatedSeries:
    """``sum_m value_op({x}_m) h^m``."""
    degs = x.degrees()
    if order is None:
        order = max(degs, default=0)
    coeffs = [Fraction(0)] * (order + 1)
    for n in degs:
        if n <= order:
            coeffs[n] = as_fraction(value_op(x.grade(n)))
    return TruncatedSeries(tuple(coeffs), order)


def w_wheel_closure_chain(two_m: int) -> CPolynomial:
    """``(c^2 - c) * prod_{j=1}^{m-1} (c + 2j)``: the value predicted for the closed ``2m``-wheel."""
    poly = CPolynomial((0, -1, 1))
    for j in range(1, two_m // 2):
        poly = poly * CPolynomial.linear(2 * j)
    return poly
