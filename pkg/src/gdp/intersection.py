"""Exact intersection theory on the resolution and Mumford products on the surface."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Iterable, Mapping

from .linalg import solve
from .surface_model import SingularPoint, SurfaceModel


def _clean(coeffs: Mapping[int, Fraction | int]) -> dict[int, Fraction]:
    return {k: Fraction(v) for k, v in sorted(coeffs.items()) if v != 0}


@dataclass(frozen=True)
class QDivisor:
    """A Q-divisor on the resolution: curve id -> exact rational (absent means 0)."""

    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs))

    def __getitem__(self, curve_id: int) -> Fraction:
        return self.coeffs.get(curve_id, Fraction(0))

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def __add__(self, other: QDivisor) -> QDivisor:
        keys = set(self.coeffs) | set(other.coeffs)
        return QDivisor({k: self[k] + other[k] for k in keys})

    def __neg__(self) -> QDivisor:
        return QDivisor({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: QDivisor) -> QDivisor:
        return self + (-other)

    def __mul__(self, scalar: int | Fraction) -> QDivisor:
        return QDivisor({k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def restrict(self, curve_ids: Iterable[int]) -> QDivisor:
        keep = set(curve_ids)
        return QDivisor({k: v for k, v in self.coeffs.items() if k in keep})

    def floor(self) -> QDivisor:
        return QDivisor({k: Fraction(floor(v)) for k, v in self.coeffs.items()})

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs.values())

    def is_zero(self) -> bool:
        return not self.coeffs

    def format(self, model: SurfaceModel | None = None) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, v in self.coeffs.items():
            name = model.curve(k).name if model is not None else f"[{k}]"
            parts.append(f"{v.numerator}/{v.denominator} {name}")
        return " + ".join(parts)


@dataclass(frozen=True)
class WeilClass:
    """D = sum a_i pi_*(C_i) over (-1)-curves C_i, integer coefficients."""

    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {k: int(v) for k, v in sorted(self.coeffs.items()) if v != 0})

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    @classmethod
    def from_tuple(cls, model: SurfaceModel, values: Iterable[int]) -> WeilClass:
        """Coefficients listed in the model's (-1)-curve order."""
        values = tuple(values)
        ids = model.minus1_ids
        if len(values) != len(ids):
            raise ValueError(f"{model.name} has {len(ids)} (-1)-curves, got {len(values)} coefficients")
        return cls(dict(zip(ids, values)))

    def as_tuple(self, model: SurfaceModel) -> tuple[int, ...]:
        return tuple(self.coeffs.get(i, 0) for i in model.minus1_ids)

    def __add__(self, other: WeilClass) -> WeilClass:
        keys = set(self.coeffs) | set(other.coeffs)
        return WeilClass({k: self.coeffs.get(k, 0) + other.coeffs.get(k, 0) for k in keys})

    def __mul__(self, m: int) -> WeilClass:
        return WeilClass({k: m * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def strict_transform(self) -> QDivisor:
        """D-tilde = sum a_i C_i on the resolution."""
        return QDivisor(self.coeffs)


def _check_weil(model: SurfaceModel, d: WeilClass) -> None:
    minus1 = set(model.minus1_ids)
    bad = [k for k in d.coeffs if k not in minus1]
    if bad:
        raise ValueError(f"{model.name}: Weil class coefficients on non-(-1)-curves {bad}")


def product_resolution(model: SurfaceModel, a: QDivisor, b: QDivisor) -> Fraction:
    """Intersection form on the resolution: sum_ij a_i b_j (C_i . C_j)."""
    total = Fraction(0)
    for i, x in a.coeffs.items():
        row = model.intersections[model.position(i)]
        for j, y in b.coeffs.items():
            total += x * y * row[model.position(j)]
    return total


# QDivisor is immutable, so sharing memoized results is safe.
_PULLBACK_MEMO_SIZE = 512


def _exceptional_solver(model: SurfaceModel):
    """Per-point blocks of the exceptional matrix, cached on the model."""
    cached = model._cache.get("exceptional_blocks")
    if cached is None:
        cached = [
            (p.curve_ids, [[model.dot(a, b) for b in p.curve_ids] for a in p.curve_ids])
            for p in model.singular_points
        ]
        model._cache["exceptional_blocks"] = cached
    return cached


def pullback(model: SurfaceModel, d: WeilClass) -> QDivisor:
    """Numerical pullback: D-tilde plus the unique exceptional correction orthogonal to every (-2)-curve.

    The exceptional matrix is block diagonal by singular point, so each
    block is solved on its own.
    """
    _check_weil(model, d)
    memo = model._cache.setdefault("pullbacks", {})
    hit = memo.get(d)
    if hit is not None:
        return hit
    coeffs = dict(d.strict_transform().coeffs)
    for ids, block in _exceptional_solver(model):
        rhs = [-sum(a * model.dot(i, e) for i, a in d.coeffs.items()) for e in ids]
        if any(rhs):
            for e, s in zip(ids, solve(block, rhs)):
                coeffs[e] = s
    result = QDivisor(coeffs)
    if len(memo) >= _PULLBACK_MEMO_SIZE:
        memo.clear()
    memo[d] = result
    return result


def exceptional_part(model: SurfaceModel, pulled_back: QDivisor) -> QDivisor:
    """D^s: the part of pi^*D supported on (-2)-curves."""
    return pulled_back.restrict(model.minus2_ids)


def local_c1(model: SurfaceModel, x: SingularPoint, d: WeilClass) -> QDivisor:
    """c1(x, D-tilde) = -(D^s restricted to the curves over x)."""
    return -pullback(model, d).restrict(x.curve_ids)


def mumford_product(model: SurfaceModel, d1: WeilClass, d2: WeilClass) -> Fraction:
    return product_resolution(model, pullback(model, d1), pullback(model, d2))


def k_product(model: SurfaceModel, d: WeilClass) -> Fraction:
    """K_X . D = K_Xtilde . D-tilde by crepancy; each (-1)-curve contributes -a_i."""
    _check_weil(model, d)
    return Fraction(sum(a * model.k_dot_curve(i) for i, a in d.coeffs.items()))

