"""Local correction terms at ADE points: a-invariants and second Chern classes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intersection import QDivisor, WeilClass, k_product, local_c1, product_resolution, pullback
from .surface_model import SingularPoint, SurfaceModel


@dataclass(frozen=True)
class LocalInvariants:
    point: SingularPoint
    a_O: Fraction
    a_omega: Fraction
    c2_local_omega_twisted: Fraction
    k_summands: int
    frac_part: QDivisor


def _fractional_part(model: SurfaceModel, x: SingularPoint, pulled_back: QDivisor) -> QDivisor:
    """F = floor(pi^*D) - pi^*D on the curves over x; entries lie in (-1, 0]."""
    over_x = pulled_back.restrict(x.curve_ids)
    return over_x.floor() - over_x


def a_rank1(model: SurfaceModel, x: SingularPoint, d: WeilClass) -> Fraction:
    """a(x, O(D)) = 1/2 F . (floor(pi^*D) - K) with F the fractional part over x.

    K pairs to zero with every exceptional curve, so only F . floor(pi^*D)
    survives.
    """
    pb = pullback(model, d)
    frac = _fractional_part(model, x, pb)
    if frac.is_zero():
        return Fraction(0)
    return product_resolution(model, frac, pb.floor()) / 2


def is_locally_cartier(model: SurfaceModel, x: SingularPoint, d: WeilClass) -> bool:
    return pullback(model, d).restrict(x.curve_ids).is_integral()


def a_omega(model: SurfaceModel, x: SingularPoint, d: WeilClass) -> Fraction:
    """a(x, Omega^[1](D)) = a(x, D) + a(x, D + K) + 1/|G| - k.

    K is Cartier at an ADE point, so a(x, D + K) = a(x, D).  k is 1 exactly
    when O(D) is free at x.
    """
    a = a_rank1(model, x, d)
    k = 1 if is_locally_cartier(model, x, d) else 0
    return 2 * a + Fraction(1, x.group_order) - k


def c2_local_omega(model: SurfaceModel, x: SingularPoint, d: WeilClass) -> Fraction:
    """c2(x, Omega^1(D-tilde)) = 1 + #components - 1/|G| + c1(x, D-tilde)^2."""
    c1 = local_c1(model, x, d)
    return 1 + x.num_components - Fraction(1, x.group_order) + product_resolution(model, c1, c1)


def c2_global_omega(model: SurfaceModel, d: WeilClass) -> Fraction:
    """c2(Omega^[1](D)) = e(Xtilde) + K.D-tilde + D-tilde^2 - sum of local terms, e = 12 - degree."""
    tilde = d.strict_transform()
    total = Fraction(12 - model.degree) + k_product(model, d) + product_resolution(model, tilde, tilde)
    for x in model.singular_points:
        total -= c2_local_omega(model, x, d)
    return total


def local_invariants(model: SurfaceModel, x: SingularPoint, d: WeilClass) -> LocalInvariants:
    pb = pullback(model, d)
    frac = _fractional_part(model, x, pb)
    return LocalInvariants(
        point=x,
        a_O=a_rank1(model, x, d),
        a_omega=a_omega(model, x, d),
        c2_local_omega_twisted=c2_local_omega(model, x, d),
        k_summands=1 if frac.is_zero() else 0,
        frac_part=frac,
    )
