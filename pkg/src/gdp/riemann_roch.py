"""Euler characteristics of reflexive sheaves by Riemann-Roch on a normal surface."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intersection import QDivisor, WeilClass, k_product, mumford_product, pullback
from .invariants import a_omega, a_rank1, c2_global_omega
from .rational import fmt_q
from .surface_model import SurfaceModel

# chi(O_X) for a rational surface with quotient singularities
CHI_STRUCTURE_SHEAF = 1


@dataclass(frozen=True)
class ChiBreakdown:
    divisor: WeilClass
    pullback: QDivisor
    self_int: Fraction
    k_dot: Fraction
    c2_global: Fraction
    a_terms: tuple[tuple[Fraction, Fraction], ...]  # (a_O, a_omega) per singular point, catalog order
    chi_omega: Fraction
    chi_structure: Fraction

    def records(self, model: SurfaceModel) -> dict[str, str]:
        """Flat key -> "p/q" record, keys in a fixed order."""
        out = {"coefficients": ",".join(str(a) for a in self.divisor.as_tuple(model))}
        for cid in model.curve_ids:
            out[f"pullback[{model.curve(cid).name}]"] = fmt_q(self.pullback[cid])
        out["self_int"] = fmt_q(self.self_int)
        out["k_dot"] = fmt_q(self.k_dot)
        out["c2_global"] = fmt_q(self.c2_global)
        for k, (x, (a_o, a_w)) in enumerate(zip(model.singular_points, self.a_terms)):
            out[f"a_O[{k}:{x.label}]"] = fmt_q(a_o)
            out[f"a_omega[{k}:{x.label}]"] = fmt_q(a_w)
        out["chi_structure"] = fmt_q(self.chi_structure)
        out["chi_omega"] = fmt_q(self.chi_omega)
        return out


def chi_omega1(model: SurfaceModel, d: WeilClass) -> ChiBreakdown:
    """chi(X, Omega^[1](D)) = 2 + (K + 2D).D - c2(Omega^[1](D)) + sum_x a(x, Omega^[1](D))."""
    self_int = mumford_product(model, d, d)
    k_dot = k_product(model, d)
    c2 = c2_global_omega(model, d)
    a_terms = tuple((a_rank1(model, x, d), a_omega(model, x, d)) for x in model.singular_points)
    chi_omega = 2 * CHI_STRUCTURE_SHEAF + (k_dot + 2 * self_int) - c2 + sum((w for _, w in a_terms), Fraction(0))
    chi_structure = CHI_STRUCTURE_SHEAF + (self_int - k_dot) / 2 + sum((o for o, _ in a_terms), Fraction(0))
    return ChiBreakdown(
        divisor=d,
        pullback=pullback(model, d),
        self_int=self_int,
        k_dot=k_dot,
        c2_global=c2,
        a_terms=a_terms,
        chi_omega=chi_omega,
        chi_structure=chi_structure,
    )


def chi_rank1(model: SurfaceModel, d: WeilClass) -> Fraction:
    """chi(X, O(D)) = 1 + D.(D - K)/2 + sum_x a(x, O(D))."""
    total = Fraction(CHI_STRUCTURE_SHEAF) + (mumford_product(model, d, d) - k_product(model, d)) / 2
    for x in model.singular_points:
        total += a_rank1(model, x, d)
    return total


def baker_cartier_bv(h0_tangent: int, n_minus2_curves: int, rho: int) -> bool:
    """Bott vanishing for Cartier divisors holds iff h0(T_Xtilde) = 10 - n - 2 rho."""
    if min(h0_tangent, n_minus2_curves, rho) < 0:
        raise ValueError("inputs must be non-negative")
    return h0_tangent == 10 - n_minus2_curves - 2 * rho


def baker_fails_for_every_h0(n_minus2_curves: int, rho: int) -> bool:
    """True when 10 - n - 2 rho < 0, so no value of h0(T) can satisfy the criterion."""
    return 10 - n_minus2_curves - 2 * rho < 0
