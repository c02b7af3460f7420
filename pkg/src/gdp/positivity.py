"""Ampleness of pushed-forward Weil divisors and the search for Bott-vanishing failures."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

import numpy as np

from .intersection import WeilClass, k_product, local_c1, product_resolution
from .linalg import inverse
from .rational import fmt_q
from .riemann_roch import chi_omega1
from .surface_model import SurfaceModel


class UnsupportedSurface(ValueError):
    """The resolution has no (-1)- or no (-2)-curves (P^2 or a Hirzebruch surface)."""


class DisagreementError(RuntimeError):
    """Two independent evaluation routes gave different answers."""


@dataclass(frozen=True)
class AmplenessCertificate:
    gram_values: Mapping[int, Fraction]
    verdict: str  # "ample" | "not_ample" | "unsupported"
    method: str  # "gram" | "rank1_shortcut"

    def record(self) -> list[str]:
        return [fmt_q(v) for v in self.gram_values.values()]


@dataclass(frozen=True)
class Witness:
    coefficients: tuple[int, ...]
    certificate: AmplenessCertificate
    chi_omega: Fraction

    def record(self) -> dict:
        return {"coefficients": list(self.coefficients), "chi": fmt_q(self.chi_omega), "gram": self.certificate.record()}


@dataclass(frozen=True)
class SearchResult:
    witnesses: tuple[Witness, ...]
    bound: int
    examined: int
    box_size: int

    @property
    def complete(self) -> bool:
        """False when the candidate budget stopped the enumeration early."""
        return self.examined == self.box_size

    def __iter__(self) -> Iterator[Witness]:
        return iter(self.witnesses)

    def __len__(self) -> int:
        return len(self.witnesses)


def _require_supported(model: SurfaceModel) -> None:
    if model.unsupported_for_positivity:
        raise UnsupportedSurface(
            f"{model.name}: positivity needs at least one (-1)-curve and one (-2)-curve"
        )


def gram_matrix(model: SurfaceModel) -> tuple[tuple[Fraction, ...], ...]:
    """M_ij = C_i.C_j - sum_x c1(x, C_i).c1(x, C_j) over the (-1)-curves."""
    _require_supported(model)
    cached = model._cache.get("gram")
    if cached is not None:
        return cached
    ids = model.minus1_ids
    units = [WeilClass({i: 1}) for i in ids]
    c1 = [[local_c1(model, x, u) for x in model.singular_points] for u in units]
    rows = []
    for a, i in enumerate(ids):
        row = []
        for b, j in enumerate(ids):
            correction = sum(
                (product_resolution(model, c1[a][k], c1[b][k]) for k in range(len(model.singular_points))),
                Fraction(0),
            )
            row.append(Fraction(model.dot(i, j)) - correction)
        rows.append(tuple(row))
    result = tuple(rows)
    model._cache["gram"] = result
    return result


def is_ample(model: SurfaceModel, d: WeilClass, method: str = "gram") -> AmplenessCertificate:
    """Certify ampleness of D = sum a_i pi_*C_i.

    ``gram``: ample iff (pi^*D).C_i > 0 for every (-1)-curve.  On Picard-rank-one
    surfaces the shortcut -K.D > 0 is also evaluated and must agree.
    """
    if method not in ("gram", "rank1_shortcut"):
        raise ValueError(f"unknown method {method!r}")
    if model.unsupported_for_positivity:
        return AmplenessCertificate({}, "unsupported", method)
    a = d.as_tuple(model)
    if set(d.coeffs) - set(model.minus1_ids):
        raise ValueError(f"{model.name}: Weil class must be supported on (-1)-curves")
    m = gram_matrix(model)
    values = {cid: sum((m[i][j] * a[j] for j in range(len(a))), Fraction(0)) for i, cid in enumerate(model.minus1_ids)}
    gram_verdict = "ample" if all(v > 0 for v in values.values()) else "not_ample"
    if model.picard_rank == 1:
        shortcut = "ample" if -k_product(model, d) > 0 else "not_ample"
        if shortcut != gram_verdict:
            raise DisagreementError(f"{model.name}: gram ({gram_verdict}) and rank-one shortcut ({shortcut}) disagree on {a}")
        return AmplenessCertificate(values, shortcut if method == "rank1_shortcut" else gram_verdict, method)
    if method == "rank1_shortcut":
        raise ValueError(f"{model.name}: the rank-one shortcut needs picard_rank = 1")
    return AmplenessCertificate(values, gram_verdict, "gram")


# -- integer fast path ----------------------------------------------------------


@dataclass(frozen=True)
class IntegerEvaluator:
    """chi(Omega^[1](D)) and the ampleness test, scaled to integer arithmetic.

    With s = T a the exceptional coefficients of pi^*D and L a common
    denominator of T, sigma = L s is integral.  Riemann-Roch collapses to

        chi = d - 10 + D^2 + sum_x (1 + n_x - k_x + 2 a(x, O(D)))

    and L * chi, L * D^2, L * 2a(x, O(D)) and L * gram are all integers.
    """

    scale: int
    s_matrix: np.ndarray  # (n_exc, m): L * T
    a_matrix: np.ndarray  # (m, m): (-1)-curve block of the intersection matrix
    b_matrix: np.ndarray  # (m, n_exc): (-1).(-2) block
    n_matrix: np.ndarray  # (n_exc, n_exc): exceptional block
    gram_scaled: np.ndarray  # (m, m): L * gram
    point_slices: tuple[tuple[int, int], ...]
    constant: int  # d - 10 + sum_x (1 + n_x)

    @classmethod
    def from_model(cls, model: SurfaceModel) -> IntegerEvaluator:
        _require_supported(model)
        m_ids = model.minus1_ids
        e_ids = [cid for x in model.singular_points for cid in x.curve_ids]
        a_mat = [[model.dot(i, j) for j in m_ids] for i in m_ids]
        b_mat = [[model.dot(i, e) for e in e_ids] for i in m_ids]
        n_mat = [[model.dot(e, f) for f in e_ids] for e in e_ids]
        n_inv = inverse(n_mat)
        # T = -N^{-1} B^T
        t = [[-sum(n_inv[r][k] * b_mat[c][k] for k in range(len(e_ids))) for c in range(len(m_ids))] for r in range(len(e_ids))]
        scale = math.lcm(1, *(v.denominator for row in t for v in row))
        s_mat = np.array([[int(v * scale) for v in row] for row in t], dtype=np.int64).reshape(len(e_ids), len(m_ids))
        a_np = np.array(a_mat, dtype=np.int64).reshape(len(m_ids), len(m_ids))
        b_np = np.array(b_mat, dtype=np.int64).reshape(len(m_ids), len(e_ids))
        gram_scaled = scale * a_np + b_np @ s_mat
        slices = []
        start = 0
        for x in model.singular_points:
            slices.append((start, start + x.num_components))
            start += x.num_components
        constant = model.degree - 10 + sum(1 + x.num_components for x in model.singular_points)
        return cls(
            scale=scale,
            s_matrix=s_mat,
            a_matrix=a_np,
            b_matrix=b_np,
            n_matrix=np.array(n_mat, dtype=np.int64).reshape(len(e_ids), len(e_ids)),
            gram_scaled=gram_scaled,
            point_slices=tuple(slices),
            constant=constant,
        )

    def evaluate(self, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return (ample mask, L * chi) for each row of integer coefficients."""
        a = np.asarray(coeffs, dtype=np.int64)
        L = self.scale
        ample = (a @ self.gram_scaled.T > 0).all(axis=1)
        sigma = a @ self.s_matrix.T
        fl = sigma // L
        phi = L * fl - sigma
        bta = a @ self.b_matrix
        w = bta + fl @ self.n_matrix
        k_total = np.zeros(len(a), dtype=np.int64)
        for lo, hi in self.point_slices:
            k_total += (phi[:, lo:hi] == 0).all(axis=1)
        a_aa = np.einsum("ki,ij,kj->k", a, self.a_matrix, a)
        scaled_chi = L * (self.constant + a_aa - k_total) + (bta * sigma).sum(axis=1) + (phi * w).sum(axis=1)
        return ample, scaled_chi


def box_size(num_curves: int, bound: int) -> int:
    return (2 * bound + 1) ** num_curves


def box_tuples(num_curves: int, bound: int, start: int, stop: int) -> np.ndarray:
    """Rows start..stop-1 of the lexicographically ordered box [-bound, bound]^m."""
    base = 2 * bound + 1
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), num_curves), dtype=np.int64)
    for k in range(num_curves - 1, -1, -1):
        out[:, k] = idx % base - bound
        idx //= base
    return out


def _scan_chunk(args) -> list[int]:
    evaluator, num_curves, bound, start, stop = args
    rows = box_tuples(num_curves, bound, start, stop)
    ample, scaled_chi = evaluator.evaluate(rows)
    return (np.nonzero(ample & (scaled_chi < 0))[0] + start).tolist()


def _chunks(total: int, size: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def search_bott_failures(
    model: SurfaceModel,
    bound: int,
    budget: int | None = None,
    workers: int = 1,
    chunk_size: int = 1 << 16,
) -> SearchResult:
    """Every tuple a with |a|_inf <= bound such that pi_*(sum a_i C_i) is ample with chi(Omega^[1](D)) < 0.

    Candidates are scanned in lexicographic order (at most ``budget`` of them)
    with the integer evaluator; each hit is then recomputed with exact
    rationals and must agree.  Output does not depend on ``workers`` or
    ``chunk_size``.
    """
    _require_supported(model)
    if bound < 0:
        raise ValueError("bound must be non-negative")
    m = len(model.minus1_ids)
    size = box_size(m, bound)
    examined = size if budget is None else min(size, budget)
    evaluator = IntegerEvaluator.from_model(model)
    jobs = [(evaluator, m, bound, lo, hi) for lo, hi in _chunks(examined, chunk_size)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(job) for job in jobs]
    hits = sorted(i for part in parts for i in part)

    witnesses = []
    for i in hits:
        coeffs = tuple(int(v) for v in box_tuples(m, bound, i, i + 1)[0])
        witnesses.append(exact_witness(model, coeffs, evaluator))
    return SearchResult(tuple(witnesses), bound, examined, size)


def exact_witness(model: SurfaceModel, coeffs: Sequence[int], evaluator: IntegerEvaluator | None = None) -> Witness:
    """Recheck a candidate with the exact pipeline; raise if the routes disagree or it is not a witness."""
    d = WeilClass.from_tuple(model, coeffs)
    cert = is_ample(model, d)
    chi = chi_omega1(model, d).chi_omega
    if evaluator is not None:
        ample, scaled = evaluator.evaluate(np.array([coeffs], dtype=np.int64))
        if bool(ample[0]) != (cert.verdict == "ample") or Fraction(int(scaled[0]), evaluator.scale) != chi:
            raise DisagreementError(f"{model.name}: integer and exact routes disagree at {tuple(coeffs)}")
    if cert.verdict != "ample" or chi >= 0:
        raise DisagreementError(f"{model.name}: {tuple(coeffs)} is not a witness (verdict {cert.verdict}, chi {chi})")
    return Witness(tuple(int(c) for c in coeffs), cert, chi)
