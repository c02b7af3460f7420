"""Classification summary: one verdict per catalog surface.

Statuses come from catalog metadata (toric structure, quotient
constructions, cover facts, cited Cartier results) combined with computed
search witnesses.  When the two disagree, the disagreement is listed on
the verdict and never resolved silently.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .positivity import SearchResult
from .rational import pretty_q
from .riemann_roch import baker_cartier_bv, baker_fails_for_every_h0
from .surface_model import SurfaceModel

STATUSES = (
    "toric",
    "toric_quotient",
    "fails_cartier_bv",
    "no_endomorphism_by_cover",
    "fails_weil_bv",
    "cover_fails_bv",
    "open",
)

_LIFTING_ARGUMENTS = {"baker", "no_int_amplified", "not_toric_quotient"}


@dataclass(frozen=True)
class Verdict:
    name: str
    status: str
    evidence: str
    conflicts: tuple[str, ...] = ()

    def record(self) -> dict:
        return {"name": self.name, "status": self.status, "evidence": self.evidence, "conflicts": list(self.conflicts)}


def _describe(result: SearchResult) -> str:
    w = result.witnesses[0]
    coeffs = ",".join(str(c) for c in w.coefficients)
    return f"a=({coeffs}), chi={pretty_q(w.chi_omega)}"


def _baker_conflicts(model: SurfaceModel) -> list[str]:
    meta = model.metadata
    out = []
    n = len(model.minus2_ids)
    rho = model.picard_rank
    h0 = meta.get("h0_tangent")
    if h0 is not None and rho is not None and "cartier_bv" in meta:
        if baker_cartier_bv(h0, n, rho) != bool(meta["cartier_bv"]):
            out.append(f"cartier_bv={meta['cartier_bv']} but h0(T)={h0}, n={n}, rho={rho} gives the opposite")
    cover = meta.get("universal_cover")
    if cover and cover.get("argument") == "baker":
        if not baker_fails_for_every_h0(cover["n_minus2"], cover["picard_rank"]):
            out.append(
                f"cover argument cites the Baker bound, but 10 - {cover['n_minus2']} - 2*{cover['picard_rank']} >= 0"
            )
    return out


def verdict(
    model: SurfaceModel,
    search: SearchResult | None = None,
    cover_searches: Mapping[str, SearchResult] | None = None,
) -> Verdict:
    meta = model.metadata
    conflicts = _baker_conflicts(model)
    has_witness = search is not None and len(search) > 0
    if has_witness and meta.get("satisfies_bv"):
        conflicts.append(f"search found {_describe(search)} on a surface recorded as satisfying Bott vanishing")
    cover = meta.get("universal_cover") or {}

    if meta.get("toric"):
        status = "toric"
        evidence = ("fan " + " ".join(f"({x},{y})" for x, y in model.fan)) if model.fan else "toric (cited)"
    elif meta.get("quotient"):
        status, evidence = "toric_quotient", str(meta["quotient"])
    elif meta.get("cartier_bv") is False:
        status, evidence = "fails_cartier_bv", "Cartier Bott vanishing fails (cited)"
    elif cover.get("argument") in _LIFTING_ARGUMENTS:
        status = "no_endomorphism_by_cover"
        names = ", ".join(cover.get("names", []))
        evidence = f"universal cover {names}: {cover['argument']}"
        if cover["argument"] == "baker":
            evidence += f" (10 - {cover['n_minus2']} - 2*{cover['picard_rank']} < 0)"
        if has_witness:
            evidence += f"; own witness {_describe(search)}"
    elif has_witness:
        status, evidence = "fails_weil_bv", _describe(search)
    elif meta.get("expected_bv_failure"):
        status, evidence = "fails_weil_bv", "cited; no witness computed"
        if search is not None:
            evidence = f"cited; no witness with |a| <= {search.bound}"
    elif cover.get("argument") == "weil_witness":
        status = "cover_fails_bv"
        parts = []
        for name in cover.get("names", []):
            res = (cover_searches or {}).get(name)
            if res is None:
                parts.append(f"{name}: cited")
            elif len(res):
                parts.append(f"{name}: {_describe(res)}")
            else:
                parts.append(f"{name}: cited, no witness with |a| <= {res.bound}")
        evidence = "; ".join(parts)
    else:
        status, evidence = "open", "no applicable criterion"
        if meta.get("satisfies_bv"):
            evidence = "Bott vanishing holds (cited); endomorphisms not decided"
    return Verdict(model.name, status, evidence, tuple(conflicts))


def report(
    models: Iterable[SurfaceModel],
    searches: Mapping[str, SearchResult] | None = None,
    cover_searches: Mapping[str, SearchResult] | None = None,
) -> list[Verdict]:
    """One verdict per model, in input order."""
    searches = searches or {}
    return [verdict(m, searches.get(m.name), cover_searches) for m in models]


def format_table(verdicts: Iterable[Verdict]) -> str:
    verdicts = list(verdicts)
    w_name = max([len("surface")] + [len(v.name) for v in verdicts])
    w_status = max([len("status")] + [len(v.status) for v in verdicts])
    lines = [f"{'surface':<{w_name}}  {'status':<{w_status}}  evidence"]
    for v in verdicts:
        line = f"{v.name:<{w_name}}  {v.status:<{w_status}}  {v.evidence}"
        if v.conflicts:
            line += "  [CONFLICT: " + "; ".join(v.conflicts) + "]"
        lines.append(line)
    return "\n".join(lines)


def format_records(verdicts: Iterable[Verdict]) -> str:
    return "\n".join(json.dumps(v.record(), sort_keys=False, ensure_ascii=True) for v in verdicts)
