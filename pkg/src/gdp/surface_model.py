"""Surface descriptions: minimal-resolution curve configurations with ADE data.

A :class:`SurfaceModel` records the (-1)- and (-2)-curves on the minimal
resolution of a Gorenstein del Pezzo surface, their intersection numbers,
how the (-2)-curves group into singular points, and the degree.  The
canonical class is never stored; it enters only through adjunction,
``K.C = -2 - C^2``, and ``K^2 = degree``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Any, Iterable, Mapping, Sequence

from . import ade
from .linalg import is_negative_definite


class CatalogError(ValueError):
    """Raised for malformed or invalid catalog files."""


@dataclass(frozen=True)
class Curve:
    id: int
    self_intersection: int
    label: str = ""

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        return f"{'C' if self.self_intersection == -1 else 'E'}{self.id}"


@dataclass(frozen=True)
class SingularPoint:
    label: str
    curve_ids: tuple[int, ...]

    @property
    def group_order(self) -> int:
        return ade.group_order(self.label)

    @property
    def num_components(self) -> int:
        return len(self.curve_ids)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    """Violations of the model invariants (empty when valid) plus informational flags."""

    violations: tuple[Violation, ...] = ()
    flags: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __iter__(self):
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    degree: int
    curves: tuple[Curve, ...]
    intersections: tuple[tuple[int, ...], ...]
    singular_points: tuple[SingularPoint, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict)
    fan: tuple[tuple[int, int], ...] | None = None
    # derived exact data (pullback operator, gram matrix); never part of equality
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __hash__(self) -> int:
        return hash((self.name, self.degree, self.curves, self.intersections, self.singular_points))

    # -- curve bookkeeping -------------------------------------------------
    @property
    def curve_ids(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.curves)

    def position(self, curve_id: int) -> int:
        index = self._cache.get("position")
        if index is None:
            index = {c.id: i for i, c in enumerate(self.curves)}
            self._cache["position"] = index
        try:
            return index[curve_id]
        except KeyError:
            raise KeyError(f"{self.name} has no curve with id {curve_id}") from None

    def curve(self, curve_id: int) -> Curve:
        return self.curves[self.position(curve_id)]

    def dot(self, i: int, j: int) -> int:
        """Intersection number of the curves with ids i and j."""
        return self.intersections[self.position(i)][self.position(j)]

    @property
    def minus1_ids(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.curves if c.self_intersection == -1)

    @property
    def minus2_ids(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.curves if c.self_intersection == -2)

    def k_dot_curve(self, curve_id: int) -> int:
        """K.C by adjunction for a smooth rational curve."""
        return -2 - self.curve(curve_id).self_intersection

    @property
    def picard_rank(self) -> int | None:
        rho = self.metadata.get("picard_rank")
        return int(rho) if rho is not None else None

    @property
    def unsupported_for_positivity(self) -> bool:
        """No (-1)- or no (-2)-curves: P^2 / Hirzebruch-type resolutions."""
        return not self.minus1_ids or not self.minus2_ids

    def point_of(self, curve_id: int) -> int | None:
        for k, p in enumerate(self.singular_points):
            if curve_id in p.curve_ids:
                return k
        return None


# -- validation ----------------------------------------------------------------


def validate(model: SurfaceModel) -> ValidationReport:
    """Check every structural invariant; problems are reported, never raised."""
    out: list[Violation] = []
    flags: list[str] = []
    n = len(model.curves)
    ids = [c.id for c in model.curves]
    m = model.intersections

    if model.degree < 1:
        out.append(Violation("degree", f"degree must be positive, got {model.degree}"))
    if len(set(ids)) != len(ids):
        out.append(Violation("duplicate_curve", "curve ids are not unique"))
    if any(i < 0 for i in ids):
        out.append(Violation("curve_id", "curve ids must be non-negative"))
    for c in model.curves:
        if c.self_intersection not in (-1, -2):
            out.append(Violation("self_intersection", f"curve {c.id} has C^2 = {c.self_intersection}"))

    shape_ok = len(m) == n and all(len(row) == n for row in m)
    if not shape_ok:
        out.append(Violation("matrix_shape", f"intersection matrix is not {n}x{n}"))
        return ValidationReport(tuple(out), tuple(flags))
    for i in range(n):
        if m[i][i] != model.curves[i].self_intersection:
            out.append(
                Violation(
                    "diagonal",
                    f"diagonal entry for curve {ids[i]} is {m[i][i]}, "
                    f"expected {model.curves[i].self_intersection}",
                )
            )
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                out.append(Violation("asymmetric", f"entries ({ids[i]},{ids[j]}) and ({ids[j]},{ids[i]}) differ"))
            elif m[i][j] < 0:
                out.append(Violation("negative_entry", f"curves {ids[i]} and {ids[j]} meet negatively"))
    if out:
        return ValidationReport(tuple(out), tuple(flags))

    minus2 = set(model.minus2_ids)
    minus1 = set(model.minus1_ids)
    seen: dict[int, int] = {}
    for k, p in enumerate(model.singular_points):
        try:
            label = ade.normalize_label(p.label)
        except ValueError as exc:
            out.append(Violation("label", str(exc)))
            continue
        for cid in p.curve_ids:
            if cid in minus1:
                out.append(Violation("minus1_in_point", f"(-1)-curve {cid} listed over singular point {k} ({label})"))
            elif cid not in minus2:
                out.append(Violation("unknown_curve", f"singular point {k} ({label}) lists unknown curve {cid}"))
            if cid in seen:
                out.append(Violation("duplicate_assignment", f"curve {cid} is listed over points {seen[cid]} and {k}"))
            seen[cid] = k
        known = [cid for cid in p.curve_ids if cid in minus2]
        if len(known) != len(p.curve_ids):
            continue
        sub = [[model.dot(a, b) for b in known] for a in known]
        shape = ade.classify_graph(sub)
        if shape is None:
            out.append(Violation("not_ade", f"singular point {k} ({label}) is not ADE-shaped"))
        elif shape != label:
            out.append(Violation("label_mismatch", f"singular point {k} declared {label} but its curves form {shape}"))
    for cid in sorted(minus2 - set(seen)):
        out.append(Violation("unassigned_curve", f"(-2)-curve {cid} belongs to no singular point"))

    for k, p in enumerate(model.singular_points):
        for l in range(k + 1, len(model.singular_points)):
            q = model.singular_points[l]
            if any(a in minus2 and b in minus2 and model.dot(a, b) for a in p.curve_ids for b in q.curve_ids):
                out.append(Violation("points_connected", f"exceptional curves over points {k} and {l} meet"))

    exc = list(model.minus2_ids)
    if exc and not is_negative_definite([[model.dot(a, b) for b in exc] for a in exc]):
        out.append(Violation("not_negative_definite", "exceptional intersection matrix is not negative definite"))

    rho = model.metadata.get("picard_rank")
    if rho is not None:
        nexc = len(exc)
        if rho != 10 - model.degree - nexc:
            msg = f"picard_rank={rho} requires rho = 10 - d - n (d={model.degree}, n={nexc})"
            if rho == 1:
                msg = f"picard_rank=1 but n != 9 - d (n={nexc}, d={model.degree})"
            out.append(Violation("picard_rank", msg))

    if model.unsupported_for_positivity:
        flags.append("unsupported_for_positivity")
    flags.append("adjunction: K.C = -1 on (-1)-curves, 0 on (-2)-curves")
    return ValidationReport(tuple(out), tuple(flags))


# -- construction helpers -------------------------------------------------------


def build_model(
    name: str,
    degree: int,
    curves: Iterable[tuple[int, int] | tuple[int, int, str]],
    pairs: Iterable[tuple[int, int, int]],
    singular_points: Iterable[tuple[str, Sequence[int]]],
    metadata: Mapping[str, Any] | None = None,
    fan: Sequence[Sequence[int]] | None = None,
) -> SurfaceModel:
    """Assemble a model from curve specs and sparse (i, j, mult) intersection pairs."""
    curve_objs = tuple(Curve(int(c[0]), int(c[1]), str(c[2]) if len(c) > 2 else "") for c in curves)
    pos = {c.id: k for k, c in enumerate(curve_objs)}
    n = len(curve_objs)
    mat = [[0] * n for _ in range(n)]
    for k, c in enumerate(curve_objs):
        mat[k][k] = c.self_intersection
    for i, j, mult in pairs:
        mat[pos[i]][pos[j]] = mult
        mat[pos[j]][pos[i]] = mult
    points = tuple(SingularPoint(ade.normalize_label(t), tuple(ids)) for t, ids in singular_points)
    return SurfaceModel(
        name=name,
        degree=int(degree),
        curves=curve_objs,
        intersections=tuple(tuple(row) for row in mat),
        singular_points=points,
        metadata=dict(metadata or {}),
        fan=tuple((int(x), int(y)) for x, y in fan) if fan is not None else None,
    )


def s_a4() -> SurfaceModel:
    """The S(A4) resolution: (-1)-curve C meeting E3 of the chain E1-E2-E3-E4; degree 5."""
    return build_model(
        "S(A4)",
        5,
        [(0, -1, "C"), (1, -2, "E1"), (2, -2, "E2"), (3, -2, "E3"), (4, -2, "E4")],
        [(0, 3, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)],
        [("A4", (1, 2, 3, 4))],
        metadata={
            "picard_rank": 1,
            "expected_bv_failure": True,
            "cartier_bv": True,
            "h0_tangent": 4,
            "provenance": "weak del Pezzo surface 5F; configuration as drawn for S(A4)",
        },
    )


# -- catalog file format -----------------------------------------------------------


def _model_from_record(rec: Any, where: str) -> SurfaceModel:
    if not isinstance(rec, dict):
        raise CatalogError(f"{where}: surface entry must be an object")
    try:
        name = rec["name"]
        degree = rec["degree"]
        curves_raw = rec["curves"]
        pairs_raw = rec.get("intersections", [])
        points_raw = rec.get("singular_points", [])
    except KeyError as exc:
        raise CatalogError(f"{where}: missing key {exc.args[0]!r}") from None
    where = f"{where} ({name})"
    if not isinstance(name, str) or not isinstance(degree, int):
        raise CatalogError(f"{where}: name must be a string and degree an integer")
    curves = []
    seen: set[int] = set()
    for c in curves_raw:
        try:
            cid, self_int = c["id"], c["self"]
        except (KeyError, TypeError):
            raise CatalogError(f"{where}: each curve needs 'id' and 'self'") from None
        if not isinstance(cid, int) or not isinstance(self_int, int):
            raise CatalogError(f"{where}: curve id and self must be integers")
        if cid in seen:
            raise CatalogError(f"{where}: duplicate curve id {cid}")
        seen.add(cid)
        curves.append((cid, self_int, str(c.get("label", ""))))
    pairs = []
    seen_pairs: set[tuple[int, int]] = set()
    for p in pairs_raw:
        if not (isinstance(p, list) and len(p) == 3 and all(isinstance(v, int) for v in p)):
            raise CatalogError(f"{where}: intersection entries must be [i, j, mult] integer triples")
        i, j, mult = p
        if not i < j:
            raise CatalogError(f"{where}: intersection pair [{i}, {j}] must have i < j")
        if mult < 1:
            raise CatalogError(f"{where}: intersection multiplicity must be >= 1 in [{i}, {j}, {mult}]")
        if i not in seen or j not in seen:
            raise CatalogError(f"{where}: intersection pair [{i}, {j}] names an unknown curve")
        if (i, j) in seen_pairs:
            raise CatalogError(f"{where}: intersection pair [{i}, {j}] listed twice")
        seen_pairs.add((i, j))
        pairs.append((i, j, mult))
    points = []
    for sp in points_raw:
        try:
            points.append((ade.normalize_label(sp["type"]), tuple(sp["curves"])))
        except (KeyError, TypeError):
            raise CatalogError(f"{where}: singular points need 'type' and 'curves'") from None
        except ValueError as exc:
            raise CatalogError(f"{where}: {exc}") from None
    fan = rec.get("fan")
    metadata = rec.get("metadata", {})
    if not isinstance(metadata, dict):
        raise CatalogError(f"{where}: metadata must be an object")
    return build_model(name, degree, curves, pairs, points, metadata, fan)


def load_catalog(source: bytes | str | IO, strict: bool = True) -> list[SurfaceModel]:
    """Parse a catalog; models are returned in file order.

    With ``strict`` (the default) every model must also pass ``validate``.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("surfaces"), list):
        raise CatalogError('catalog must be an object with a "surfaces" list')
    models = []
    names: set[str] = set()
    for k, rec in enumerate(doc["surfaces"]):
        model = _model_from_record(rec, f"surfaces[{k}]")
        if model.name in names:
            raise CatalogError(f"surfaces[{k}]: duplicate surface name {model.name!r}")
        names.add(model.name)
        report = validate(model) if strict else None
        if report is not None and not report.ok:
            raise CatalogError(f"{model.name}: " + "; ".join(str(v) for v in report))
        models.append(model)
    return models


def model_to_record(model: SurfaceModel) -> dict:
    rec: dict[str, Any] = {"name": model.name, "degree": model.degree}
    rec["curves"] = [
        {"id": c.id, "self": c.self_intersection, **({"label": c.label} if c.label else {})} for c in model.curves
    ]
    pairs = []
    for a in range(len(model.curves)):
        for b in range(a + 1, len(model.curves)):
            mult = model.intersections[a][b]
            if mult:
                i, j = sorted((model.curves[a].id, model.curves[b].id))
                pairs.append([i, j, mult])
    rec["intersections"] = sorted(pairs)
    rec["singular_points"] = [{"type": p.label, "curves": list(p.curve_ids)} for p in model.singular_points]
    if model.fan is not None:
        rec["fan"] = [list(r) for r in model.fan]
    rec["metadata"] = dict(model.metadata)
    return rec


def dumps_catalog(models: Iterable[SurfaceModel]) -> str:
    return json.dumps({"surfaces": [model_to_record(m) for m in models]}, indent=1, ensure_ascii=False) + "\n"


def builtin_fixtures() -> list[SurfaceModel]:
    """The shipped catalog: every rank-one Gorenstein del Pezzo surface, by decreasing degree."""
    text = resources.files("gdp").joinpath("data/catalog.json").read_text(encoding="utf-8")
    return load_catalog(text)


def builtin_covers() -> list[SurfaceModel]:
    """Quasi-universal covers of S(A3+D5) and S(2A1+D6) (higher Picard rank)."""
    text = resources.files("gdp").joinpath("data/covers.json").read_text(encoding="utf-8")
    return load_catalog(text)


def find_model(models: Iterable[SurfaceModel], name: str) -> SurfaceModel:
    for m in models:
        if m.name == name:
            return m
    raise KeyError(name)
