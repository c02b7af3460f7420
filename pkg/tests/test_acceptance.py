"""Acceptance criteria 1-8.  Each test records a one-line verdict; conftest prints them after the run.

Run directly (python tests/test_acceptance.py) to get the same lines without pytest.
"""
import collections
import itertools
import os
from fractions import Fraction as Q

import pytest

from gdp.catalog_report import report
from gdp.cli import main as cli_main
from gdp.intersection import QDivisor, WeilClass, local_c1, product_resolution, pullback
from gdp.invariants import a_omega, a_rank1, c2_global_omega, c2_local_omega
from gdp.linalg import is_negative_definite
from gdp.positivity import box_size, gram_matrix, is_ample, search_bott_failures
from gdp.riemann_roch import baker_cartier_bv, chi_omega1, chi_rank1
from gdp.surface_model import builtin_covers, builtin_fixtures, find_model, s_a4
from gdp.toric import Fan2D, classify_fan, singularity_multiset

RESULTS: dict[int, tuple[bool, str]] = {}
EXTENSION_BOUND = 5
DESK_SCALE = 10**7  # candidates; larger boxes run only with GDP_EXTENDED=1
EXTENDED = os.environ.get("GDP_EXTENDED") == "1"


def record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    assert ok, detail


def test_criterion_1_sa4_golden_pipeline():
    model = s_a4()
    (x,) = model.singular_points
    d = WeilClass({0: 1})
    pb = pullback(model, d)
    got = {
        "pullback": tuple(pb[e] for e in (1, 2, 3, 4)),
        "a_O": a_rank1(model, x, d),
        "a_omega": a_omega(model, x, d),
        "c2_local": c2_local_omega(model, x, d),
        "c2_global": c2_global_omega(model, d),
        "k_dot": chi_omega1(model, d).k_dot,
        "self_int": chi_omega1(model, d).self_int,
        "chi": chi_omega1(model, d).chi_omega,
    }
    want = {
        "pullback": (Q(2, 5), Q(4, 5), Q(6, 5), Q(3, 5)),
        "a_O": Q(-3, 5),
        "a_omega": Q(-1),
        "c2_local": Q(18, 5),
        "c2_global": Q(7, 5),
        "k_dot": Q(-1),
        "self_int": Q(1, 5),
        "chi": Q(-1),
    }
    bad = [k for k in want if got[k] != want[k]]
    record(1, not bad, "S(A4) golden values exact" if not bad else f"mismatch in {bad}")


def test_criterion_2_structure_sheaf():
    models = [*builtin_fixtures(), *builtin_covers()]
    bad = [m.name for m in models if chi_rank1(m, WeilClass({})) != 1]
    record(2, not bad, f"chi(O_X) = 1 on all {len(models)} catalog entries" if not bad else f"fails on {bad}")


def test_criterion_3_fans():
    got = (
        singularity_multiset(Fan2D.from_unordered([(1, 2), (1, -2), (-1, 0)])),
        singularity_multiset(Fan2D.from_unordered([(-2, 1), (1, 1), (1, -2)])),
        [c.label for c in classify_fan(Fan2D(((1, 0), (0, 1), (-1, -1))))],
    )
    ok = got == (["A1", "A1", "A3"], ["A2", "A2", "A2"], ["smooth"] * 3)
    record(3, ok, f"fan multisets {got[0]}, {got[1]}, P2 smooth")


def test_criterion_4_search_reproduction(capsys):
    code1 = cli_main(["search", "S(A4)", "--bound", "1", "--format", "records"])
    out1 = capsys.readouterr().out
    code0 = cli_main(["search", "S(A4)", "--bound", "0", "--format", "records"])
    out0 = capsys.readouterr().out
    ok = code1 == code0 == 0 and out1 == '{"coefficients": [1], "chi": "-1/1", "gram": ["1/5"]}\n' and out0 == ""
    record(4, ok, "search S(A4): bound 1 gives a=(1), chi=-1/1; bound 0 gives nothing")


def test_criterion_5_property_suite():
    models = [m for m in [*builtin_fixtures(), *builtin_covers()] if not m.unsupported_for_positivity]
    failures = []
    for model in models:
        ids = model.minus1_ids
        span = range(-1, 2) if len(ids) > 4 else range(-2, 3)
        samples = list(itertools.islice(itertools.product(span, repeat=len(ids)), 0, None, max(1, len(span) ** len(ids) // 60)))
        for a in samples:
            d = WeilClass.from_tuple(model, a)
            pb = pullback(model, d)
            if any(product_resolution(model, pb, QDivisor({e: 1})) for e in model.minus2_ids):
                failures.append(("orthogonality", model.name, a))
            if d.strict_transform() - pb != sum((local_c1(model, x, d) for x in model.singular_points), QDivisor({})):
                failures.append(("decomposition", model.name, a))
        m = gram_matrix(model)
        for i, ci in enumerate(ids):
            pb = pullback(model, WeilClass({ci: 1}))
            for j, cj in enumerate(ids):
                if m[i][j] != product_resolution(model, pb, QDivisor({cj: 1})):
                    failures.append(("gram", model.name, (i, j)))
        exc = model.minus2_ids
        if not is_negative_definite([[model.dot(a, b) for b in exc] for a in exc]):
            failures.append(("negative definite", model.name))
        if model.picard_rank == 1 and len(ids) <= 3:
            for a in itertools.product(range(-3, 4), repeat=len(ids)):
                verdict = is_ample(model, WeilClass.from_tuple(model, a)).verdict  # raises on disagreement
                if (verdict == "ample") != (sum(a) > 0):
                    failures.append(("rank-one shortcut", model.name, a))
    for rays in ([(1, 2), (1, -2), (-1, 0)], [(-2, 1), (1, 1), (1, -2)]):
        fan = Fan2D.from_unordered(rays)
        for g in (((0, 1), (1, 0)), ((2, 1), (1, 1)), ((1, 0), (3, -1))):
            if sorted(c.label for c in classify_fan(fan.transformed(g))) != sorted(c.label for c in classify_fan(fan)):
                failures.append(("unimodular", rays, g))
    record(5, not failures, f"identities hold on {len(models)} models" if not failures else f"{failures[:3]}")


def test_criterion_6_baker():
    got = (baker_cartier_bv(4, 4, 1), baker_cartier_bv(0, 8, 1), baker_cartier_bv(1, 8, 1))
    record(6, got == (True, True, False), f"Baker (4,4,1), (0,8,1), (1,8,1) -> {got}")


def test_criterion_7_report():
    counts = collections.Counter(v.status for v in report(builtin_fixtures()))
    want = {
        "toric": 5,
        "toric_quotient": 5,
        "fails_cartier_bv": 4,
        "no_endomorphism_by_cover": 6,
        "fails_weil_bv": 8,
        "cover_fails_bv": 2,
        "open": 1,
    }
    record(7, dict(counts) == want, "status counts " + ", ".join(f"{k} {v}" for k, v in counts.items()))


def _flagged():
    return [m for m in [*builtin_fixtures(), *builtin_covers()] if m.metadata.get("expected_bv_failure")]


def test_criterion_8_extension_gate():
    flagged = _flagged()
    small = [m for m in flagged if box_size(len(m.minus1_ids), EXTENSION_BOUND) <= DESK_SCALE]
    large = [m for m in flagged if m not in small]
    missing = [m.name for m in small if not len(search_bott_failures(m, EXTENSION_BOUND))]
    detail = f"{len(small) - len(missing)}/{len(small)} flagged entries have a witness with |a| <= {EXTENSION_BOUND}"
    if large:
        names = ", ".join(f"{m.name} ({box_size(len(m.minus1_ids), EXTENSION_BOUND)} candidates)" for m in large)
        detail += f"; beyond desk scale, checked only with GDP_EXTENDED=1: {names}"
    if missing:
        detail += f"; missing: {missing}"
    record(8, not missing, detail)


@pytest.mark.extension
@pytest.mark.skipif(not EXTENDED, reason="set GDP_EXTENDED=1 to search boxes beyond desk scale")
def test_criterion_8_extension_gate_large_boxes():
    workers = max(1, min(8, os.cpu_count() or 1))
    missing = []
    for m in _flagged():
        if box_size(len(m.minus1_ids), EXTENSION_BOUND) > DESK_SCALE:
            if not len(search_bott_failures(m, EXTENSION_BOUND, workers=workers, chunk_size=1 << 20)):
                missing.append(m.name)
    RESULTS[8] = (RESULTS.get(8, (True, ""))[0] and not missing,
                  RESULTS.get(8, (True, ""))[1] + (f"; extended run found no witness for {missing}" if missing else
                                                   "; extended run found witnesses for all"))
    assert not missing, f"no witness with |a| <= {EXTENSION_BOUND}: {missing}"


def summary_lines():
    lines = []
    for n in range(1, 9):
        if n in RESULTS:
            ok, detail = RESULTS[n]
            lines.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        else:
            lines.append(f"criterion {n}: NOT RUN")
    return lines


if __name__ == "__main__":
    import io
    import contextlib

    class _Capsys:
        def readouterr(self):
            out = buf.getvalue()
            buf.seek(0)
            buf.truncate()
            return type("R", (), {"out": out, "err": ""})

    buf = io.StringIO()
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion") and not name.endswith("large_boxes"):
            try:
                if "capsys" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
                    with contextlib.redirect_stdout(buf):
                        fn(_Capsys())
                else:
                    fn()
            except AssertionError:
                pass
    print("\n".join(summary_lines()))
