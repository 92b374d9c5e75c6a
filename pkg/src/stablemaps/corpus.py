"""The bundled example corpus and its re-verification.

Entries carry expected verdicts, bad-place sets, invariants, or splitting
types together with a provenance tag.  ``verify_entry`` recomputes every
expectation from the kernels — stored values are never trusted, they are
cross-checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .bundles import ChartModel, Cocycle, splitting_type, verify_transition
from .exact import QQ, parse_rational
from .invariants import automorphisms_d2, obstruction_data, sigma_invariants
from .mapspace import RationalMapPN, totally_invariant_points_n1
from .reduction import bad_places, scan_family
from .serialize import cocycle_rows_from_json, map_from_json
from .stability import (OnePS, OnePSCertificate, verdict, verify_certificate)
from .exact import SquareMatrix, UniPoly, parse_poly_string, RatFunc

__all__ = ["load_corpus", "verify_entry", "verify_bundle_entry", "verify_all",
           "CorpusResult"]


def load_corpus() -> dict:
    data = resources.files("stablemaps").joinpath("data/corpus.json").read_text()
    return json.loads(data)


@dataclass(frozen=True)
class CorpusResult:
    name: str
    ok: bool
    details: tuple


def _check_sigma_expectation(phi, expected):
    s1, s2 = sigma_invariants(phi)
    field = phi.field
    want1 = field.coerce(parse_poly_string(expected[0], getattr(field, "var", "c"))) \
        if any(ch.isalpha() for ch in expected[0]) else field.coerce(expected[0])
    want2 = field.coerce(parse_poly_string(expected[1], getattr(field, "var", "c"))) \
        if any(ch.isalpha() for ch in expected[1]) else field.coerce(expected[1])
    return s1 == want1 and s2 == want2


def verify_entry(entry: dict) -> CorpusResult:
    details = []
    ok = True
    phi = map_from_json(entry["map"])

    if "expected_verdict" in entry:
        v = verdict(phi)
        good = v.kind == entry["expected_verdict"]
        if v.certificate is not None and v.kind == "unstable":
            good = good and verify_certificate(phi, v.certificate, strict=True)
        if v.certificate is not None and v.kind == "semistable_not_stable":
            good = good and verify_certificate(phi, v.certificate, strict=False)
        details.append(("verdict", v.kind, good))
        ok = ok and good

    if "expected_bad_places" in entry:
        entries = scan_family(phi)
        bad = sorted(p.spec_string() for p in bad_places(entries))
        want = sorted(entry["expected_bad_places"])
        good = bad == want
        details.append(("bad_places", bad, good))
        ok = ok and good

    if "expected_sigma" in entry:
        good = _check_sigma_expectation(phi, entry["expected_sigma"])
        details.append(("sigma", entry["expected_sigma"], good))
        ok = ok and good

    if "expected_tot_inv" in entry:
        tips = totally_invariant_points_n1(phi)
        good = len(tips) == entry["expected_tot_inv"]
        details.append(("totally_invariant", len(tips), good))
        ok = ok and good

    if "expected_aut_order_min" in entry:
        aut = automorphisms_d2(phi)
        good = aut.order >= entry["expected_aut_order_min"]
        details.append(("aut_order", aut.order, good))
        ok = ok and good

    if "expected_repeated_root" in entry:
        od = obstruction_data(phi)
        good = od.repeated_root == entry["expected_repeated_root"]
        details.append(("repeated_root", od.repeated_root, good))
        ok = ok and good

    if "n2_certificate_subgroup" in entry:
        a = OnePS(tuple(entry["n2_certificate_subgroup"]))
        ident = SquareMatrix.identity(phi.n + 1, phi.field)
        good = verify_certificate(phi, OnePSCertificate(ident, a), strict=True)
        details.append(("n2_subgroup_certificate", list(a.a), good))
        ok = ok and good

    return CorpusResult(entry["name"], ok, tuple(details))


def verify_bundle_entry(entry: dict) -> CorpusResult:
    details = []
    u_chart = ChartModel.build("finite", map_from_json(entry["u_chart"]))
    v_chart = ChartModel.build("infinite", map_from_json(entry["v_chart"]))
    t = Cocycle(cocycle_rows_from_json(entry["transition"]))
    trans_ok = verify_transition(u_chart, v_chart, t)
    details.append(("transition", trans_ok, trans_ok))
    interiors = u_chart.interior_ok() and v_chart.interior_ok()
    details.append(("interior_fibers", interiors, interiors))
    stype, witness = splitting_type(t)
    want = tuple(entry["expected_splitting"])
    split_ok = stype.twists == want and witness.verify()
    details.append(("splitting", list(stype.twists), split_ok))
    ok = trans_ok and interiors and split_ok
    return CorpusResult(entry["name"], ok, tuple(details))


def verify_all() -> list[CorpusResult]:
    corpus = load_corpus()
    out = [verify_entry(e) for e in corpus["maps"]]
    out.extend(verify_bundle_entry(e) for e in corpus["bundles"])
    return out
