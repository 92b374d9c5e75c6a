"""JSON encoding shared by the CLI and the corpus.

Map format (the CLI's lingua franca):

    {"n": 1, "d": 2, "field": "Q" | "Q(c)",
     "coeffs": [{"i": 0, "exp": [2, 0], "v": "1"}, ...]}

Rationals are "p/q" strings; rational-function values are
{"num": [...], "den": [...]} with degree-ascending "p/q" arrays.  Output may
additionally carry prime-field maps ("F_5") and simple-extension values
({"rep": [...], "mod": [...]}).  Emission is deterministic: keys sorted,
canonical rational strings, no whitespace variation.
"""

from __future__ import annotations

import json
import math
import re

from .errors import ParseError
from .exact import (GF, QQ, AlgebraElem, ExtensionField, FunctionField,
                    LaurentMatrix, Place, PrimeField, RationalField,
                    SquareMatrix, UniPoly, format_rational, parse_rational)
from .mapspace import RationalMapPN
from .stability import (OnePS, OnePSCertificate, PointCertificate,
                        StabilityVerdict)
from .exact import HomogForm

__all__ = ["dumps_canonical", "field_tag", "field_from_tag", "value_to_json",
           "value_from_json", "map_to_json", "map_from_json", "verdict_to_json",
           "certificate_to_json", "certificate_from_json", "report_to_json",
           "cocycle_rows_to_json", "cocycle_rows_from_json", "scan_to_json"]


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def field_tag(field) -> str:
    if isinstance(field, RationalField):
        return "Q"
    if isinstance(field, FunctionField):
        return f"Q({field.var})"
    if isinstance(field, PrimeField):
        return f"F_{field.p}"
    if isinstance(field, ExtensionField):
        return "Q[ext]"
    raise ParseError(f"unknown field {field!r}")


def field_from_tag(tag: str, extra=None):
    if tag == "Q":
        return QQ
    m = re.fullmatch(r"Q\((\w)\)", tag)
    if m:
        return FunctionField(m.group(1))
    m = re.fullmatch(r"F_(\d+)", tag)
    if m:
        return GF(int(m.group(1)))
    if tag == "Q[ext]" and extra is not None:
        mod = UniPoly([parse_rational(v) for v in extra], QQ, "z")
        return ExtensionField(mod, "a")
    raise ParseError(f"unknown field tag {tag!r}")


def value_to_json(field, v):
    return field.format(v)


def value_from_json(field, data):
    return field.parse(data)


def map_to_json(phi: RationalMapPN) -> dict:
    field = phi.field
    out = {"n": phi.n, "d": phi.d, "field": field_tag(field), "coeffs": []}
    if isinstance(field, ExtensionField):
        out["modulus"] = [QQ.format(c) for c in field.modulus.coeffs]
    for i, e, v in phi.coefficient_entries():
        out["coeffs"].append({"i": i, "exp": list(e), "v": value_to_json(field, v)})
    return out


def map_from_json(data) -> RationalMapPN:
    try:
        n = int(data["n"])
        d = int(data["d"])
        field = field_from_tag(data["field"], data.get("modulus"))
        comps = [dict() for _ in range(n + 1)]
        for entry in data["coeffs"]:
            i = int(entry["i"])
            exp = tuple(int(x) for x in entry["exp"])
            comps[i][exp] = value_from_json(field, entry["v"])
        forms = [HomogForm(n + 1, d, comp, field) for comp in comps]
        return RationalMapPN(forms, field)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed map JSON: {exc}") from exc


def _order_to_json(o):
    return "inf" if o == math.inf else int(o)


def _binary_form_to_array(h: HomogForm, field):
    # index j holds the coefficient of x^j y^(deg-j)
    return [value_to_json(field, h.coeff((j, h.degree - j)))
            for j in range(h.degree + 1)]


def _binary_form_from_array(arr, field) -> HomogForm:
    deg = len(arr) - 1
    return HomogForm(2, deg, {(j, deg - j): value_from_json(field, v)
                              for j, v in enumerate(arr)}, field)


def certificate_to_json(cert, field) -> dict:
    if isinstance(cert, OnePSCertificate):
        return {"type": "1ps",
                "A": [[value_to_json(field, v) for v in row] for row in cert.A.rows],
                "a": list(cert.a.a)}
    if isinstance(cert, PointCertificate):
        return {"type": "point",
                "h": _binary_form_to_array(cert.h, field),
                "orders": [_order_to_json(cert.ord_pencil),
                           _order_to_json(cert.ord_forced)]}
    raise ParseError(f"unknown certificate {cert!r}")


def certificate_from_json(data, field):
    if data["type"] == "1ps":
        a = SquareMatrix([[value_from_json(field, v) for v in row]
                          for row in data["A"]], field)
        return OnePSCertificate(a, OnePS(tuple(data["a"])))
    if data["type"] == "point":
        orders = [math.inf if o == "inf" else int(o) for o in data["orders"]]
        return PointCertificate(_binary_form_from_array(data["h"], field),
                                orders[0], orders[1])
    raise ParseError(f"unknown certificate type {data.get('type')!r}")


def verdict_to_json(v: StabilityVerdict, field) -> dict:
    out = {"verdict": v.kind}
    if v.certificate is not None:
        out["certificate"] = certificate_to_json(v.certificate, field)
    if v.note:
        out["note"] = v.note
    return out


def report_to_json(report) -> dict:
    place = report.place
    k_field = report.final_model.phi.field
    out = {
        "place": place.spec_string(),
        "ramification_e": report.ramification_e,
        "steps": list(report.steps),
        "profiles": [list(p) for p in report.profiles],
        "final_model": map_to_json_raw(report.final_model.phi),
        "residue": map_to_json(report.residue),
        "residue_verdict": verdict_to_json(report.residue_verdict,
                                           report.residue.field),
    }
    if report.param_image is not None:
        out["param_image"] = [QQ.format(c) for c in report.param_image.coeffs]
    return out


def map_to_json_raw(phi: RationalMapPN) -> dict:
    """Like map_to_json but marks that the literal scaling is meaningful."""
    out = map_to_json(phi)
    out["scaling"] = "literal"
    return out


def cocycle_rows_to_json(matrix: LaurentMatrix):
    return matrix.serialize()


def cocycle_rows_from_json(data, var="c") -> LaurentMatrix:
    try:
        return LaurentMatrix.parse(data, var)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed cocycle JSON: {exc}") from exc


def scan_to_json(entries) -> list:
    out = []
    for e in entries:
        status = e.check.semistable
        out.append({
            "place": e.place.spec_string(),
            "semistable": status if status is not None else "undetermined",
            "verdict": verdict_to_json(e.check.verdict, e.check.residue.field),
            "residue": map_to_json(e.check.residue),
        })
    return out
