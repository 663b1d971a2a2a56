"""Exact JSON encodings of constants, series and matrices."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List

import sympy

from .constants import ConstScalar
from .series import HalfLogSeries, UPoly, _BiSeries


def fraction_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def scalar_to_json(c: ConstScalar) -> Dict[str, Any]:
    c = ConstScalar.coerce(c)
    return {"terms": [{"two_pi_i_pow": a, "zeta3": e, "coeff": fraction_to_str(v)}
                      for (a, e), v in c.terms.items()]}


def scalar_from_json(doc: Dict[str, Any]) -> ConstScalar:
    return ConstScalar({(t["two_pi_i_pow"], t["zeta3"]): Fraction(t["coeff"])
                        for t in doc["terms"]})


def series_to_json(s: _BiSeries) -> Dict[str, Any]:
    slot = "upow" if isinstance(s, UPoly) else "logpow"
    return {
        "var": s.var,
        "order2": s.order2,
        "coeffs": [{"m2": m, slot: k, "value": scalar_to_json(c)} for (m, k), c in s.items()],
    }


def series_from_json(doc: Dict[str, Any]) -> _BiSeries:
    is_upoly = any("upow" in c for c in doc["coeffs"]) or (doc["var"] == "q" and not any(
        "logpow" in c for c in doc["coeffs"]))
    slot = "upow" if is_upoly else "logpow"
    cls = UPoly if is_upoly else HalfLogSeries
    coeffs = {(c["m2"], c[slot]): scalar_from_json(c["value"]) for c in doc["coeffs"]}
    return cls(coeffs, doc["order2"], doc["var"])


def value_to_json(x: Any) -> Any:
    """Recursive encoder for the structures the CLI emits."""
    if isinstance(x, ConstScalar):
        return scalar_to_json(x)
    if isinstance(x, _BiSeries):
        return series_to_json(x)
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return fraction_to_str(x)
    if isinstance(x, sympy.Basic):
        return str(x)
    if isinstance(x, sympy.MatrixBase):
        return [[str(x[i, j]) for j in range(x.cols)] for i in range(x.rows)]
    if isinstance(x, dict):
        return {str(k): value_to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [value_to_json(v) for v in x]
    raise TypeError(f"cannot encode {type(x).__name__}")


def dumps(doc: Any) -> str:
    return json.dumps(value_to_json(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
