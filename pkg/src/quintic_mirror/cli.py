"""Command-line front end.

Every command prints one exact document (JSON by default, CSV on request)
to stdout.  Exit status: 0 success, 1 internal inconsistency, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import cohomology, frames, open_string, verify
from .constants import ConstScalar
from .errors import QuinticMirrorError
from .mirror_map import build_mirror_map
from .picard_fuchs import frobenius_solutions
from .serialize import dumps
from .series import _BiSeries
from .yukawa import SIGN_CONVENTIONS, STANDARD_MINUS, extract_instantons, yukawa_q, yukawa_z

COMMANDS = ("periods", "mirror-map", "yukawa", "gw", "open-gw", "frames",
            "monodromy", "normal-function", "verify")


@dataclass(frozen=True)
class RunConfig:
    order: int
    sign_convention: str = STANDARD_MINUS
    orientation: str = open_string.PLUS
    format: str = "json"
    precision: Optional[int] = None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_positive_int, default=None,
                        help="truncation order (z-exponent; half-steps for open-gw "
                             "and normal-function); default 10 (8 for verify)")
    common.add_argument("--sign-convention", choices=SIGN_CONVENTIONS, default=STANDARD_MINUS,
                        help="discriminant factor in the Yukawa coupling")
    common.add_argument("--orientation", choices=sorted(open_string.ORIENTATIONS),
                        default=open_string.PLUS, help="tension branch")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--precision", type=_positive_int, default=None,
                        help="also emit approximate decimal values with this many digits")
    parser = argparse.ArgumentParser(
        prog="quintic-mirror",
        description="Exact periods, mirror map, instanton numbers, frames and "
                    "open-string data for the quintic threefold.")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)
    helps = {
        "periods": "Frobenius solutions y_j and integral periods eta_j",
        "mirror-map": "q(z) and z(q)",
        "yukawa": "Yukawa coupling in z and in q",
        "gw": "instanton numbers n_d and Gromov-Witten invariants N_d",
        "open-gw": "domainwall tension and open invariants",
        "frames": "pairing matrix, c^{jk} constants and frame changes",
        "monodromy": "monodromy logarithm and tension monodromy report",
        "normal-function": "extension data, M(N, W) and the log-point restriction",
        "verify": "run the full invariant suite",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


# -- rendering --------------------------------------------------------------------

def _approx(value: Any, digits: int) -> Any:
    if isinstance(value, (int, Fraction)):
        value = ConstScalar.coerce(value)
    if isinstance(value, ConstScalar):
        import mpmath
        z = value.evaluate(digits)
        with mpmath.workdps(digits):
            if z.imag == 0:
                return mpmath.nstr(z.real, digits)
            return mpmath.nstr(z, digits)
    return None


def _series_rows(name: str, s: _BiSeries) -> List[List[str]]:
    return [[name, str(m), str(k), str(c)] for (m, k), c in s.items()]


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([str(x) for x in row])
    return buf.getvalue()


def _series_csv(named: Dict[str, _BiSeries]) -> str:
    rows = []
    for name, s in named.items():
        rows.extend(_series_rows(name, s))
    return _csv(["quantity", "m2", "power", "value"], rows)


def _table_doc(values: Dict[int, Any], cfg: RunConfig, extra: Dict[int, Any] | None = None,
               extra_name: str = "") -> List[Dict[str, Any]]:
    rows = []
    for d in sorted(values):
        row: Dict[str, Any] = {"degree": d, "value": values[d]}
        if extra is not None:
            row[extra_name] = extra[d]
        if cfg.precision:
            row["approx_value"] = _approx(values[d], cfg.precision)
        rows.append(row)
    return rows


# -- commands -----------------------------------------------------------------------

def cmd_periods(cfg: RunConfig) -> Tuple[Any, Optional[str]]:
    basis = frobenius_solutions(cfg.order)
    etas = frames.integral_periods(basis)
    named = {f"y{j}": y for j, y in enumerate(basis.y)}
    named.update({f"eta{j}": e for j, e in enumerate(etas)})
    doc = {"order": cfg.order, "y": list(basis.y), "eta": etas}
    return doc, _series_csv(named)


def cmd_mirror_map(cfg: RunConfig):
    mm = build_mirror_map(frobenius_solutions(cfg.order))
    z_of_q = mm.z_of_q.truncate(2 * cfg.order)
    doc = {"order": cfg.order, "q_of_z": mm.q_series.truncate(2 * cfg.order), "z_of_q": z_of_q}
    rows = [[n, f"{mm.q_series.coeff(2 * n)}", f"{z_of_q.coeff(2 * n)}"]
            for n in range(1, cfg.order + 1)]
    return doc, _csv(["degree", "q_of_z", "z_of_q"], rows)


def cmd_yukawa(cfg: RunConfig):
    basis = frobenius_solutions(cfg.order)
    mm = build_mirror_map(basis)
    yz = yukawa_z(basis, mm, cfg.order, cfg.sign_convention)
    yq = yukawa_q(basis, mm, cfg.order, cfg.sign_convention)
    doc = {"order": cfg.order, "sign_convention": cfg.sign_convention, "Y_z": yz, "Y_q": yq}
    vals = {n: yq.coeff(2 * n) for n in range(cfg.order + 1)}
    return doc, _csv(["degree", "value"], [[d, v] for d, v in vals.items()])


def cmd_gw(cfg: RunConfig):
    basis = frobenius_solutions(cfg.order)
    table = extract_instantons(yukawa_q(basis, build_mirror_map(basis), cfg.order,
                                        cfg.sign_convention))
    doc = {"order": cfg.order, "sign_convention": cfg.sign_convention,
           "table": _table_doc(table.n, cfg, table.N, "N_d"),
           "integral": table.is_integral(), "divisor_sum_holds": table.divisor_sum_holds()}
    if not table.is_integral():
        print(f"warning: instanton numbers are not integral under {cfg.sign_convention}",
              file=sys.stderr)
    return doc, _csv(["degree", "value"], [[d, table.n[d]] for d in sorted(table.n)])


def cmd_open_gw(cfg: RunConfig):
    order2 = cfg.order
    t = open_string.tension_B(order2, cfg.orientation)
    ta = open_string.tension_A(order2, cfg.orientation)
    raw = open_string.open_invariants(order2, cfg.orientation)
    disk = open_string.disk_invariants(raw)
    doc = {"order2": order2, "orientation": cfg.orientation,
           "tension_z": t.full, "tau_times_a0": t.particular, "a0": t.a0,
           "tension_q": ta, "table": _table_doc(raw, cfg, disk, "disk_count")}
    return doc, _csv(["degree", "value"], [[d, raw[d]] for d in sorted(raw)])


def cmd_frames(cfg: RunConfig):
    derived = frames.derive_cjk()
    cjk = {f"c{j}{k}": derived[(j, k)] for (j, k) in frames.CJK_KEYS}
    e_rows = [list(v.coords) for v in frames.e_frame(cfg.order)]
    st_rows = [list(v.coords) for v in frames.tilde_s_frame(cfg.order)]
    doc = {
        "order": cfg.order,
        "pairing_matrix": [[x.to_fraction() for x in row]
                           for row in cohomology.pairing_matrix()],
        "cjk": cjk,
        "cjk_matches_table": derived == frames.TABULATED_CJK,
        "tilde_s_in_s": frames.tilde_s_in_s_matrix(derived),
        "s_in_tilde_s": frames.s_in_tilde_s_matrix(derived),
        "tilde_s_in_e": st_rows,
        "e_in_s": e_rows,
        "symplectic_gram": frames.symplectic_gram(derived),
    }
    rows = [[f"S[{i}][{j}]", x] for i, r in enumerate(cohomology.pairing_matrix())
            for j, x in enumerate(r)] + [[k, v] for k, v in cjk.items()]
    return doc, _csv(["entry", "value"], rows)


def cmd_monodromy(cfg: RunConfig):
    n = frames.monodromy_log()
    report = open_string.verify_tension_monodromy(cfg.order)
    doc = {
        "order2": cfg.order,
        "N_b": n,
        "exp_N_b": frames.matrix_exp_nilpotent(n),
        "N_double_cover": frames.double_cover_monodromy_log(),
        "substitution_agrees": frames.monodromy_by_substitution() == n,
        "nilpotency_index": frames.nilpotency_index(n),
        "tension": {
            "full_turn_residual_zero": report.turn_residual.is_zero(),
            "branch_sum_residual_zero": report.branch_residual.is_zero(),
            "N_of_T_over_eta0": report.n_of_ratio,
            "double_turn_unipotent": report.unipotent,
            "ok": report.ok,
        },
    }
    rows = [[f"N[{i}][{j}]", n[i, j]] for i in range(4) for j in range(4)]
    return doc, _csv(["entry", "value"], rows)


def cmd_normal_function(cfg: RunConfig):
    data = open_string.normal_function(cfg.order, cfg.orientation)
    m = open_string.extended_relative_filtration()
    log_point = open_string.log_point_restriction(orientation=cfg.orientation)
    filt = {str(k): {"dimension": m.dimension(k),
                     "basis": [[str(x) for x in m[k][:, j]] for j in range(m[k].cols)]}
            for k in range(0, 7)}
    doc = {
        "order2": cfg.order,
        "orientation": cfg.orientation,
        "basis": ["s0", "s1", "s2", "s3", "1"],
        "one_Z": list(data.one_Z.coords),
        "one_F_minus_one_Z_e": list(data.one_F_minus_one_Z.coords),
        "one_Z_spl": list(data.one_Z_spl.coords),
        "N_one_Z": list(open_string.monodromy_extended(data.one_Z).coords),
        "N_one_Z_spl": list(open_string.monodromy_extended(data.one_Z_spl).coords),
        "transversality_residual": open_string.transversality_residual(data, cfg.order),
        "extended_N": open_string.extended_monodromy_matrix(),
        "relative_weight_filtration": filt,
        "log_point": {"tension": log_point.tension,
                      "one_F_minus_one_Z_e": list(log_point.one_F_minus_one_Z.coords)},
    }
    rows = [[k, v["dimension"]] for k, v in filt.items()]
    return doc, _csv(["weight", "dimension"], rows)


HANDLERS: Dict[str, Callable[[RunConfig], Tuple[Any, Optional[str]]]] = {
    "periods": cmd_periods,
    "mirror-map": cmd_mirror_map,
    "yukawa": cmd_yukawa,
    "gw": cmd_gw,
    "open-gw": cmd_open_gw,
    "frames": cmd_frames,
    "monodromy": cmd_monodromy,
    "normal-function": cmd_normal_function,
}


def run_verify(cfg: RunConfig, out) -> int:
    results = verify.run_suite(cfg.order)
    failed = [r for r in results if not r.passed]
    if cfg.format == "csv":
        out.write(_csv(["check", "passed"], [[r.name, r.passed] for r in results]))
    else:
        out.write(dumps({"order": cfg.order,
                         "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                                    for r in results],
                         "passed": not failed}))
    for r in failed:
        print(f"invariant failed: {r.name} {r.detail}".rstrip(), file=sys.stderr)
    return 1 if failed else 0


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    default_order = 8 if args.command == "verify" else 10
    cfg = RunConfig(order=args.order or default_order, sign_convention=args.sign_convention,
                    orientation=args.orientation, format=args.format, precision=args.precision)
    try:
        if args.command == "verify":
            return run_verify(cfg, out)
        doc, csv_text = HANDLERS[args.command](cfg)
    except QuinticMirrorError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if cfg.format == "csv":
        out.write(csv_text or "")
    else:
        out.write(dumps(doc))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
