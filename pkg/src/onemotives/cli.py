"""Batch command-line interface: JSON documents in, JSON reports out.

Five verbs, one per pipeline stage:

* ``realize``  -- Hodge structure, De Rham dimensions, and finite-level
  realizations of a 1-motive at the requested levels.
* ``dualize``  -- Cartier dual, symmetric avatar, and finite pairing Grams.
* ``check``    -- consistency reports (exact-sequence compatibility at each
  level, double duality, isomorphism tests between consecutive listed
  motives); exit code 2 when any report is not a pass.
* ``curve``    -- the four Picard/Albanese 1-motives and the dual graph of a
  seminormal curve configuration.
* ``aj``       -- evaluate the Abel-Jacobi map on a degree-zero divisor.

Documents are UTF-8 JSON; ``-`` means stdin/stdout.  Complex scalars are
two-element ``[re, im]`` arrays, integer matrices are row-major arrays of
decimal strings (exact at any size), and floats are rounded to 15
significant digits before encoding so identical input plus identical options
produces byte-identical output.  Exit status: 0 success, 1 validation
error (messages name the offending field), 2 failed checks.  Output files
are only written after the whole report serializes.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import namedtuple

import numpy as np

from . import config
from .curves import (
    abel_jacobi_plus,
    alb_minus,
    alb_plus,
    curve_from_config,
    dual_graph,
    pic_minus,
    pic_plus,
)
from .dualize import cartier_dual, double_dual_compare, pairing_mod_m, symmetric_avatar
from .motives import OneMotive, PolarizedAbelianVariety, SemiAbelianVariety
from .realize import (
    iso_test,
    realization_sequences_check,
    t_de_rham,
    t_hodge,
    t_mod_m,
)

Command = namedtuple(
    "Command",
    ["verb", "input_path", "output_path", "levels", "tol", "denom_bound", "sigma_n"],
)

_VERBS = ("realize", "dualize", "check", "curve", "aj")


class CommandError(Exception):
    """Input rejected before (or while) running the mathematics."""


# ---------------------------------------------------------------------------
# JSON encoding


def _fnum(x):
    """Round to 15 significant digits; the encoding contract for floats."""
    return float(f"{float(x):.15g}")


def _cpair(z):
    z = complex(z)
    return [_fnum(z.real), _fnum(z.imag)]


def _cmatrix(A):
    A = np.asarray(A, dtype=complex)
    return [[_cpair(v) for v in row] for row in A]


def _imatrix(A):
    return [[str(int(v)) for v in row] for row in A.data]


def _motive_doc(M: OneMotive):
    return {
        "r": M.lattice_rank,
        "t": M.torus_rank,
        "g": M.genus,
        "omega": _cmatrix(M.group.abelian.omega),
        "eta": _cmatrix(M.group.eta),
        "u_lift": _cmatrix(M.u_lift),
    }


def _hodge_doc(H):
    return {
        "rank": H.rank,
        "w2_basis": _imatrix(H.w2_basis),
        "w1_basis": _imatrix(H.w1_basis),
        "f0_basis": _cmatrix(H.f0_basis),
        "polarization": None if H.polarization is None else _imatrix(H.polarization),
    }


def _de_rham_doc(D):
    return {
        "dim_total": D.dim_total,
        "dim_f0": D.dim_f0,
        "dim_lie": D.dim_lie,
        "dim_f0_group": D.dim_f0_group,
        "dim_f0_lattice": D.dim_f0_lattice,
    }


def _finite_doc(F):
    return {
        "level": F.m,
        "rank": F.rank,
        "order": str(F.group.order()),
        "invariant_factors": [str(d) for d in F.group.invariant_factors],
        "sub": _imatrix(F.sub),
        "quot": _imatrix(F.quot),
    }


def _avatar_doc(A):
    return {
        "lattice_rank": A.lattice_rank,
        "character_rank": A.character_rank,
        "omega": _cmatrix(A.abelian.omega),
        "dual_omega": _cmatrix(A.dual_abelian.omega),
        "u_lift": _cmatrix(A.u_lift),
        "v_values": [[_cpair(v) for v in p.value] for p in A.v_points],
        "psi": _imatrix(A.psi),
    }


def _graph_doc(graph):
    return {
        "vertices": list(graph.vertices),
        "edges": [[e.tail, e.head] for e in graph.edges],
        "b1": graph.b1,
    }


# ---------------------------------------------------------------------------
# Structural validation (shapes and cross-references only -- no numerics)


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _is_scalar(v):
    """Complex scalar in wire form: a number or an [re, im] pair."""
    if _is_number(v):
        return True
    return isinstance(v, list) and len(v) == 2 and all(_is_number(x) for x in v)


def _rank_errors(doc, errors):
    ranks = {}
    for key in ("r", "t", "g"):
        v = doc.get(key)
        if v is None:
            errors.append(f"{key}: missing")
        elif not isinstance(v, int) or isinstance(v, bool) or v < 0:
            errors.append(f"{key}: expected a nonnegative integer")
        else:
            ranks[key] = v
    return ranks


def _matrix_errors(doc, key, shape, errors, where=""):
    value = doc.get(key)
    label = where + key
    if value is None:
        errors.append(f"{label}: missing")
        return
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        errors.append(f"{label}: expected an array of rows")
        return
    if shape is not None:
        rows, cols = shape
        if len(value) != rows:
            errors.append(f"{label}: expected {rows} rows, found {len(value)}")
            return
        for i, row in enumerate(value):
            if len(row) != cols:
                errors.append(f"{label}: row {i} has {len(row)} entries, expected {cols}")
                return
    for i, row in enumerate(value):
        for j, entry in enumerate(row):
            if not _is_scalar(entry):
                errors.append(f"{label}: entry ({i},{j}) is not a complex scalar")
                return


def _motive_errors(doc, where=""):
    if not isinstance(doc, dict):
        return [f"{where or 'document'}: expected a JSON object"]
    errors = []
    ranks = _rank_errors(doc, errors)
    full = len(ranks) == 3
    r, t, g = (ranks.get(k) for k in ("r", "t", "g"))
    _matrix_errors(doc, "omega", (g, g) if full else None, errors, where)
    _matrix_errors(doc, "eta", (t, 2 * g) if full else None, errors, where)
    _matrix_errors(doc, "u_lift", (t + g, r) if full else None, errors, where)
    return errors


def _is_coord(v):
    return _is_scalar(v) or (isinstance(v, str) and v.lower() in ("inf", "infinity"))


def _curve_errors(doc, where=""):
    if not isinstance(doc, dict):
        return [f"{where or 'document'}: expected a JSON object"]
    errors = []
    comp_labels = set()
    components = doc.get("components")
    if not isinstance(components, list) or not components:
        errors.append(f"{where}components: expected a non-empty array")
        components = []
    for i, comp in enumerate(components):
        if not isinstance(comp, dict):
            errors.append(f"{where}components: entry {i} is not an object")
            continue
        label = comp.get("label")
        if not isinstance(label, str) or not label:
            errors.append(f"{where}components: entry {i} needs a string label")
        elif label in comp_labels:
            errors.append(f"{where}components: duplicate label '{label}'")
        else:
            comp_labels.add(label)
        genus = comp.get("genus")
        if genus not in (0, 1) or isinstance(genus, bool):
            errors.append(f"{where}components: entry {i} genus must be 0 or 1")
        elif genus == 1 and not _is_scalar(comp.get("tau")):
            errors.append(f"{where}components: entry {i} needs a tau scalar")
        elif genus == 0 and comp.get("tau") is not None:
            errors.append(f"{where}components: entry {i} has tau but genus 0")
    point_labels = set()
    for i, pt in enumerate(doc.get("points", [])):
        if not isinstance(pt, dict):
            errors.append(f"{where}points: entry {i} is not an object")
            continue
        label = pt.get("label")
        if not isinstance(label, str) or not label:
            errors.append(f"{where}points: entry {i} needs a string label")
        elif label in point_labels:
            errors.append(f"{where}points: duplicate label '{label}'")
        else:
            point_labels.add(label)
        if pt.get("component") not in comp_labels:
            errors.append(f"{where}points: entry {i} names an unknown component")
        if not _is_coord(pt.get("coord")):
            errors.append(f"{where}points: entry {i} needs a coord scalar")
    glued = set()
    gluings = doc.get("gluings", [])
    if not isinstance(gluings, list):
        errors.append(f"{where}gluings: expected an array of label arrays")
        gluings = []
    for i, cls in enumerate(gluings):
        if not isinstance(cls, list) or len(cls) < 2:
            errors.append(f"{where}gluings: class {i} needs at least two labels")
            continue
        for label in cls:
            if not isinstance(label, str) or label not in point_labels:
                errors.append(f"{where}gluings: class {i} names an unknown point")
                break
        else:
            glued.update(cls)
    deleted = doc.get("deleted", [])
    if not isinstance(deleted, list):
        errors.append(f"{where}deleted: expected an array of point labels")
        deleted = []
    seen = set()
    for label in deleted:
        if not isinstance(label, str) or label not in point_labels:
            errors.append(f"{where}deleted: unknown point label {label!r}")
        elif label in seen:
            errors.append(f"{where}deleted: duplicate label '{label}'")
        elif label in glued:
            errors.append(f"{where}deleted: point '{label}' is also glued")
        else:
            seen.add(label)
    return errors


def _divisor_errors(doc, where=""):
    divisor = doc.get("divisor")
    if not isinstance(divisor, list) or not divisor:
        return [f"{where}divisor: expected a non-empty array"]
    errors = []
    for i, term in enumerate(divisor):
        if not isinstance(term, dict):
            errors.append(f"{where}divisor: entry {i} is not an object")
            continue
        if not isinstance(term.get("component"), str):
            errors.append(f"{where}divisor: entry {i} needs a component label")
        if not _is_coord(term.get("coord")):
            errors.append(f"{where}divisor: entry {i} needs a coord scalar")
        mult = term.get("multiplicity")
        if not isinstance(mult, int) or isinstance(mult, bool):
            errors.append(f"{where}divisor: entry {i} needs an integer multiplicity")
    return errors


def _aj_errors(doc):
    if not isinstance(doc, dict):
        return ["document: expected a JSON object"]
    errors = []
    if not isinstance(doc.get("curve"), dict):
        errors.append("curve: expected a curve configuration object")
    else:
        errors.extend(_curve_errors(doc["curve"], where="curve."))
    errors.extend(_divisor_errors(doc))
    return errors


def _motive_list_errors(doc):
    motives = doc.get("motives")
    if not isinstance(motives, list) or not motives:
        return ["motives: expected a non-empty array"]
    errors = []
    for i, entry in enumerate(motives):
        errors.extend(_motive_errors(entry, where=f"motives[{i}]."))
    return errors


def schema_validate(doc):
    """Structural report for a wire document; shapes only, no numerics.

    The document kind is inferred from its top-level keys: ``components``
    means a curve configuration, ``curve`` an Abel-Jacobi request,
    ``motives`` a motive list, anything else a single 1-motive.
    """
    if not isinstance(doc, dict):
        kind, errors = "unknown", ["document: expected a JSON object"]
    elif "components" in doc:
        kind, errors = "curve_config", _curve_errors(doc)
    elif "curve" in doc:
        kind, errors = "aj_request", _aj_errors(doc)
    elif "motives" in doc:
        kind, errors = "motive_list", _motive_list_errors(doc)
    else:
        kind, errors = "one_motive", _motive_errors(doc)
    return {
        "check": "schema",
        "status": "pass" if not errors else "fail",
        "details": {"kind": kind, "errors": errors},
    }


# ---------------------------------------------------------------------------
# Decoding


def _parse_scalar(v):
    if _is_number(v):
        return complex(v)
    return complex(v[0], v[1])


def _parse_cmatrix(value, shape):
    A = np.zeros(shape, dtype=complex)
    for i, row in enumerate(value):
        for j, entry in enumerate(row):
            A[i, j] = _parse_scalar(entry)
    return A


def _motive_from_doc(doc) -> OneMotive:
    r, t, g = doc["r"], doc["t"], doc["g"]
    omega = _parse_cmatrix(doc["omega"], (g, g))
    eta = _parse_cmatrix(doc["eta"], (t, 2 * g))
    u_lift = _parse_cmatrix(doc["u_lift"], (t + g, r))
    group = SemiAbelianVariety(t, PolarizedAbelianVariety(omega), eta)
    return OneMotive(r, group, u_lift)


# ---------------------------------------------------------------------------
# Verb handlers: document in, (document, exit status) out


def _run_realize(doc, levels):
    M = _motive_from_doc(doc)
    out = {
        "t_hodge": _hodge_doc(t_hodge(M)),
        "t_de_rham": _de_rham_doc(t_de_rham(M)),
        "t_mod_m": [_finite_doc(t_mod_m(M, m)) for m in levels],
    }
    return out, 0


def _run_dualize(doc, levels):
    M = _motive_from_doc(doc)
    out = {
        "dual": _motive_doc(cartier_dual(M)),
        "avatar": _avatar_doc(symmetric_avatar(M)),
        "pairings": [
            {"level": m, "gram": _imatrix(pairing_mod_m(M, m))} for m in levels
        ],
    }
    return out, 0


def _run_check(doc, levels):
    docs = doc["motives"] if "motives" in doc else [doc]
    motives = [_motive_from_doc(d) for d in docs]
    reports = []
    for i, M in enumerate(motives):
        for m in levels:
            report = dict(realization_sequences_check(M, m))
            report["motive"] = i
            reports.append(report)
        report = dict(double_dual_compare(M))
        report["motive"] = i
        reports.append(report)
    for i in range(len(motives) - 1):
        result = iso_test(motives[i], motives[i + 1])
        status = {"verified_iso": "pass", "verified_distinct": "fail"}.get(
            result.status, "unknown"
        )
        reports.append(
            {
                "check": "iso_test",
                "status": status,
                "details": {
                    "pair": [i, i + 1],
                    "iso_status": result.status,
                    "iso_detail": result.detail,
                },
            }
        )
    failed = [rep for rep in reports if rep["status"] != "pass"]
    out = {"status": "pass" if not failed else "fail", "reports": reports}
    return out, 0 if not failed else 2


def _run_curve(doc):
    C = curve_from_config(doc)
    out = {
        "dual_graph": _graph_doc(dual_graph(C)),
        "pic_minus": _motive_doc(pic_minus(C)),
        "pic_plus": _motive_doc(pic_plus(C)),
        "alb_plus": _motive_doc(alb_plus(C)),
        "alb_minus": _motive_doc(alb_minus(C)),
    }
    return out, 0


def _run_aj(doc):
    C = curve_from_config(doc["curve"])
    divisor = [
        (term["component"], term["coord"], term["multiplicity"])
        for term in doc["divisor"]
    ]
    point = abel_jacobi_plus(C, divisor)
    out = {
        "value": [_cpair(v) for v in point.value],
        "torus_rank": point.group.torus_rank,
        "genus": point.group.genus,
        "is_identity": point.is_identity(),
    }
    return out, 0


_EXPECTED_KIND = {
    "realize": ("one_motive",),
    "dualize": ("one_motive",),
    "check": ("one_motive", "motive_list"),
    "curve": ("curve_config",),
    "aj": ("aj_request",),
}


def _validated(verb, doc):
    report = schema_validate(doc)
    kind = report["details"]["kind"]
    if kind not in _EXPECTED_KIND[verb]:
        expected = " or ".join(_EXPECTED_KIND[verb])
        raise CommandError(f"document: expected {expected}, found {kind}")
    if report["status"] != "pass":
        raise CommandError("; ".join(report["details"]["errors"]))
    return doc


def _read_input(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CommandError(f"input: {exc}") from exc


def _write_output(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CommandError(f"output: {exc}") from exc


def run(cmd: Command) -> int:
    """Execute one command; returns the process exit status.

    The tolerance flags are installed into the global settings before any
    mathematics runs, so every downstream check sees them.  The output file
    is only opened once the whole report has serialized (never a partial
    document on disk); errors go to stderr.
    """
    config.settings.eps = cmd.tol
    config.settings.denom_bound = cmd.denom_bound
    config.settings.sigma_n = cmd.sigma_n
    try:
        try:
            doc = json.loads(_read_input(cmd.input_path))
        except json.JSONDecodeError as exc:
            raise CommandError(f"input: invalid JSON: {exc}") from exc
        doc = _validated(cmd.verb, doc)
        try:
            if cmd.verb == "realize":
                out, status = _run_realize(doc, cmd.levels)
            elif cmd.verb == "dualize":
                out, status = _run_dualize(doc, cmd.levels)
            elif cmd.verb == "check":
                out, status = _run_check(doc, cmd.levels)
            elif cmd.verb == "curve":
                out, status = _run_curve(doc)
            else:
                out, status = _run_aj(doc)
        except (ValueError, ArithmeticError) as exc:
            raise CommandError(str(exc)) from exc
        text = json.dumps(out, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        _write_output(cmd.output_path, text)
    except CommandError as exc:
        sys.stderr.write(f"onemotives {cmd.verb}: {exc}\n")
        return 1
    return status


def _parse_levels(text):
    try:
        levels = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise CommandError(f"levels: expected comma-separated integers, got {text!r}")
    if not levels or any(m < 2 for m in levels):
        raise CommandError("levels: every level must be an integer >= 2")
    return levels


def main(argv=None) -> int:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--input", default="-", metavar="PATH",
                        help="input JSON document ('-' = stdin)")
    shared.add_argument("--output", default="-", metavar="PATH",
                        help="output JSON report ('-' = stdout)")
    shared.add_argument("--levels", default="2,3,4", metavar="M,M,...",
                        help="finite levels, comma separated (default 2,3,4)")
    shared.add_argument("--tol", type=float, default=1e-9, metavar="EPS",
                        help="absolute tolerance for numeric checks")
    shared.add_argument("--denom-bound", type=int, default=10**6, metavar="N",
                        help="denominator bound when rationalizing")
    shared.add_argument("--sigma-n", type=int, default=20, metavar="N",
                        help="series truncation order for elliptic evaluation")

    parser = argparse.ArgumentParser(
        prog="onemotives",
        description="1-motives over the complex numbers: realizations, "
        "duality, and curve configurations.",
    )
    subparsers = parser.add_subparsers(dest="verb", required=True)
    summaries = {
        "realize": "Hodge, De Rham, and finite-level realizations of a 1-motive",
        "dualize": "Cartier dual, symmetric avatar, and finite pairing Grams",
        "check": "consistency reports; exit 2 when any report fails",
        "curve": "four Picard/Albanese 1-motives and dual graph of a configuration",
        "aj": "evaluate the Abel-Jacobi map on a degree-zero divisor",
    }
    for verb in _VERBS:
        subparsers.add_parser(verb, parents=[shared], help=summaries[verb])

    args = parser.parse_args(argv)
    try:
        levels = _parse_levels(args.levels)
    except CommandError as exc:
        sys.stderr.write(f"onemotives {args.verb}: {exc}\n")
        return 1
    cmd = Command(
        verb=args.verb,
        input_path=args.input,
        output_path=args.output,
        levels=levels,
        tol=args.tol,
        denom_bound=args.denom_bound,
        sigma_n=args.sigma_n,
    )
    return run(cmd)


if __name__ == "__main__":
    sys.exit(main())
