"""Command-line front end: JSON problems in, JSON results out.

Exit codes: 0 success (empty solution lists included), 1 malformed input,
2 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

import jsonschema
import mpmath

from . import bounds as B
from .bounds import LogBound, OConstants
from .fgdomain import DomainPresentation, is_in_ideal
from .ffheight import ff_search, height as ff_height, valuation_vector
from .forms import BinaryForm, UniPoly, det_sign, discriminant_det, discriminant_resultant
from .ktower import CanonicalRep, RatFunc, Tower
from .mpoly import IntPoly
from .nfheight import AlgNumber, abs_log_height
from .solver import SearchProblem, default_jobs
from .specialize import SpecializationData, SpecPoint, find_admissible_u, specialize_elem

TASKS = {
    "bound": ["thue", "hypersuper", "st", "gyory-yu", "nf", "reduction"],
    "solve": ["thue-z", "power-z", "st-z", "enumerate", "ff-search"],
    "check": ["discriminant", "heights", "specialize", "membership"],
}
INLINE_BOUNDS = ("thue", "hypersuper", "st")
_SAFE_INT = 2 ** 53


class MalformedInput(ValueError):
    pass


def load_schema() -> dict:
    text = resources.files("fgdioph").joinpath("data/problem.schema.json").read_text()
    return json.loads(text)


# -- JSON helpers ------------------------------------------------------------

def jint(v: int):
    """Plain JSON integer when it is safe for double-based readers, else a string."""
    return v if abs(v) < _SAFE_INT else str(v)


def jpoly(p: IntPoly) -> list:
    return p.to_json()


def read_poly(data, nvars: int) -> IntPoly:
    for e, _ in data:
        if len(e) != nvars:
            raise MalformedInput(f"exponent vector {e} does not have {nvars} entries")
    return IntPoly.from_json(data, nvars)


def _num(x):
    """Exact value of a JSON number or decimal string."""
    if isinstance(x, bool):
        raise MalformedInput("booleans are not numbers")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return x
    try:
        return int(x)
    except ValueError:
        return Fraction(x)


def fmt_ln(b: LogBound, digits: int) -> str:
    return b.to_decimal(digits)


def fmt_real(x, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits, min_fixed=1, max_fixed=0)


# -- bounds ------------------------------------------------------------------------

def run_bound(kind: str, p: dict, C: OConstants, digits: int) -> dict:
    v = {k: _num(x) for k, x in p.items() if k not in ("kind", "variant", "values")}
    if kind == "thue":
        b = B.main_bounds("thue", v["n"], v["d"], v["h"], v["r"], C=C)
    elif kind == "hypersuper":
        b = B.main_bounds("hypersuper", v["n"], v["d"], v["h"], v["r"], m=v["m"], C=C)
    elif kind == "st":
        which = "st_" + p.get("variant", "alg")
        b = B.main_bounds(which, v["n"], v["d"], v["h"], v["r"], C=C)
    elif kind == "gyory-yu":
        b = B.s_unit_bound(**{k: v[k] for k in ("n", "s", "d_L", "r_L", "h_L", "R_L", "R_S", "P", "Q", "H1", "H2")})
    elif kind == "nf":
        b = B.nf_bounds(p["kind"], v["n"], v["s"], v["d_L"], v["ln_disc"], lnQ=v.get("lnQ", 0),
                        lnP=v.get("lnP", 0), h_hat=v.get("h_hat", 0), m=v.get("m"))
    elif kind == "reduction":
        vals = {k: _num(x) for k, x in p["values"].items()}
        try:
            b = B.reduction_bounds(p["kind"], C=C, **vals)
        except KeyError as e:
            raise ValueError(f"missing value {e.args[0]!r} for reduction bound {p['kind']}") from None
        if isinstance(b, int):
            return {"ln_bound": fmt_ln(LogBound.from_value(max(b, 1)), digits), "value": str(b),
                    "parameters_echo": p}
    else:
        raise MalformedInput(f"unknown bound {kind!r}")
    out = {"ln_bound": fmt_ln(b, digits), "parameters_echo": p}
    if kind in ("thue", "hypersuper", "st", "reduction"):
        out["constants"] = {"c_expr": C.c_expr, "c_rlogr": C.c_rlogr}
    return out


# -- solvers -------------------------------------------------------------------

def run_solve(kind: str, p: dict, jobs: int) -> dict:
    caps = {}
    if kind in ("thue-z", "power-z", "st-z"):
        coeffs = [int(c) for c in p["coeffs"]]
        data = {"coeffs": coeffs, "delta": int(p["delta"])}
        caps = {"box": p["box"]}
        if kind == "power-z":
            data["m"] = p["m"]
        if kind == "st-z":
            caps["m_cap"] = p["m_cap"]
        prob = SearchProblem(kind.replace("-", "_"), data, caps)
        sols = [[jint(v) for v in s] for s in prob.solve(jobs)]
    elif kind == "enumerate":
        r = p["r"]
        D = DomainPresentation(r, tuple(read_poly(g, r) for g in p["generators"]))
        data = {"domain": D, "coeffs": [read_poly(c, r) for c in p["coeffs"]], "delta": read_poly(p["delta"], r)}
        caps = {"max_deg": p["max_deg"], "max_h": p["max_h"]}
        prob = SearchProblem("enumerate_fg", data, {"max_deg": p["max_deg"], "max_h": float(_num(p["max_h"]))})
        sols = [[jpoly(x), jpoly(y)] for x, y in prob.solve(jobs)]
    elif kind == "ff-search":
        coeffs = [read_poly(c, 1) for c in p["coeffs"]]
        delta = read_poly(p["delta"], 1)
        caps = {"max_deg": p["max_deg"], "max_coeff": p["max_coeff"]}
        F = BinaryForm(tuple(coeffs)) if p["kind"] == "thue" else UniPoly(tuple(coeffs))
        found = ff_search(p["kind"], F, delta, m=p.get("m"), max_deg=p["max_deg"],
                          max_coeff=p["max_coeff"], jobs=jobs)
        sols = [[jpoly(x), jpoly(y)] for x, y in found]
    else:
        raise MalformedInput(f"unknown solver {kind!r}")
    return {"solutions": sols, "complete_relative_to_caps": True, "caps_echo": caps}


# -- checks -----------------------------------------------------------------------

def _check_discriminant(p: dict) -> dict:
    raw = p["coeffs"]
    if all(not isinstance(c, list) for c in raw):
        coeffs = [int(c) for c in raw]
        show = str
    else:
        nv = p.get("nvars")
        if nv is None:
            nv = next((len(c[0][0]) for c in raw if isinstance(c, list) and c), None)
        if nv is None:
            raise MalformedInput("cannot infer the number of variables; give nvars")
        coeffs = [read_poly(c, nv) if isinstance(c, list) else IntPoly.const(int(c), nv) for c in raw]
        show = jpoly
    F = BinaryForm(tuple(coeffs))
    if F.n < 2:
        raise ValueError("discriminant needs degree >= 2")
    det = discriminant_det(F)
    oracle = discriminant_resultant(F)
    sign = det_sign(F.n)
    return {"passed": det == sign * oracle,
            "details": {"det": show(det), "oracle": show(oracle), "sign": sign, "n": F.n}}


def _check_heights(p: dict, digits: int) -> dict:
    rows = []
    passed = True
    for item in p["items"]:
        if p["field"] == "number":
            if "minpoly" not in item:
                raise MalformedInput("number-field items need a minpoly")
            a = AlgNumber(IntPoly.from_univariate([int(c) for c in item["minpoly"]]), item.get("index", 0))
            h = abs_log_height(a, digits=max(digits, 12))
            row = {"height": fmt_real(h, digits)}
            if "expected" in item:
                exp = float(_num(item["expected"]))
                ok = abs(h - exp) <= 1e-9 * max(1.0, abs(exp))
                row["expected"] = item["expected"]
                row["ok"] = ok
                passed &= ok
        else:
            if "num" not in item:
                raise MalformedInput("function-field items need num (and optionally den)")
            num = IntPoly.from_univariate([int(c) for c in item["num"]])
            den = IntPoly.from_univariate([int(c) for c in item.get("den", [1])])
            if den.is_zero():
                raise ValueError("denominator is zero")
            a = RatFunc(num, den)
            if a.is_zero():
                raise ValueError("zero has no valuation vector")
            prof = valuation_vector(a)
            h = ff_height(a)
            s = prof.weighted_sum()
            ok = s == 0
            if "expected" in item:
                ok &= h == _num(item["expected"])
                row = {"expected": item["expected"]}
            else:
                row = {}
            row.update({"height": h, "valuation_sum": s, "ok": ok,
                        "valuations": [[str(v), k] for v, k in prof.entries]})
            passed &= ok
        rows.append(row)
    return {"passed": bool(passed), "details": {"items": rows}}


def _check_specialize(p: dict) -> dict:
    q = p["q"]
    tower = Tower(q, tuple(read_poly(c, q) for c in p["tower"]))
    S = SpecializationData(tower, read_poly(p["f"], q))
    if "u" in p:
        u = tuple(p["u"])
    else:
        u = find_admissible_u(S, p.get("N", S.n_floor()), enforce_floor=False)
    elems = [CanonicalRep(tuple(read_poly(x, q) for x in e["P"]), read_poly(e["Q"], q)) for e in p["elements"]]
    for c in elems:
        if len(c.P) != tower.D:
            raise MalformedInput(f"an element of the tower needs {tower.D} coordinates")
    passed = True
    per_j = []
    for j in range(1, tower.D + 1):
        pt = SpecPoint(S, u, j)
        imgs = [specialize_elem(S, pt, c) for c in elems]
        tel = [c.to_elem(tower) for c in elems]
        hom = []
        for i in range(len(elems)):
            for k in range(i, len(elems)):
                s_ok = specialize_elem(S, pt, tel[i] + tel[k]) == imgs[i] + imgs[k]
                m_ok = specialize_elem(S, pt, tel[i] * tel[k]) == imgs[i] * imgs[k]
                hom.append([i, k, s_ok, m_ok])
                passed &= s_ok and m_ok
        per_j.append({"j": j, "field": jpoly(pt.factor),
                      "images": [[str(x) for x in im.coords] for im in imgs], "homomorphism": hom})
    return {"passed": bool(passed), "details": {"u": list(u), "points": per_j}}


def _check_membership(p: dict) -> dict:
    r = p["r"]
    D = DomainPresentation(r, tuple(read_poly(g, r) for g in p["generators"]))
    res = [is_in_ideal(D, read_poly(f, r)) for f in p["polys"]]
    if "expect" in p:
        if len(p["expect"]) != len(res):
            raise MalformedInput("expect must have one entry per polynomial")
        passed = res == p["expect"]
    else:
        passed = all(res)
    return {"passed": passed, "details": {"in_ideal": res}}


def run_check(kind: str, p: dict, digits: int) -> dict:
    if kind == "discriminant":
        return _check_discriminant(p)
    if kind == "heights":
        return _check_heights(p, digits)
    if kind == "specialize":
        return _check_specialize(p)
    if kind == "membership":
        return _check_membership(p)
    raise MalformedInput(f"unknown check {kind!r}")


# -- argument handling ------------------------------------------------------------

def parse_constants(text: str | None, base: dict | None = None) -> OConstants:
    vals = dict(base or {})
    if text:
        for part in text.split(","):
            key, sep, val = part.partition("=")
            key = key.strip()
            if not sep or key not in ("c_expr", "c_rlogr"):
                raise MalformedInput(f"bad constants entry {part!r}")
            try:
                vals[key] = float(val)
            except ValueError:
                raise MalformedInput(f"bad constants value {val!r}") from None
    try:
        return OConstants(**vals)
    except ValueError as e:
        raise MalformedInput(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", help="problem file (JSON)")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: logical cores)")
    common.add_argument("--constants", help="c_expr=...,c_rlogr=...")
    common.add_argument("--precision", type=int, default=17, help="significant digits in decimal output")

    ap = argparse.ArgumentParser(prog="fgdioph", description="Effective Diophantine tools over finitely generated domains")
    sub = ap.add_subparsers(dest="command", required=True)
    bp = sub.add_parser("bound", parents=[common], help="evaluate a bound")
    bp.add_argument("kind", choices=TASKS["bound"])
    for name in ("n", "d", "r", "m"):
        bp.add_argument(f"--{name}", type=int)
    bp.add_argument("--h", type=str)
    bp.add_argument("--variant", choices=["alg", "transc"])
    sp = sub.add_parser("solve", parents=[common], help="run a capped search")
    sp.add_argument("kind", choices=TASKS["solve"])
    cp = sub.add_parser("check", parents=[common], help="run a consistency check")
    cp.add_argument("kind", choices=TASKS["check"])
    return ap


def _problem_from_args(args) -> dict:
    task = f"{args.command}.{args.kind}"
    if args.file:
        try:
            with open(args.file) as fh:
                prob = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise MalformedInput(f"cannot read problem file: {e}") from None
        if not isinstance(prob, dict) or prob.get("task") != task:
            raise MalformedInput(f"problem file task does not match {task!r}")
        return prob
    if args.command != "bound" or args.kind not in INLINE_BOUNDS:
        raise MalformedInput(f"{task} needs --file")
    params = {}
    for name in ("n", "d", "h", "r", "m", "variant"):
        val = getattr(args, name)
        if val is not None:
            params[name] = _num(val) if name == "h" else val
    return {"schema_version": 1, "task": task, "parameters": params}


def dispatch(prob: dict, args) -> dict:
    try:
        jsonschema.validate(prob, load_schema())
    except jsonschema.ValidationError as e:
        raise MalformedInput(f"schema: {e.message}") from None
    C = parse_constants(args.constants, prob.get("constants"))
    jobs = args.jobs if args.jobs is not None else default_jobs()
    if jobs < 1:
        raise MalformedInput("--jobs must be at least 1")
    if args.precision < 1:
        raise MalformedInput("--precision must be at least 1")
    group, kind = prob["task"].split(".", 1)
    p = prob["parameters"]
    if group == "bound":
        return run_bound(kind, p, C, args.precision)
    if group == "solve":
        return run_solve(kind, p, jobs)
    return run_check(kind, p, args.precision)


def emit(obj, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    try:
        prob = _problem_from_args(args)
        result = dispatch(prob, args)
    except MalformedInput as e:
        emit({"error": str(e), "exit_code": 1})
        return 1
    except (ValueError, ZeroDivisionError, ArithmeticError) as e:
        emit({"error": str(e), "exit_code": 2})
        return 2
    emit(result)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
