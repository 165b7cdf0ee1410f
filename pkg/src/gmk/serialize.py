"""JSON encoding of scalars and domain objects.

Rationals travel as decimal strings ("3", "-7/4"); everything else is a
tagged object with a "type" field.  ``load(dump(x)) == x`` for every
supported value.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .cyclotomic import CycloScalar
from .iteration import GradedNearly, UnivExponent
from .iwasawa import IwasawaSeries
from .nearly import FormWeight, NearlyForm
from .padic import PadicScalar
from .qexp import QExpansion
from .triple import DeltaKernelSpec, TripleEigenData, TripleWeights
from .unramified import UnramifiedRing, UnramifiedScalar
from .weights import VectorChar, WeightChar


class SchemaError(ValueError):
    """A JSON value does not match the expected shape."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


# -- scalars ------------------------------------------------------------------


def _num(x):
    """Certificate numbers: ints stay ints, infinities become strings."""
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return int(x)


def _unnum(x):
    if x == "inf":
        return math.inf
    if x == "-inf":
        return -math.inf
    if isinstance(x, str):
        return Fraction(x)
    return x


def _exact_zero(c) -> bool:
    if isinstance(c, PadicScalar):
        return c.is_exact_zero()
    return isinstance(c, (int, Fraction)) and c == 0


def dump_scalar(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, PadicScalar):
        return {"type": "padic", **x.to_json()}
    if isinstance(x, CycloScalar):
        return {"type": "cyclo", "p": x.p, "n": x.n, "coeffs": [dump_scalar(c) for c in x.coeffs]}
    if isinstance(x, UnramifiedScalar):
        R = x.ring
        return {"type": "unramified", "p": R.p, "f": R.f, "c1": R.c1, "c0": R.c0, "prec": R.prec,
                "coeffs": [dump_scalar(c) for c in x.coeffs]}
    if isinstance(x, IwasawaSeries):
        return {"type": "iwasawa", "p": x.p, "n": x.n, "trunc": x.trunc,
                "coeffs": [{"deg": d, "c": dump_scalar(c)} for d, c in enumerate(x.coeffs) if not _exact_zero(c)],
                "pieces": [[_num(v) for v in piece] for piece in x.pieces],
                "floors": [_num(v) for v in x.floors()]}
    raise TypeError(f"cannot serialise scalar of type {type(x).__name__}")


def load_scalar(d, where: str = "$"):
    if isinstance(d, str):
        try:
            x = Fraction(d)
        except ValueError as exc:
            raise SchemaError(where, f"bad rational {d!r}") from exc
        return int(x) if x.denominator == 1 else x
    if isinstance(d, int) and not isinstance(d, bool):
        return d
    if not isinstance(d, dict) or "type" not in d:
        raise SchemaError(where, "expected a rational string or a tagged scalar")
    try:
        kind = d["type"]
        if kind == "padic":
            return PadicScalar.from_json(d)
        if kind == "cyclo":
            return CycloScalar(d["p"], d["n"], [load_scalar(c, f"{where}.coeffs[{i}]")
                                                for i, c in enumerate(d["coeffs"])])
        if kind == "unramified":
            R = UnramifiedRing(d["p"], d["f"], d["c1"] or 0, d["c0"], d["prec"])
            return R.element([load_scalar(c, f"{where}.coeffs[{i}]") for i, c in enumerate(d["coeffs"])])
        if kind == "iwasawa":
            return _load_iwasawa(d, where)
    except KeyError as exc:
        raise SchemaError(where, f"missing field {exc.args[0]!r}") from exc
    raise SchemaError(where, f"unknown scalar type {kind!r}")


def _load_iwasawa(d, where):
    raw = d["coeffs"]
    if raw and isinstance(raw[0], dict):
        trunc = d.get("trunc", max(e["deg"] for e in raw))
        coeffs = [0] * (trunc + 1)
        for i, e in enumerate(raw):
            if not 0 <= e["deg"] <= trunc:
                raise SchemaError(f"{where}.coeffs[{i}]", f"degree {e['deg']} outside 0..{trunc}")
            coeffs[e["deg"]] = load_scalar(e["c"], f"{where}.coeffs[{i}]")
    else:
        coeffs = [load_scalar(c, f"{where}.coeffs[{i}]") for i, c in enumerate(raw)]
        if "trunc" in d:
            coeffs += [0] * (d["trunc"] + 1 - len(coeffs))
    return IwasawaSeries(d["p"], d["n"], coeffs, [tuple(_unnum(v) for v in piece) for piece in d["pieces"]])


# -- domain objects -------------------------------------------------------------


def _dump_weight(w: FormWeight) -> dict:
    if w.is_classical:
        return {"kind": "classical", "p": w.p, "k": w.k}
    return {"kind": "universal", "p": w.p, "n": w.n, "trunc": w.trunc, "shift": w.shift}


def _load_weight(d: dict) -> FormWeight:
    if "k" in d:
        return FormWeight.classical(d["p"], d["k"])
    return FormWeight.universal(d["p"], d["n"], d["trunc"], d.get("shift", 0))


def dump(obj):
    """Any supported value to a JSON-ready structure."""
    if isinstance(obj, QExpansion):
        return {"type": "qexp", "p": obj.p, "N": obj.N,
                "terms": [[nu, dump_scalar(c)] for nu, c in obj.terms.items()]}
    if isinstance(obj, NearlyForm):
        return {"type": "nearly", "weight": _dump_weight(obj.weight), "basis": obj.basis, "n": obj.n,
                "grid": [{"m": m, "nu": nu, "c": dump_scalar(c)} for (m, nu), c in obj.grid.items()]}
    if isinstance(obj, GradedNearly):
        return {"type": "graded", "base": _dump_weight(obj.base), "basis": obj.basis, "n": obj.n,
                "parts": [[j, dump(F)] for j, F in obj.parts.items()]}
    if isinstance(obj, UnivExponent):
        return {"type": "univ_exponent", "p": obj.p, "n": obj.n, "a": obj.a, "trunc": obj.trunc, "prec": obj.prec}
    if isinstance(obj, TripleWeights):
        return {"type": "triple_weights", "k": [obj.k1, obj.k2, obj.k3], "nu": [obj.nu1, obj.nu2, obj.nu3]}
    if isinstance(obj, TripleEigenData):
        out = {"type": "eigen", "p": obj.p, "k_tau": [list(ks) for ks in obj.k_tau]}
        for name in ("alpha_x", "beta_x", "alpha_y", "beta_y", "alpha_z", "beta_z"):
            out[name] = dump_scalar(getattr(obj, name))
        return out
    if isinstance(obj, WeightChar):
        return {"type": "weight_char", "kind": obj.kind, "p": obj.p, "k": obj.k, "n": obj.n, "e": obj.e,
                "finite": [dump_scalar(v) for v in obj.finite]}
    if isinstance(obj, VectorChar):
        return {"type": "vector_char", "exps": list(obj.exps)}
    if isinstance(obj, DeltaKernelSpec):
        return {"type": "delta_spec", "r": [list(r.exps) for r in obj.r], "nu": list(obj.nu)}
    return dump_scalar(obj)


def load(d, where: str = "$"):
    if not isinstance(d, dict) or d.get("type") not in _LOADERS:
        return load_scalar(d, where)
    try:
        return _LOADERS[d["type"]](d, where)
    except KeyError as exc:
        raise SchemaError(where, f"missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(where, str(exc)) from exc


def _load_qexp(d, where):
    return QExpansion(d["p"], d["N"], {nu: load_scalar(c, f"{where}.terms[{i}]")
                                       for i, (nu, c) in enumerate(d["terms"])})


def _load_nearly(d, where):
    if "grid" in d:
        grid = {(e["m"], e["nu"]): load_scalar(e["c"], f"{where}.grid[{i}]") for i, e in enumerate(d["grid"])}
    else:
        grid = {(m, nu): load_scalar(c, f"{where}.terms[{i}]") for i, (m, nu, c) in enumerate(d["terms"])}
    return NearlyForm(_load_weight(d["weight"]), grid, d.get("basis", "W"), d.get("n", 1))


def _load_graded(d, where):
    return GradedNearly(_load_weight(d["base"]),
                        {j: load(F, f"{where}.parts[{i}]") for i, (j, F) in enumerate(d["parts"])},
                        d.get("basis", "W"), d.get("n", 1))


def _load_eigen(d, where):
    vals = {name: load_scalar(d[name], f"{where}.{name}")
            for name in ("alpha_x", "beta_x", "alpha_y", "beta_y", "alpha_z", "beta_z")}
    return TripleEigenData(d["p"], k_tau=tuple(tuple(ks) for ks in d["k_tau"]), **vals)


_LOADERS = {
    "qexp": _load_qexp,
    "nearly": _load_nearly,
    "graded": _load_graded,
    "univ_exponent": lambda d, w: UnivExponent(d["p"], d["n"], d["a"], d["trunc"], d["prec"]),
    "triple_weights": lambda d, w: TripleWeights(*d["k"], *d.get("nu", [0, 0, None])),
    "eigen": _load_eigen,
    "weight_char": lambda d, w: WeightChar(d["p"], d["kind"], d.get("k", 0), d.get("n", 1), d.get("e", 0),
                                           tuple(load_scalar(v, f"{w}.finite") for v in d.get("finite", []))),
    "vector_char": lambda d, w: VectorChar(tuple(d["exps"])),
    "delta_spec": lambda d, w: DeltaKernelSpec(tuple(VectorChar(tuple(e)) for e in d["r"]), tuple(d["nu"])),
}


def dumps(obj, **kw) -> str:
    return json.dumps(dump(obj), sort_keys=True, **kw)


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc
    return load(data)
