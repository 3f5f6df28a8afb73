"""YAML problem files.

Schema (unknown keys are rejected everywhere)::

    kind: analog | discrete
    coeffs: [a0, ..., a_{n-1}]        # monic: y^(n) + a_{n-1} y^(n-1) + ...
    initial: [y0, ..., y_{n-1}]
    input:                            # optional, default zero input
      - {amp: 1, root_re: 0, root_im: 0, poly_degree: 0}   # raw atom
      - const: 1
      - poly: [c0, c1]                # c0 + c1 t  (or k)
      - cos: {amp: 1, freq: 2, phase: 0, decay: 0, poly_degree: 0}
      - sin: {amp: 1, freq: 2}
    roots:                            # optional override of root finding
      - {re: 0.5, im: 0, multiplicity: 3}
    cluster_tol: 1.0e-6               # optional
    sample: {start: 0, stop: 5, count: 51}

``amp`` is a number or ``[re, im]``. Discrete trig atoms take ``ratio`` (the
modulus R of ``R^k``) instead of ``decay``. Raw atoms mean
``amp * t^m * exp(root t)`` (analog) or ``amp * k^m * root^k`` (discrete).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import yaml

from .errors import ExpoconvError, ProblemFileError
from .lti import InputAtom, IvpProblem
from .roots import CLUSTER_TOL
from .vandermonde import RootMultiset

TOP_KEYS = {"kind", "coeffs", "initial", "input", "roots", "cluster_tol", "sample"}
RAW_KEYS = {"amp", "root_re", "root_im", "poly_degree"}
TRIG_KEYS = {"amp", "freq", "phase", "poly_degree"}


@dataclass(frozen=True)
class Sample:
    start: float
    stop: float
    count: int


@dataclass(frozen=True)
class ProblemFile:
    problem: IvpProblem
    sample: Optional[Sample] = None


def _fail(msg):
    raise ProblemFileError(msg)


def _check_keys(d, allowed, where):
    if not isinstance(d, dict):
        _fail(f"{where}: expected a mapping, got {type(d).__name__}")
    extra = set(d) - allowed
    if extra:
        _fail(f"{where}: unknown key(s) {sorted(extra)}")


def _number(v, where) -> float:
    if isinstance(v, str):
        # PyYAML reads exponent floats without a dot (1e-6) as strings
        try:
            v = float(v)
        except ValueError:
            pass
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        _fail(f"{where}: expected a number, got {v!r}")
    if not math.isfinite(v):
        _fail(f"{where}: non-finite value")
    return float(v)


def _amp(v, where) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            _fail(f"{where}: complex amplitude must be [re, im]")
        return complex(_number(v[0], where), _number(v[1], where))
    return complex(_number(v, where), 0.0)


def _int(v, where) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        _fail(f"{where}: expected a nonnegative integer, got {v!r}")
    return v


def _snap(z: complex) -> complex:
    # exp(i*pi/2) should be exactly 1j, not 6e-17+1j
    ref = abs(z)
    re = 0.0 if abs(z.real) <= 1e-15 * ref else z.real
    im = 0.0 if abs(z.imag) <= 1e-15 * ref else z.imag
    return complex(re, im)


def _trig(kind, body, which, where):
    radial = "decay" if kind == "analog" else "ratio"
    _check_keys(body, TRIG_KEYS | {radial}, where)
    amp = _amp(body.get("amp", 1.0), f"{where}.amp")
    w = _number(body.get("freq", 0.0), f"{where}.freq")
    phase = _number(body.get("phase", 0.0), f"{where}.phase")
    deg = _int(body.get("poly_degree", 0), f"{where}.poly_degree")
    if kind == "analog":
        base = _number(body.get("decay", 0.0), f"{where}.decay")
        up, down = complex(base, w), complex(base, -w)
        degenerate = w == 0
    else:
        base = _number(body.get("ratio", 1.0), f"{where}.ratio")
        if base <= 0:
            _fail(f"{where}.ratio must be positive")
        up, down = _snap(base * cmath.exp(1j * w)), _snap(base * cmath.exp(-1j * w))
        degenerate = up == down
    if degenerate:
        c = math.cos(phase) if which == "cos" else math.sin(phase)
        return [InputAtom(amp * c, up, deg)]
    e = cmath.exp(1j * phase)
    if which == "cos":
        a_up, a_down = amp * e / 2, amp * e.conjugate() / 2
    else:
        a_up, a_down = amp * e / 2j, -amp * e.conjugate() / 2j
    return [InputAtom(a_up, up, deg), InputAtom(a_down, down, deg)]


def _input_atoms(kind, items) -> tuple:
    if items is None:
        return ()
    if not isinstance(items, list):
        _fail("input: expected a list of atoms")
    unit = 0.0 if kind == "analog" else 1.0
    out = []
    for i, item in enumerate(items):
        where = f"input[{i}]"
        if not isinstance(item, dict):
            _fail(f"{where}: expected a mapping")
        sugar = set(item) & {"const", "poly", "cos", "sin"}
        if sugar:
            if len(item) != 1:
                _fail(f"{where}: sugar key {sorted(sugar)[0]!r} must stand alone")
            key = next(iter(sugar))
            body = item[key]
            if key == "const":
                out.append(InputAtom(_amp(body, where), unit, 0))
            elif key == "poly":
                if not isinstance(body, list):
                    _fail(f"{where}.poly: expected a list of coefficients")
                for m, c in enumerate(body):
                    a = _amp(c, f"{where}.poly[{m}]")
                    if a != 0:
                        out.append(InputAtom(a, unit, m))
            else:
                out.extend(_trig(kind, body, key, f"{where}.{key}"))
            continue
        _check_keys(item, RAW_KEYS, where)
        if "amp" not in item:
            _fail(f"{where}: raw atom needs 'amp'")
        root = complex(_number(item.get("root_re", 0.0), f"{where}.root_re"),
                       _number(item.get("root_im", 0.0), f"{where}.root_im"))
        out.append(InputAtom(_amp(item["amp"], where), root,
                             _int(item.get("poly_degree", 0), f"{where}.poly_degree")))
    return tuple(out)


def _roots(items) -> Optional[RootMultiset]:
    if items is None:
        return None
    if not isinstance(items, list) or not items:
        _fail("roots: expected a nonempty list")
    pairs = []
    for i, item in enumerate(items):
        where = f"roots[{i}]"
        _check_keys(item, {"re", "im", "multiplicity"}, where)
        r = complex(_number(item.get("re", 0.0), f"{where}.re"),
                    _number(item.get("im", 0.0), f"{where}.im"))
        m = _int(item.get("multiplicity", 1), f"{where}.multiplicity")
        if m < 1:
            _fail(f"{where}.multiplicity must be >= 1")
        pairs.append((r, m))
    try:
        return RootMultiset(tuple(pairs))
    except (ExpoconvError, ValueError) as exc:
        _fail(f"roots: {exc}")


def _sample(d) -> Optional[Sample]:
    if d is None:
        return None
    _check_keys(d, {"start", "stop", "count"}, "sample")
    try:
        s = Sample(_number(d["start"], "sample.start"), _number(d["stop"], "sample.stop"),
                   _int(d["count"], "sample.count"))
    except KeyError as exc:
        _fail(f"sample: missing {exc}")
    if s.count < 1 or s.stop < s.start:
        _fail("sample: need count >= 1 and stop >= start")
    return s


def from_dict(d) -> ProblemFile:
    _check_keys(d, TOP_KEYS, "problem")
    for key in ("kind", "coeffs", "initial"):
        if key not in d:
            _fail(f"problem: missing required key {key!r}")
    kind = d["kind"]
    if kind not in ("analog", "discrete"):
        _fail(f"kind: expected 'analog' or 'discrete', got {kind!r}")
    for key in ("coeffs", "initial"):
        if not isinstance(d[key], list):
            _fail(f"{key}: expected a list")
    coeffs = tuple(_number(v, f"coeffs[{i}]") for i, v in enumerate(d["coeffs"]))
    initial = tuple(_number(v, f"initial[{i}]") for i, v in enumerate(d["initial"]))
    tol = _number(d.get("cluster_tol", CLUSTER_TOL), "cluster_tol")
    try:
        prob = IvpProblem(kind, coeffs, initial, _input_atoms(kind, d.get("input")),
                          _roots(d.get("roots")), tol)
    except ProblemFileError:
        raise
    except (ExpoconvError, ValueError) as exc:
        _fail(str(exc))
    return ProblemFile(prob, _sample(d.get("sample")))


def loads(text: str) -> ProblemFile:
    try:
        d = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ProblemFileError(f"not valid YAML: {exc}") from exc
    return from_dict(d)


def load(path) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def _amp_out(z: complex):
    return z.real if z.imag == 0 else [z.real, z.imag]


def to_dict(pf: ProblemFile) -> dict:
    """Normalized form: sugar expanded into raw atoms."""
    p = pf.problem
    d = {
        "kind": p.kind,
        "coeffs": list(p.coeffs),
        "initial": list(p.initial),
        "input": [
            {"amp": _amp_out(a.amp), "root_re": a.root.real, "root_im": a.root.imag,
             "poly_degree": a.degree}
            for a in p.input
        ],
    }
    if p.roots is not None:
        d["roots"] = [{"re": r.real, "im": r.imag, "multiplicity": m} for r, m in p.roots.clusters]
    if p.cluster_tol != CLUSTER_TOL:
        d["cluster_tol"] = p.cluster_tol
    if pf.sample is not None:
        d["sample"] = {"start": pf.sample.start, "stop": pf.sample.stop, "count": pf.sample.count}
    return d


def dumps(pf: ProblemFile) -> str:
    return yaml.safe_dump(to_dict(pf), sort_keys=False)
