"""Deterministic text rendering of closed-form signals."""
from __future__ import annotations

import math

from .errors import NotConjugateClosed
from .signals import AnalogSignal, DiscreteSignal, power_form, realify

#: Components below this fraction of the local scale print as zero.
CLEAN_TOL = 1e-12


def fmt_real(x: float) -> str:
    s = format(float(x), ".12g")
    return "0" if s in ("-0", "0") else s


def _clean(z: complex, scale: float = 0.0) -> complex:
    z = complex(z)
    ref = max(abs(z), scale)
    re = 0.0 if abs(z.real) <= CLEAN_TOL * ref else z.real
    im = 0.0 if abs(z.imag) <= CLEAN_TOL * ref else z.imag
    return complex(re, im)


def fmt_complex(z: complex, scale: float = 0.0) -> str:
    """Real numbers plainly, complex ones as ``(a+bj)``."""
    z = _clean(z, scale)
    if z.imag == 0:
        return fmt_real(z.real)
    if z.real == 0:
        return f"({fmt_real(z.imag)}j)"
    sign = "+" if z.imag >= 0 else "-"
    return f"({fmt_real(z.real)}{sign}{fmt_real(abs(z.imag))}j)"


def _power(var: str, m: int) -> str:
    return "" if m == 0 else (var if m == 1 else f"{var}^{m}")


def fmt_poly(coeffs, var: str, complex_ok: bool = True, scale: float = 0.0) -> tuple:
    """Render ``sum c_m var^m``; returns ``(text, n_monomials)``.

    Coefficients below ``CLEAN_TOL`` times the larger of ``scale`` and the
    biggest coefficient are treated as rounding noise and omitted.
    """
    scale = max([scale] + [abs(c) for c in coeffs])
    parts = []
    for m, c in enumerate(coeffs):
        c = _clean(c, scale)
        if abs(c) <= CLEAN_TOL * scale:
            continue
        num = fmt_complex(c) if complex_ok else fmt_real(c.real)
        pw = _power(var, m)
        parts.append(num if not pw else f"{num}*{pw}")
    if not parts:
        return "0", 0
    return _join(parts), len(parts)


def _join(parts) -> str:
    """``a + b`` with ``a + -b`` written as ``a - b``."""
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _times(poly_text: str, count: int, factor: str) -> str:
    if not factor:
        return poly_text
    if count > 1:
        poly_text = f"({poly_text})"
    return f"{poly_text}*{factor}"


def _root_key(r):
    return (round(r.real, 12), round(r.imag, 12))


# ---------------------------------------------------------------- analog


def analog_complex(s: AnalogSignal) -> str:
    parts = []
    for t in sorted(s.terms, key=lambda t: _root_key(t.root)):
        text, cnt = fmt_poly(t.poly.coeffs, "t")
        if cnt == 0:
            continue
        r = _clean(t.root)
        factor = "" if r == 0 else f"exp({fmt_complex(r)}*t)"
        parts.append(_times(text, cnt, factor))
    if s.impulse_weight != 0:
        parts.append(f"{fmt_complex(s.impulse_weight)}*delta(t)")
    return _join(parts) if parts else "0"


def _trig_pair(cos_text, cos_n, sin_text, sin_n, arg):
    out = []
    if cos_n:
        out.append(_times(cos_text, cos_n, f"cos({arg})"))
    if sin_n:
        out.append(_times(sin_text, sin_n, f"sin({arg})"))
    return out


def analog_real(s: AnalogSignal) -> str:
    rf = realify(s)
    parts = []
    for e in rf.entries:
        decay = 0.0 if abs(e.decay) <= CLEAN_TOL * max(1.0, abs(e.freq)) else e.decay
        exp_f = "" if decay == 0 else f"exp({fmt_real(decay)}*t)"
        sc = max((abs(c) for c in e.cos_poly + e.sin_poly), default=0.0)
        ct, cn = fmt_poly(e.cos_poly, "t", complex_ok=False, scale=sc)
        st, sn = fmt_poly(e.sin_poly, "t", complex_ok=False, scale=sc)
        if e.freq == 0:
            if cn:
                parts.append(_times(ct, cn, exp_f))
            continue
        trig = _trig_pair(ct, cn, st, sn, f"{fmt_real(e.freq)}*t")
        if not trig:
            continue
        inner = _join(trig)
        if exp_f:
            inner = f"{exp_f}*({inner})" if len(trig) > 1 else f"{exp_f}*{inner}"
        parts.append(inner)
    if rf.impulse_weight != 0:
        parts.append(f"{fmt_real(rf.impulse_weight)}*delta(t)")
    return _join(parts) if parts else "0"


# ---------------------------------------------------------------- discrete


def _base(r) -> str:
    txt = fmt_complex(r)
    return txt if not txt.startswith("-") else f"({txt})"


def discrete_complex(s: DiscreteSignal):
    """``(formula, start, impulses)`` of the power form in complex exponentials."""
    pf = power_form(s)
    parts = []
    for r, q in sorted(pf.modes, key=lambda m: _root_key(m[0])):
        text, cnt = fmt_poly(q.coeffs, "k")
        if cnt == 0:
            continue
        r = _clean(r)
        factor = "" if r == 1 else f"{_base(r)}^k"
        parts.append(_times(text, cnt, factor))
    return (_join(parts) if parts else "0"), pf.start, pf.impulses


def discrete_real(s: DiscreteSignal):
    rf = realify(s)
    parts = []
    for e in rf.entries:
        mod_f = "" if e.decay == 1 else f"{fmt_real(e.decay)}^k"
        sc = max((abs(c) for c in e.cos_poly + e.sin_poly), default=0.0)
        ct, cn = fmt_poly(e.cos_poly, "k", complex_ok=False, scale=sc)
        st, sn = fmt_poly(e.sin_poly, "k", complex_ok=False, scale=sc)
        if e.freq == 0:
            if cn:
                parts.append(_times(ct, cn, mod_f))
            continue
        if e.freq == math.pi:
            # (-R)^k: a real negative root
            if cn:
                base = "(-1)^k" if e.decay == 1 else f"(-{fmt_real(e.decay)})^k"
                parts.append(_times(ct, cn, base))
            continue
        trig = _trig_pair(ct, cn, st, sn, f"{fmt_real(e.freq)}*k")
        if not trig:
            continue
        inner = _join(trig)
        if mod_f:
            inner = f"{mod_f}*({inner})" if len(trig) > 1 else f"{mod_f}*{inner}"
        parts.append(inner)
    return (_join(parts) if parts else "0"), rf.start, rf.impulses


# ---------------------------------------------------------------- blocks


def render(name: str, s, real: bool = True, complex_: bool = True) -> list:
    """Lines describing one signal, e.g. ``complex: y(t) = ...``."""
    lines = []
    if isinstance(s, AnalogSignal):
        lhs = f"{name}(t)"
        if complex_:
            lines.append(f"complex: {lhs} = {analog_complex(s)}")
        if real:
            try:
                lines.append(f"real: {lhs} = {analog_real(s)}")
            except NotConjugateClosed as exc:
                lines.append(f"real: unavailable ({exc})")
        return lines
    lhs = f"{name}(k)"
    text, start, imps = discrete_complex(s)
    if complex_:
        lines.append(f"complex: {lhs} = {text}, k >= {start}")
    if real:
        try:
            rtext, rstart, _ = discrete_real(s)
            lines.append(f"real: {lhs} = {rtext}, k >= {rstart}")
        except NotConjugateClosed as exc:
            lines.append(f"real: unavailable ({exc})")
    for d, w in imps:
        w = _clean(w)
        lines.append(f"impulse: {fmt_complex(w)} @ k={d}")
    return lines


def fmt_multiset(rm) -> str:
    if rm is None:
        return "(none)"
    items = sorted(rm.clusters, key=lambda c: _root_key(c[0]))
    return ", ".join(f"{fmt_complex(r)} x{m}" for r, m in items)
