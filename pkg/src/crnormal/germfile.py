"""Germ files: a JSON document describing ``v = Phi(z, zbar, u)``.

    {
      "weights": {"u": 2},
      "truncation": 8,
      "terms": [
        {"i": 1, "j": 1, "m": 0, "re": "1", "im": "0"},
        ...
      ]
    }

A term ``(i, j, m, re, im)`` is the coefficient of ``z^i zbar^j u^m``.
Coefficients are exact rationals written ``"p/q"``; decimals are rejected.
A missing mirror term ``(j, i, m)`` is filled in with the conjugate value,
a mirror term with a different value is an error.
"""

import json

from .coeffs import GaussianRational, parse_rational, format_rational
from .exceptions import ParseError, InputError, RealityViolation
from .hypersurface import Germ
from .series import RealSeries3, Weighting

__all__ = ["parse_germ", "load_germ", "dump_germ", "serialize_series"]

_TERM_FIELDS = {"i", "j", "m", "re", "im"}


def _line_of(text, offset):
    return text.count("\n", 0, offset) + 1


def _term_lines(text):
    """Line numbers of the elements of the top-level ``terms`` array."""
    dec = json.JSONDecoder()
    start = text.find('"terms"')
    if start < 0:
        return []
    pos = text.find("[", start)
    if pos < 0:
        return []
    pos += 1
    lines = []
    n = len(text)
    while pos < n:
        while pos < n and text[pos] in " \t\r\n,":
            pos += 1
        if pos >= n or text[pos] == "]":
            break
        lines.append(_line_of(text, pos))
        try:
            _, pos = dec.raw_decode(text, pos)
        except json.JSONDecodeError:
            break
    return lines


def _int_field(obj, name, where, line, minimum=0):
    if name not in obj:
        raise ParseError("missing field", line, where + name)
    v = obj[name]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"expected an integer, got {v!r}", line, where + name)
    if v < minimum:
        raise ParseError(f"must be >= {minimum}, got {v}", line, where + name)
    return v


def _rational_field(obj, name, where, line):
    v = obj.get(name, "0")
    if isinstance(v, bool) or isinstance(v, float):
        raise ParseError(f"coefficients must be exact rational strings, got {v!r}", line, where + name)
    if isinstance(v, int):
        return v
    if not isinstance(v, str):
        raise ParseError(f"expected a rational string, got {v!r}", line, where + name)
    try:
        return parse_rational(v)
    except ValueError as exc:
        raise ParseError(str(exc), line, where + name) from None


def parse_germ(text):
    """Parse germ-file text into a :class:`Germ`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, None) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, None)
    unknown = set(doc) - {"weights", "truncation", "terms"}
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}", None, sorted(unknown)[0])
    weights = doc.get("weights", {"u": 2})
    if not isinstance(weights, dict):
        raise ParseError("expected an object", None, "weights")
    u = _int_field(weights, "u", "weights.", None, minimum=2)
    trunc = _int_field(doc, "truncation", "", None, minimum=1)
    wt = Weighting(u)
    terms = doc.get("terms")
    if not isinstance(terms, list):
        raise ParseError("expected a list of terms", None, "terms")
    lines = _term_lines(text)
    coeffs, origin = {}, {}
    for n, term in enumerate(terms):
        line = lines[n] if n < len(lines) else None
        where = f"terms[{n}]."
        if not isinstance(term, dict):
            raise ParseError("a term must be an object", line, f"terms[{n}]")
        extra = set(term) - _TERM_FIELDS
        if extra:
            raise ParseError(f"unknown term fields {sorted(extra)}", line, where + sorted(extra)[0])
        i, j, m = (_int_field(term, name, where, line) for name in "ijm")
        c = GaussianRational(_rational_field(term, "re", where, line), _rational_field(term, "im", where, line))
        key = (i, j, m)
        if wt.degree(key) > trunc:
            raise ParseError(
                f"term of weighted degree {wt.degree(key)} exceeds the truncation {trunc}", line, f"terms[{n}]"
            )
        if key in coeffs:
            raise ParseError(f"duplicate term {key}", line, f"terms[{n}]")
        if i == j and c.im:
            raise ParseError("diagonal coefficient must be real", line, where + "im")
        mirror = (j, i, m)
        if mirror in coeffs and coeffs[mirror] != c.conjugate():
            raise ParseError(
                f"term {key} is not the conjugate of its mirror (line {origin[mirror]})", line, f"terms[{n}]"
            )
        coeffs[key] = c
        origin[key] = line
    full = dict(coeffs)
    for (i, j, m), c in coeffs.items():
        full.setdefault((j, i, m), c.conjugate())
    try:
        return Germ(RealSeries3(full, trunc, wt))
    except (InputError, RealityViolation, ValueError) as exc:
        raise ParseError(str(exc), None, "terms") from None


def load_germ(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", None, None) from None
    return parse_germ(text)


def _sort_key(weighting):
    return lambda key: (weighting.degree(key), key[0], key[1], key[2])


def serialize_series(phi):
    """Germ-file text for a hermitian :class:`RealSeries3` (all terms listed)."""
    wt = phi.weighting
    rows = []
    for key in sorted(phi.keys(), key=_sort_key(wt)):
        c = phi.coeffs[key]
        rows.append(
            f'    {{"i": {key[0]}, "j": {key[1]}, "m": {key[2]}, '
            f'"re": "{format_rational(c.re)}", "im": "{format_rational(c.im)}"}}'
        )
    body = ",\n".join(rows)
    return (
        "{\n"
        f'  "weights": {{"u": {wt.u_weight}}},\n'
        f'  "truncation": {phi.trunc},\n'
        '  "terms": [\n' + body + ("\n" if rows else "") + "  ]\n}\n"
    )


def dump_germ(germ):
    return serialize_series(germ.phi)
