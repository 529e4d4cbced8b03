"""Parse and print bra-ket expressions like ``|001> + |010> + |100>``.

Grammar (whitespace insensitive)::

    expr   := ['-'] term (('+'|'-') term)*
    term   := [coeff] factor+          # juxtaposition = tensor product
    factor := ket | [coeff] '(' expr ')'
    ket    := '|' digit+ '>'
    coeff  := number ['i'] | '(' number ('+'|'-') number 'i' ')'
    number := "1/sqrt(" int ")" | int '/' int | decimal | int

Labels use single digits, so local dimensions up to 10.  For distinguishable
specs a label names one basis slot per factor; for bosonic specs it names the
symmetrized monomial basis element; for fermionic specs ``|abc>`` means
``e_a ^ e_b ^ e_c`` (distinct digits; out-of-order labels pick up the
permutation sign).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    DigitOutOfRange,
    FermionRepeatedDigit,
    KetSyntaxError,
    LabelLengthMismatch,
)
from .systems import BOSONIC, DISTINGUISHABLE, FERMIONIC, canonical_tuples, make_tensor


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.take(ch):
            raise KetSyntaxError(f"expected {ch!r}", self.pos)

    def error(self, msg):
        raise KetSyntaxError(msg, self.pos)


def _parse_int(sc):
    start = sc.pos
    while sc.pos < len(sc.text) and sc.text[sc.pos].isdigit():
        sc.pos += 1
    if sc.pos == start:
        sc.error("expected digits")
    return int(sc.text[start:sc.pos])


def _parse_number(sc):
    """number := 1/sqrt(int) | int/int | decimal | int"""
    sc.skip_ws()
    if sc.text.startswith("1/sqrt(", sc.pos):
        sc.pos += len("1/sqrt(")
        k = _parse_int(sc)
        sc.expect(")")
        return 1.0 / math.sqrt(k)
    start = sc.pos
    while sc.pos < len(sc.text) and sc.text[sc.pos].isdigit():
        sc.pos += 1
    if sc.pos < len(sc.text) and sc.text[sc.pos] == ".":
        sc.pos += 1
        while sc.pos < len(sc.text) and sc.text[sc.pos].isdigit():
            sc.pos += 1
        if sc.pos == start + 1:
            sc.error("malformed decimal")
        return float(sc.text[start:sc.pos])
    if sc.pos == start:
        sc.error("expected a number")
    num = int(sc.text[start:sc.pos])
    if sc.pos < len(sc.text) and sc.text[sc.pos] == "/" and not sc.text.startswith("/sqrt", sc.pos):
        sc.pos += 1
        den = _parse_int(sc)
        if den == 0:
            sc.error("zero denominator")
        return num / den
    return float(num)


def _try_coeff(sc):
    """Parse a coefficient if one starts here, else return None."""
    sc.skip_ws()
    ch = sc.peek()
    if ch == "(":
        # complex literal '(a+bi)' -- backtrack if it is not one
        save = sc.pos
        sc.take("(")
        try:
            re = _parse_number(sc)
            sign = 1.0
            if sc.take("+"):
                pass
            elif sc.take("-"):
                sign = -1.0
            else:
                raise KetSyntaxError("not a complex literal", sc.pos)
            im = _parse_number(sc)
            if not sc.take("i"):
                raise KetSyntaxError("not a complex literal", sc.pos)
            sc.expect(")")
            return complex(re, sign * im)
        except KetSyntaxError:
            sc.pos = save
            return None
    if ch.isdigit():
        val = _parse_number(sc)
        if sc.take("i"):
            return complex(0.0, val)
        return complex(val)
    return None


def _parse_ket_label(sc):
    sc.expect("|")
    start = sc.pos
    while sc.pos < len(sc.text) and sc.text[sc.pos].isdigit():
        sc.pos += 1
    if sc.pos == start:
        sc.error("empty ket label")
    label = sc.text[start:sc.pos]
    sc.expect(">")
    return label


def _parse_factor(sc):
    """Returns a list of (coeff, label) pairs, or None if no factor here."""
    ch = sc.peek()
    if ch == "|":
        return [(1 + 0j, _parse_ket_label(sc))]
    coeff = _try_coeff(sc)
    if coeff is not None:
        if sc.take("("):
            inner = _parse_expr(sc)
            sc.expect(")")
            return [(coeff * c, s) for c, s in inner]
        # a coefficient must be followed by a group here
        if sc.peek() == "|":
            return [(coeff * c, s) for c, s in _parse_factor(sc)]
        sc.error("dangling coefficient")
    if ch == "(":
        sc.take("(")
        inner = _parse_expr(sc)
        sc.expect(")")
        return inner
    return None


def _parse_term(sc):
    terms = _parse_factor(sc)
    if terms is None:
        sc.error("expected a ket or '('")
    while True:
        nxt = _parse_factor(sc)
        if nxt is None:
            return terms
        terms = [(c1 * c2, s1 + s2) for c1, s1 in terms for c2, s2 in nxt]


def _parse_expr(sc):
    sign = -1.0 if sc.take("-") else 1.0
    terms = [(sign * c, s) for c, s in _parse_term(sc)]
    while True:
        if sc.take("+"):
            terms += _parse_term(sc)
        elif sc.take("-"):
            terms += [(-c, s) for c, s in _parse_term(sc)]
        else:
            return terms


def parse_ket(text, spec):
    """Parse a bra-ket expression into a Tensor for the given spec."""
    sc = _Scanner(text)
    terms = _parse_expr(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        sc.error("trailing input")

    dims = spec.dims if spec.kind == DISTINGUISHABLE else (spec.n,) * spec.L
    entries = []
    for coeff, label in terms:
        if len(label) != spec.L:
            raise LabelLengthMismatch(
                f"label |{label}> has {len(label)} digits, spec has L={spec.L}")
        idx = tuple(int(d) for d in label)
        for i, d in zip(idx, dims):
            if i >= d:
                raise DigitOutOfRange(f"digit {i} exceeds local dimension {d} in |{label}>")
        if spec.kind == FERMIONIC and len(set(idx)) != len(idx):
            raise FermionRepeatedDigit(f"repeated digit in fermionic label |{label}>")
        entries.append((idx, coeff))
    return make_tensor(spec, entries)


def _fmt_number(x):
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _fmt_coeff(c):
    """Render a nonzero coefficient prefix; returns (sign, text)."""
    re, im = c.real, c.imag
    if abs(im) < 1e-14 * max(1.0, abs(re)):
        sign = "-" if re < 0 else "+"
        mag = abs(re)
        return sign, "" if abs(mag - 1) < 1e-14 else _fmt_number(mag)
    if abs(re) < 1e-14 * max(1.0, abs(im)):
        sign = "-" if im < 0 else "+"
        mag = abs(im)
        return sign, ("i" if abs(mag - 1) < 1e-14 else _fmt_number(mag) + "i")
    return "+", f"({_fmt_number(re)}{'+' if im >= 0 else '-'}{_fmt_number(abs(im))}i)"


def format_ket(t):
    """Render a Tensor as a ket expression; inverse of parse_ket up to term order."""
    spec = t.spec
    if spec.kind == DISTINGUISHABLE:
        labels = (
            ("".join(map(str, idx)), t.data[idx])
            for idx in np.ndindex(*spec.dims)
        )
    else:
        labels = (
            ("".join(map(str, tup)), v)
            for tup, v in zip(canonical_tuples(spec.kind, spec.n, spec.L), t.data)
        )
    scale = float(np.max(np.abs(t.vector)))
    pieces = []
    for label, value in labels:
        if abs(value) <= 1e-14 * scale:
            continue
        sign, text = _fmt_coeff(complex(value))
        pieces.append((sign, f"{text}|{label}>"))
    out = []
    for i, (sign, body) in enumerate(pieces):
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(("- " if sign == "-" else "+ ") + body)
    return " ".join(out)
