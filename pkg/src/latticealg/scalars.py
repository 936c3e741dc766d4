"""Exact scalars.

Two kinds of numbers flow through the package:

* ``fractions.Fraction`` for everything rational (uniform and explicit
  reference measures, user tables, polytope coordinates);
* elements of the rational function field ``Q(z)`` with ``z = exp(-1/D)``
  for Boltzmann weights.  Since ``z`` is transcendental, ``Q(z)`` is a field
  isomorphic to ``Q(X)`` and equality is decided symbolically.  Signs are
  decided with interval arithmetic, which always terminates for a nonzero
  element.

All helpers here accept either kind.  Never use ``<``/``>`` directly on a
field element; go through :func:`sign`.
"""
from __future__ import annotations

import functools
from fractions import Fraction
from numbers import Rational
from typing import Any, Union

import mpmath
from sympy import QQ, Rational as SymRational, exp
from sympy.polys.fields import FracElement, field

Scalar = Union[Fraction, FracElement]

__all__ = [
    "Scalar",
    "exact",
    "parse_rational",
    "sign",
    "is_zero",
    "smax",
    "smin",
    "sabs",
    "to_float",
    "fmt",
    "boltzmann_field",
    "is_rational",
]


@functools.lru_cache(maxsize=None)
def boltzmann_field(denominator: int):
    """Return ``(K, z)`` where ``K = Q(z)`` and ``z = exp(-1/denominator)``.

    Cached so that every caller sharing a denominator shares one field
    object; sympy does not mix elements of distinct field instances.
    """
    if denominator < 1:
        raise ValueError("denominator must be a positive integer")
    return field(exp(SymRational(-1, denominator)), QQ)


def _base_denominator(x: FracElement) -> int:
    gen = x.field.symbols[0]
    return int(-1 / gen.args[0])


def is_rational(x: Any) -> bool:
    return isinstance(x, (int, Fraction)) or (
        isinstance(x, FracElement) and x.numer.is_ground and x.denom.is_ground
    )


def exact(x: Any) -> Scalar:
    """Canonicalise a number.

    Ints, rational strings and sympy/gmpy rationals become ``Fraction``;
    constant field elements collapse to ``Fraction`` as well, so equal
    values always compare equal and hash alike.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, FracElement):
        if x.numer.is_ground and x.denom.is_ground:
            if not x.numer:
                return Fraction(0)
            return _qq_fraction(x.numer.LC) / _qq_fraction(x.denom.LC)
        return x
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a rational string instead")
    # sympy Rational, gmpy mpq
    try:
        return Fraction(int(x.numerator), int(x.denominator))
    except AttributeError:
        pass
    try:
        return Fraction(int(x.p), int(x.q))
    except AttributeError:
        raise TypeError(f"cannot interpret {x!r} as an exact scalar") from None


def _qq_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def parse_rational(s: str | int) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int.  Decimal points are rejected."""
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise TypeError(f"expected a rational string, got {type(s).__name__}")
    text = s.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {s!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {s!r}") from None


def is_zero(x: Scalar) -> bool:
    return x == 0


def _iv_rational(c):
    return mpmath.iv.mpf(int(c.numerator)) / int(c.denominator)


def _mp_rational(c):
    return mpmath.mpf(int(c.numerator)) / int(c.denominator)


def _poly_interval(poly, base):
    total = mpmath.iv.mpf(0)
    for (k,), c in poly.terms():
        total += _iv_rational(c) * base**k
    return total


def _field_sign(x: FracElement) -> int:
    denominator = _base_denominator(x)
    ctx = mpmath.iv
    saved = ctx.prec
    prec = 64
    try:
        while prec <= 1 << 16:
            ctx.prec = prec
            base = ctx.exp(ctx.mpf(-1) / denominator)
            num = _poly_interval(x.numer, base)
            den = _poly_interval(x.denom, base)
            if (num.a > 0 or num.b < 0) and (den.a > 0 or den.b < 0):
                return (1 if num.a > 0 else -1) * (1 if den.a > 0 else -1)
            prec *= 2
    finally:
        ctx.prec = saved
    raise ArithmeticError("sign undecidable at working precision")  # pragma: no cover


def sign(x: Scalar) -> int:
    """Return -1, 0 or 1."""
    if isinstance(x, FracElement):
        if x == 0:
            return 0
        if x.numer.is_ground and x.denom.is_ground:
            return sign(exact(x))
        return _field_sign(x)
    return (x > 0) - (x < 0)


def smax(a: Scalar, b: Scalar) -> Scalar:
    return a if sign(a - b) >= 0 else b


def smin(a: Scalar, b: Scalar) -> Scalar:
    return a if sign(a - b) <= 0 else b


def sabs(x: Scalar) -> Scalar:
    return -x if sign(x) < 0 else x


def to_float(x: Scalar) -> float:
    """Floating-point value, for display only."""
    if isinstance(x, FracElement):
        denominator = _base_denominator(x)
        with mpmath.workdps(30):
            base = mpmath.exp(mpmath.mpf(-1) / denominator)
            num = sum(_mp_rational(c) * base**k for (k,), c in x.numer.terms())
            den = sum(_mp_rational(c) * base**k for (k,), c in x.denom.terms())
            return float(num / den)
    return float(x)


def fmt(x: Scalar) -> str:
    """Stable text form: ``"p/q"`` for rationals, a sympy expression otherwise."""
    x = exact(x)
    if isinstance(x, Fraction):
        return str(x)
    return str(x.as_expr())


def numerator_denominator(x: Scalar) -> tuple[str, str]:
    x = exact(x)
    if isinstance(x, Fraction):
        return str(x.numerator), str(x.denominator)
    return str(x.numer.as_expr()), str(x.denom.as_expr())
