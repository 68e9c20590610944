"""Exact rational helpers and the ``"p/q"`` string format."""

from fractions import Fraction

from .errors import InputError


def q(value):
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, bool):
        raise InputError(f"expected a rational number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {value!r}") from exc
    raise InputError(f"expected a rational number, got {value!r}")


def fmt(value):
    """Render a rational as ``"p/q"`` (denominator always present)."""
    value = q(value)
    return f"{value.numerator}/{value.denominator}"


def as_int(value):
    """Return ``value`` as an int if it is integral, else raise."""
    value = q(value)
    if value.denominator != 1:
        raise InputError(f"expected an integer, got {fmt(value)}")
    return value.numerator


def mod(value, modulus):
    """Residue of a rational in ``[0, modulus)``."""
    return value - modulus * (value // modulus)
