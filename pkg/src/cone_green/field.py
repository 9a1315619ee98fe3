"""Gaussian-rational scalars and coercion helpers."""

from fractions import Fraction

from ._backend import ONE, ZERO, GaussianRational

I = GaussianRational(0, 1)

__all__ = ["GaussianRational", "ZERO", "ONE", "I", "gr", "fmt", "is_integer"]


def gr(x):
    """Coerce int, Fraction, str or GaussianRational to GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, str)):
        return GaussianRational(x)
    raise TypeError("cannot convert %r to an exact Gaussian rational" % (x,))


def fmt(x):
    """Canonical 'a/b+c/d*i' text."""
    return str(gr(x))


def is_integer(x):
    """True for elements of Z (imaginary part zero, integral real part)."""
    a, b, d = x.parts()
    return b == 0 and d == 1


def pretty(x):
    """Short human form: '3/2', '-2+i', '1/2*i'."""
    re, im = x.real, x.imag
    if im == 0:
        return str(re)
    if im == 1:
        tail = "i"
    elif im == -1:
        tail = "-i"
    else:
        tail = "%s*i" % im
    if re == 0:
        return tail
    if tail.startswith("-"):
        return "%s%s" % (re, tail)
    return "%s+%s" % (re, tail)
