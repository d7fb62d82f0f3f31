"""Exact and floating scalar arithmetic for the tensor kernels.

Two scalar modes exist engine-wide:

* ``exact`` -- arbitrary-precision rationals.  All algebra stays closed over
  the rationals and equality is literal equality, so every identity check is
  a decision, not an approximation.  Backed by ``gmpy2.mpq`` when available
  (several times faster than ``fractions.Fraction``), with a transparent
  stdlib fallback.
* ``float`` -- IEEE doubles with a relative/absolute tolerance
  ``|a - b| <= eps * max(1, |a|, |b|)``, default ``eps = 1e-9``.

Plain Python ints are valid exact scalars and mix freely with rationals;
kernels never need to care which concrete type they hold.
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    from gmpy2 import mpq as _mpq

    _RAT = _mpq
    _BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _RAT

    _BACKEND = "fractions"

DEFAULT_EPS = 1e-9


def rat(num, den=1):
    """Exact rational scalar.  ``rat(3, 2)`` is 3/2."""
    return _RAT(num, den)


def rat_backend() -> str:
    return _BACKEND


def parse_rational(text: str):
    """Parse '3', '-3', '7/6' or '-7/6' into an exact scalar.

    Raises ValueError on anything else (floats are rejected on purpose:
    exact manifests must stay exact).
    """
    s = text.strip()
    if "/" in s:
        top, _, bottom = s.partition("/")
        num = int(top.strip())
        den = int(bottom.strip())
        if den == 0:
            raise ValueError(f"zero denominator in rational {text!r}")
        return rat(num, den)
    return int(s)


def scalar_str(x) -> str:
    """Stable string form: exact scalars as 'p/q' or 'p', floats via repr."""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def qmul(v, num: int, den: int = 1):
    """v * num/den, staying exact for exact v and float for float v.

    Keeps float-mode values as plain floats (an exact rational times a float
    would otherwise escalate to a multiprecision float type).
    """
    if isinstance(v, float):
        return v * (num / den)
    if den == 1:
        return v * num
    return v * _RAT(num, den)


@dataclass(frozen=True)
class ScalarMode:
    """Run-wide scalar semantics: 'exact' or 'float' plus its tolerance."""

    name: str = "exact"
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if self.name not in ("exact", "float"):
            raise ValueError(f"unknown scalar mode {self.name!r}")

    @property
    def is_exact(self) -> bool:
        return self.name == "exact"

    def convert(self, x):
        """Coerce an exact scalar into this mode's representation."""
        return x if self.is_exact else float(x)

    def is_zero(self, x) -> bool:
        if self.is_exact:
            return x == 0
        return abs(x) <= self.eps * max(1.0, abs(x))

    def eq(self, a, b) -> bool:
        if self.is_exact:
            return a == b
        return abs(a - b) <= self.eps * max(1.0, abs(a), abs(b))


EXACT = ScalarMode("exact")
