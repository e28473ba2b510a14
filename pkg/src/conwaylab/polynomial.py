"""Dense univariate integer polynomials in the variable z.

Coefficients are arbitrary-precision Python ints stored densely by degree;
the representation is canonical (no trailing zeros), so equality and hashing
are structural.  The normal form of a link polynomial collects the even
coefficient ladder a_0, a_2, ... sitting on top of a forced z^(n-1) factor,
where n is the number of link components.

>>> z = IntPolynomial.monomial(1)
>>> print((1 + z * z) - 1)
z^2
>>> to_normal_form(z, 2).even_coefficients
(1,)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "IntPolynomial",
    "ConwayNormalForm",
    "ParityError",
    "poly_add",
    "poly_mul",
    "poly_mod",
    "to_normal_form",
]


class ParityError(ValueError):
    """A polynomial does not fit the z^(n-1) * (even series) shape."""


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class IntPolynomial:
    """Immutable dense polynomial over the integers.

    ``coeffs[k]`` is the coefficient of z^k.  The zero polynomial is the
    empty tuple and reports degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _trim(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficients required, got {type(c).__name__}")
        self._coeffs = cs

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "IntPolynomial":
        """c * z^degree.

        >>> print(IntPolynomial.monomial(3, -2))
        -2*z^3
        """
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "IntPolynomial":
        return cls(coeffs)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, k: int) -> int:
        """Coefficient of z^k (0 beyond the stored degree)."""
        if k < 0:
            raise ValueError("negative degree")
        return self._coeffs[k] if k < len(self._coeffs) else 0

    def low_degree(self) -> int | None:
        """Smallest degree with a nonzero coefficient; None for zero."""
        for k, c in enumerate(self._coeffs):
            if c:
                return k
        return None

    def divisible_by_power(self, k: int) -> bool:
        """Whether z^k divides the polynomial (vacuously true for zero)."""
        low = self.low_degree()
        return low is None or low >= k

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by z^k.

        >>> print(IntPolynomial((1, 0, 1)).shift(2))
        z^2 + z^4
        """
        if k < 0:
            raise ValueError("negative shift")
        if self.is_zero:
            return self
        return IntPolynomial((0,) * k + self._coeffs)

    def mod(self, p: int) -> "IntPolynomial":
        """Reduce every coefficient into [0, p).

        >>> print(IntPolynomial((5, 0, 3)).mod(5))
        3*z^2
        """
        if p < 2:
            raise ValueError("modulus must be at least 2")
        return IntPolynomial(c % p for c in self._coeffs)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        other = _coerce(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self._coeffs)

    def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        return _coerce(other) + (-self)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        other = _coerce(other)
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self._coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({self._coeffs!r})"

    # -- text form -----------------------------------------------------

    def __str__(self) -> str:
        return self.render()

    def render(self) -> str:
        """Human form, ascending degrees: ``1 - z^2``, ``2*z + z^3``, ``0``."""
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for k, c in enumerate(self._coeffs):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "z" if mag == 1 else f"{mag}*z"
            else:
                body = f"z^{k}" if mag == 1 else f"{mag}*z^{k}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Inverse of render; also accepts unspaced signs and ``z**k``.

        >>> IntPolynomial.parse("1 - z^2") == IntPolynomial((1, 0, -1))
        True
        """
        s = text.strip().replace("**", "^")
        if not s:
            raise ValueError("empty polynomial text")
        if s == "0":
            return cls()
        coeffs: dict[int, int] = {}
        term_re = re.compile(
            r"\s*(?P<sign>[+-])?\s*(?:"
            r"(?P<coeff>\d+)\s*(?:\*\s*z(?:\^(?P<e1>\d+))?)?"
            r"|z(?:\^(?P<e2>\d+))?"
            r")\s*"
        )
        pos = 0
        first = True
        while pos < len(s):
            m = term_re.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial at: {s[pos:]!r}")
            sign = m.group("sign")
            if sign is None and not first:
                raise ValueError(f"missing sign before: {s[pos:]!r}")
            sgn = -1 if sign == "-" else 1
            if m.group("coeff") is not None:
                mag = int(m.group("coeff"))
                exp = int(m.group("e1")) if m.group("e1") else (1 if "z" in m.group(0) else 0)
            else:
                mag = 1
                exp = int(m.group("e2")) if m.group("e2") else 1
            coeffs[exp] = coeffs.get(exp, 0) + sgn * mag
            pos = m.end()
            first = False
        size = max(coeffs) + 1
        out = [0] * size
        for k, c in coeffs.items():
            out[k] = c
        return cls(out)


def _coerce(x: "IntPolynomial | int") -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial((x,))
    raise TypeError(f"cannot mix IntPolynomial with {type(x).__name__}")


def poly_add(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a + b


def poly_mul(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a * b


def poly_mod(a: IntPolynomial, p: int) -> IntPolynomial:
    return a.mod(p)


@dataclass(frozen=True)
class ConwayNormalForm:
    """The even coefficient ladder of an n-component link polynomial.

    ``even_coefficients[i]`` is a_{2i} in
    z^(n-1) * (a_0 + a_2 z^2 + ... + a_{2m} z^{2m});
    trailing zeros are trimmed, interior zeros kept.
    """

    component_count: int
    even_coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.component_count < 1:
            raise ValueError("component count must be positive")
        object.__setattr__(self, "even_coefficients", _trim(self.even_coefficients))

    def coefficient(self, i: int) -> int:
        """a_{2i} (0 beyond the stored ladder)."""
        cs = self.even_coefficients
        return cs[i] if 0 <= i < len(cs) else 0

    @property
    def a0(self) -> int:
        return self.coefficient(0)

    def reconstruct(self) -> IntPolynomial:
        """The polynomial z^(n-1) * sum a_{2i} z^(2i)."""
        out = [0] * (self.component_count - 1 + 2 * len(self.even_coefficients))
        for i, c in enumerate(self.even_coefficients):
            if c:
                out[self.component_count - 1 + 2 * i] = c
        return IntPolynomial(out)

    def __str__(self) -> str:
        inner = " ".join(
            f"a_{2 * i} = {c}" for i, c in enumerate(self.even_coefficients)
        ) or "0"
        return f"n={self.component_count}: {inner}"


def to_normal_form(poly: IntPolynomial, component_count: int) -> ConwayNormalForm:
    """Split off the forced z^(n-1) factor and read the even ladder.

    Raises ParityError if any nonzero coefficient sits below degree n-1 or
    at an exponent of the wrong parity.

    >>> to_normal_form(IntPolynomial((0, 1)), 2).a0
    1
    """
    if component_count < 1:
        raise ValueError("component count must be positive")
    base = component_count - 1
    ladder: list[int] = []
    for k, c in enumerate(poly.coeffs):
        if not c:
            continue
        if k < base or (k - base) % 2:
            raise ParityError(
                f"coefficient {c} at z^{k} violates the z^{base} even-ladder shape"
            )
        i = (k - base) // 2
        while len(ladder) <= i:
            ladder.append(0)
        ladder[i] = c
    return ConwayNormalForm(component_count, tuple(ladder))
