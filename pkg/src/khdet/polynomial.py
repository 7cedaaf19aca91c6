"""Integer Laurent polynomials and exact cyclotomic factor stripping."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

__all__ = [
    "LaurentPolynomial",
    "cyclotomic_polynomial",
    "totient",
    "CyclotomicSplit",
    "cyclotomic_part",
    "two_term_shape",
]


def _sup(k: int) -> str:
    return str(k) if k >= 0 else f"({k})"


class LaurentPolynomial:
    """Finite sum ``sum c_k x^k`` with integer ``k`` and integer ``c_k``.

    The variable name only affects printing.  Jones polynomials are stored
    in ``q`` where ``q**2 == t``, so that every exponent is an integer.
    """

    __slots__ = ("_coeffs", "var")

    def __init__(self, coeffs: Mapping[int, int] | None = None, var: str = "q"):
        self._coeffs = {int(k): int(v) for k, v in (coeffs or {}).items() if v}
        self.var = var

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, var: str = "q"):
        return cls({exponent: coeff}, var)

    @classmethod
    def from_list(cls, coeffs, low: int = 0, var: str = "q"):
        """``coeffs[k]`` is the coefficient of ``x^(low + k)``."""
        return cls({low + k: c for k, c in enumerate(coeffs)}, var)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def __getitem__(self, k: int) -> int:
        return self._coeffs.get(k, 0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    @property
    def min_exp(self) -> int:
        return min(self._coeffs)

    @property
    def max_exp(self) -> int:
        return max(self._coeffs)

    @property
    def span(self) -> int:
        return self.max_exp - self.min_exp if self else 0

    def _wrap(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({k: -v for k, v in self._coeffs.items()}, self.var)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for a, u in self._coeffs.items():
            for b, v in other._coeffs.items():
                out[a + b] = out.get(a + b, 0) + u * v
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, c), = self._coeffs.items()
            if abs(c) != 1:
                raise ValueError("monomial is not a unit")
            return LaurentPolynomial({k * n: c ** abs(n)}, self.var)
        out = LaurentPolynomial({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``x^k``."""
        return LaurentPolynomial({e + k: v for e, v in self._coeffs.items()}, self.var)

    def substitute_power(self, k: int) -> "LaurentPolynomial":
        """``p(x^k)``; ``k = -1`` is the mirror substitution."""
        return LaurentPolynomial({e * k: v for e, v in self._coeffs.items()}, self.var)

    def halve_exponents(self, var: str | None = None) -> "LaurentPolynomial":
        """``p(y)`` where ``y = x^2``; every exponent must be even."""
        if any(e % 2 for e in self._coeffs):
            raise ValueError("odd exponent present")
        return LaurentPolynomial({e // 2: v for e, v in self._coeffs.items()}, var or self.var)

    def renamed(self, var: str) -> "LaurentPolynomial":
        return LaurentPolynomial(self._coeffs, var)

    def divmod(self, divisor: "LaurentPolynomial"):
        """Division by a divisor whose top coefficient is +-1.

        The quotient only uses exponents that keep the remainder supported
        at or above ``self.min_exp``.
        """
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        top = divisor.max_exp
        lead = divisor[top]
        if abs(lead) != 1:
            raise ValueError("divisor must have leading coefficient +-1")
        rem = dict(self._coeffs)
        quot: dict[int, int] = {}
        low = self.min_exp if self else 0
        shift_floor = low - divisor.min_exp
        while rem:
            k = max(rem)
            e = k - top
            if e < shift_floor:
                break
            c = rem[k] * lead
            quot[e] = c
            for b, v in divisor._coeffs.items():
                n = rem.get(b + e, 0) - c * v
                if n:
                    rem[b + e] = n
                else:
                    rem.pop(b + e, None)
        return LaurentPolynomial(quot, self.var), LaurentPolynomial(rem, self.var)

    def exact_div(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {divisor}")
        return q

    def eval_at_i(self) -> tuple[int, int]:
        """Exact value at ``x = i`` as a Gaussian integer ``(re, im)``."""
        re = im = 0
        for e, c in self._coeffs.items():
            r = e % 4
            if r == 0:
                re += c
            elif r == 1:
                im += c
            elif r == 2:
                re -= c
            else:
                im -= c
        return re, im

    def __call__(self, x):
        return sum(c * x ** e for e, c in self._coeffs.items())

    def format(self, var: str | None = None, halves: bool = False) -> str:
        """Human-readable form; ``halves=True`` prints ``x^k`` as ``var^(k/2)``."""
        var = var or self.var
        if not self._coeffs:
            return "0"
        parts = []
        for e in sorted(self._coeffs, reverse=True):
            c = self._coeffs[e]
            if halves and e % 2:
                power = f"{var}^({e}/2)"
            else:
                k = e // 2 if halves else e
                power = "" if k == 0 else (var if k == 1 else f"{var}^{_sup(k)}")
            mag = abs(c)
            body = power if mag == 1 and power else (f"{mag}{power}" if power else str(mag))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self._coeffs!r}, var={self.var!r})"


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(d: int) -> tuple[int, ...]:
    # x^d - 1 = prod over e | d of Phi_e
    poly = LaurentPolynomial({d: 1, 0: -1}, "x")
    for e in range(1, d):
        if d % e == 0:
            poly = poly.exact_div(LaurentPolynomial.from_list(_cyclotomic_coeffs(e), var="x"))
    return tuple(poly[k] for k in range(poly.max_exp + 1))


def cyclotomic_polynomial(d: int, var: str = "x") -> LaurentPolynomial:
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    return LaurentPolynomial.from_list(_cyclotomic_coeffs(d), var=var)


@dataclass(frozen=True)
class CyclotomicSplit:
    """``p == unit * cyclotomic * remainder``.

    ``unit`` is ``sign * x^shift``; ``factors`` maps ``d`` to the
    multiplicity of ``Phi_d``.  The remainder is an ordinary polynomial with
    nonzero constant term, positive leading coefficient and no root of unity
    among its roots.
    """

    unit_sign: int
    unit_shift: int
    factors: Mapping[int, int] = field(default_factory=dict)
    cyclotomic: LaurentPolynomial = None
    remainder: LaurentPolynomial = None

    @property
    def unit(self) -> LaurentPolynomial:
        return LaurentPolynomial.monomial(self.unit_shift, self.unit_sign, self.remainder.var)


def cyclotomic_part(p: LaurentPolynomial) -> CyclotomicSplit:
    """Strip the unit and divide out every cyclotomic factor to full multiplicity.

    Only ``Phi_d`` with ``totient(d) <= degree`` can divide a polynomial of
    that degree, and ``totient(d) >= sqrt(d/2)`` bounds the search by
    ``d <= 2 * degree**2``.  Everything is exact trial division.
    """
    if not p:
        raise ValueError("the zero polynomial has no cyclotomic part")
    shift = p.min_exp
    rest = p.shift(-shift)
    sign = 1 if rest[rest.max_exp] > 0 else -1
    rest = rest * sign
    var = p.var
    cyclo = LaurentPolynomial({0: 1}, var)
    factors: dict[int, int] = {}
    degree = rest.max_exp
    for d in range(1, 2 * degree * degree + 2):
        if totient(d) > rest.max_exp:
            continue
        phi = cyclotomic_polynomial(d, var)
        while rest.max_exp >= phi.max_exp:
            q, r = rest.divmod(phi)
            if r:
                break
            rest = q
            cyclo = cyclo * phi
            factors[d] = factors.get(d, 0) + 1
    return CyclotomicSplit(sign, shift, factors, cyclo, rest)


def two_term_shape(p: LaurentPolynomial) -> bool:
    """True for ``+-x^a -+ x^b``: two terms, coefficients +-1 of opposite sign."""
    if len(p) != 2:
        return False
    a, b = p.coeffs.values()
    return abs(a) == 1 and a == -b
