"""Exact affine forms in formal small parameters (the eta of each split)."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

Number = Union[int, Fraction]


class LinearForm:
    """``const + sum coeff * symbol`` with rational coefficients."""

    __slots__ = ("const", "terms")

    def __init__(self, const: Number = 0, terms: Mapping[str, Number] = ()):
        self.const = Fraction(const)
        items = dict(terms)
        self.terms = tuple(sorted((k, Fraction(v)) for k, v in items.items() if v != 0))

    @classmethod
    def symbol(cls, name: str) -> "LinearForm":
        return cls(0, {name: 1})

    @classmethod
    def lift(cls, x) -> "LinearForm":
        if isinstance(x, LinearForm):
            return x
        if isinstance(x, float):
            raise TypeError("plans are exact; convert floats first")
        return cls(x)

    @property
    def is_constant(self) -> bool:
        return not self.terms

    @property
    def value(self) -> Fraction:
        if self.terms:
            raise ValueError(f"{self} still depends on {', '.join(k for k, _ in self.terms)}")
        return self.const

    def _combine(self, other, sign):
        other = LinearForm.lift(other)
        terms = dict(self.terms)
        for k, v in other.terms:
            terms[k] = terms.get(k, 0) + sign * v
        return LinearForm(self.const + sign * other.const, terms)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return LinearForm.lift(other)._combine(self, -1)

    def __neg__(self):
        return LinearForm(-self.const, {k: -v for k, v in self.terms})

    def __mul__(self, k):
        if isinstance(k, LinearForm):
            if k.terms and self.terms:
                raise TypeError("product of two non-constant forms is not linear")
            if self.terms:
                return self * k.const
            return k * self.const
        k = Fraction(k)
        return LinearForm(self.const * k, {s: v * k for s, v in self.terms})

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = LinearForm.lift(other)
        except TypeError:
            return NotImplemented
        return self.const == other.const and self.terms == other.terms

    def __hash__(self):
        return hash((self.const, self.terms))

    def _cmp_value(self, other):
        return self.value, LinearForm.lift(other).value

    def __lt__(self, other):
        a, b = self._cmp_value(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_value(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_value(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_value(other)
        return a >= b

    def __str__(self):
        parts = [str(self.const)] if self.const or not self.terms else []
        for k, v in self.terms:
            if v == 1:
                parts.append(f"+{k}")
            elif v == -1:
                parts.append(f"-{k}")
            else:
                parts.append(f"{'+' if v > 0 else '-'}{abs(v)}*{k}")
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    def __repr__(self):
        return f"LinearForm({self})"


def form_vector(values) -> tuple:
    return tuple(LinearForm.lift(v) for v in values)


def constant_vector(forms) -> tuple:
    return tuple(f.value for f in forms)
