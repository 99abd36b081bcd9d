"""Exact arithmetic in the degree-4 number field Q(e) with e^4 = -1.

Elements are stored in the canonical reduced form c0 + c1*e + c2*e^2 + c3*e^3
with rational coefficients.  The four 4th roots of -1 are e, e^3, -e, -e^3
(the odd powers of e, since e^8 = 1).
"""
from __future__ import annotations

from fractions import Fraction


class QEps:
    """A number-field element; mixes freely with int and Fraction."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))

    @classmethod
    def _raw(cls, coeffs):
        el = object.__new__(cls)
        el.c = tuple(coeffs)
        return el

    @classmethod
    def coerce(cls, x) -> "QEps":
        if isinstance(x, QEps):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._raw((Fraction(x), _ZERO, _ZERO, _ZERO))
        raise TypeError(f"cannot coerce {type(x).__name__} into Q(e)")

    def is_rational(self) -> bool:
        return not (self.c[1] or self.c[2] or self.c[3])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.c[0]

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        try:
            return self.c == QEps.coerce(other).c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __add__(self, other):
        try:
            o = QEps.coerce(other)
        except TypeError:
            return NotImplemented
        return QEps._raw(tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return QEps._raw(tuple(-a for a in self.c))

    def __sub__(self, other):
        try:
            o = QEps.coerce(other)
        except TypeError:
            return NotImplemented
        return QEps._raw(tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return QEps.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QEps.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.c, o.c
        out = [_ZERO, _ZERO, _ZERO, _ZERO]
        for i in range(4):
            if not a[i]:
                continue
            for j in range(4):
                if not b[j]:
                    continue
                k = i + j
                if k < 4:
                    out[k] += a[i] * b[j]
                else:
                    out[k - 4] -= a[i] * b[j]  # e^4 = -1
        return QEps._raw(tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "QEps":
        """Multiplicative inverse via the 4x4 regular representation."""
        if not self:
            raise ZeroDivisionError("division by zero in Q(e)")
        # columns of M are self * e^j expressed in the power basis
        cols = []
        power = QEps._raw((Fraction(1), _ZERO, _ZERO, _ZERO))
        for _ in range(4):
            cols.append((self * power).c)
            power = power * _E
        m = [[cols[j][i] for j in range(4)] + [Fraction(1) if i == 0 else _ZERO] for i in range(4)]
        # Gaussian elimination for M x = (1,0,0,0)
        for c in range(4):
            piv = next(i for i in range(c, 4) if m[i][c])
            m[c], m[piv] = m[piv], m[c]
            inv = 1 / m[c][c]
            m[c] = [x * inv for x in m[c]]
            for i in range(4):
                if i != c and m[i][c]:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return QEps._raw(tuple(m[i][4] for i in range(4)))

    def __truediv__(self, other):
        try:
            o = QEps.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QEps.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QEps.coerce(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"QEps{self.c}"

    def __str__(self):
        parts = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            if i == 0:
                parts.append(str(a))
            else:
                head = "" if a == 1 else ("-" if a == -1 else f"{a}*")
                parts.append(f"{head}e" + (f"^{i}" if i > 1 else ""))
        if not parts:
            return "0"
        return "+".join(parts).replace("+-", "-")


_ZERO = Fraction(0)
EPS = QEps(0, 1)
_E = EPS

#: the four 4th roots of -1, indexed 1..4 in the order e, e^3, e^5, e^7
FOURTH_ROOTS_OF_MINUS_ONE = (EPS, EPS**3, EPS**5, EPS**7)
